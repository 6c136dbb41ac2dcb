"""
帶號圖譜工具 MCP 伺服器主程式
"""

import asyncio
import json
import logging
from typing import Any, Dict, Optional, Sequence

import mcp.server.stdio
from mcp.server import Server
from mcp.types import TextContent, Tool

from .config import load_config
from .errors import SgxError
from .toolkit import Toolkit

logger = logging.getLogger(__name__)


# === MCP 伺服器設定 ===
app = Server("sgx-signed-spectra")
_toolkit: Optional[Toolkit] = None

_GRAPH = {"type": "string", "description": "sg6 格式的帶號圖，例如 C~:20"}


@app.list_tools()
async def list_tools() -> Sequence[Tool]:
    """列出可用的工具"""
    return [
        Tool(
            name="construct",
            description="建構極值帶號圖 Γ_{s,n}、Σ_{k,n} 或完全圖，回傳 sg6",
            inputSchema={
                "type": "object",
                "properties": {
                    "kind": {
                        "type": "string",
                        "enum": ["gamma", "sigma", "complete-neg", "complete-pos"],
                        "description": "構造名稱",
                    },
                    "s": {"type": "integer", "description": "Γ_{s,n} 的 s"},
                    "k": {"type": "integer", "description": "Σ_{k,n} 的 k"},
                    "r": {"type": "integer", "description": "Σ_{k,n} 的 K_r 區塊大小"},
                    "n": {"type": "integer", "description": "頂點數"},
                },
                "required": ["kind", "n"],
            },
        ),
        Tool(
            name="spectrum",
            description="計算帶號圖的特徵值、index 與譜半徑",
            inputSchema={
                "type": "object",
                "properties": {"graph": _GRAPH},
                "required": ["graph"],
            },
        ),
        Tool(
            name="check",
            description="檢查帶號圖是否屬於禁止子結構族，例如 tk4_free(2)、kr_free(4)、c3_free",
            inputSchema={
                "type": "object",
                "properties": {
                    "graph": _GRAPH,
                    "family": {"type": "string", "description": "族名稱，例如 tk4_free(2)"},
                },
                "required": ["graph", "family"],
            },
        ),
        Tool(
            name="canon",
            description="切換同構標準形（sg6）",
            inputSchema={
                "type": "object",
                "properties": {"graph": _GRAPH},
                "required": ["graph"],
            },
        ),
        Tool(
            name="switch",
            description="在頂點集合 U 上切換（U 與其補集之間的邊變號）",
            inputSchema={
                "type": "object",
                "properties": {
                    "graph": _GRAPH,
                    "set": {
                        "type": "array",
                        "items": {"type": "integer"},
                        "description": "切換的頂點（0 起算）",
                    },
                },
                "required": ["graph", "set"],
            },
        ),
        Tool(
            name="verify_suite",
            description="執行數值驗證套件（1.2, 1.3, 2.1, 2.2, 2.3, 2.4, 2.6, 2.9, 3.1）",
            inputSchema={
                "type": "object",
                "properties": {
                    "name": {"type": "string", "description": "套件名稱，例如 2.1"},
                    "n_min": {"type": "integer"},
                    "n_max": {"type": "integer"},
                },
                "required": ["name"],
            },
        ),
        Tool(
            name="search",
            description="小階數（n ≤ 8）不平衡帶號圖的極值搜尋，回傳可驗證的憑證",
            inputSchema={
                "type": "object",
                "properties": {
                    "n": {"type": "integer", "description": "頂點數，3 ≤ n ≤ 8"},
                    "objective": {
                        "type": "string",
                        "enum": ["index", "spectral_radius"],
                        "default": "index",
                    },
                    "family": {
                        "type": "string",
                        "description": "all_unbalanced、tk4_free(t)、kr_free(r) 或 c3_free",
                        "default": "all_unbalanced",
                    },
                    "connected_only": {"type": "boolean", "default": False},
                    "prune": {"type": "boolean", "description": "未指定時 n ≥ 7 自動啟用"},
                },
                "required": ["n"],
            },
        ),
    ]


def get_toolkit() -> Toolkit:
    """第一次調用時才讀取設定（SGX_JOBS 錯誤會回報給該次調用）"""
    global _toolkit
    if _toolkit is None:
        _toolkit = Toolkit(load_config())
    return _toolkit


def _dispatch(name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
    toolkit = get_toolkit()
    if name == "construct":
        params = {k: arguments.get(k) for k in ("s", "k", "r", "n")}
        return toolkit.construct(arguments["kind"], **params)
    if name == "spectrum":
        return toolkit.spectrum(arguments["graph"])
    if name == "check":
        return toolkit.check(arguments["graph"], arguments["family"])
    if name == "canon":
        return toolkit.canon(arguments["graph"])
    if name == "switch":
        return toolkit.switch(arguments["graph"], arguments.get("set", []))
    if name == "verify_suite":
        params = {k: v for k, v in arguments.items() if k != "name"}
        return toolkit.verify_suite(arguments["name"], **params)
    if name == "search":
        return toolkit.search(
            n=int(arguments["n"]),
            objective=arguments.get("objective", "index"),
            family=arguments.get("family", "all_unbalanced"),
            connected_only=bool(arguments.get("connected_only", False)),
            prune=arguments.get("prune"),
        )
    return {"error": f"未知工具: {name}"}


@app.call_tool()
async def call_tool(name: str, arguments: dict) -> Sequence[TextContent]:
    """處理工具調用"""
    try:
        result = await asyncio.to_thread(_dispatch, name, arguments)
    except (SgxError, KeyError, TypeError, ValueError) as e:
        logger.warning("工具 %s 失敗: %s", name, e)
        result = {"error": str(e), "type": type(e).__name__}
    return [TextContent(type="text", text=json.dumps(result, ensure_ascii=False, indent=2))]


async def main():
    """啟動MCP伺服器"""
    async with mcp.server.stdio.stdio_server() as (read_stream, write_stream):
        await app.run(
            read_stream,
            write_stream,
            app.create_initialization_options()
        )


def main_sync():
    """同步版本的main函數，用於CLI entry point"""
    asyncio.run(main())
