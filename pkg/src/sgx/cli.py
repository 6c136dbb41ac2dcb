"""
命令列介面

結束碼：0 成功、1 輸入或用法錯誤、2 資源防護或能力限制、3 驗證失敗。
JSON 輸出欄位順序固定並帶 "schema": 1；CSV 不加引號，實數取 12 位有效數字。
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO

from .config import OUTPUT_FORMATS, load_config
from .errors import CapabilityError, DomainError, SgxError
from .forbidden import Family
from .lemmas import SUITES
from .sgraph import SignedGraph, read_sg6
from .toolkit import Toolkit

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_DOMAIN, EXIT_CAPABILITY, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(DomainError):
    """命令列用法錯誤"""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# === 輸出格式 ===

def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return " ".join(f"{k}={_cell(v)}" for k, v in value.items())
    return str(value)


def render(payload: Any, rows: List[Dict[str, Any]], fmt: str, out: TextIO) -> None:
    """json 輸出 payload；csv / table 輸出 rows"""
    if fmt == "json":
        out.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
        return
    if not rows:
        return
    header = list(rows[0].keys())
    cells = [[_cell(r.get(h)) for h in header] for r in rows]
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for line in cells:
            out.write(",".join(c.replace(",", ";") for c in line) + "\n")
        return
    widths = [max(len(h), *(len(line[i]) for line in cells)) for i, h in enumerate(header)]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for line in cells:
        out.write("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() + "\n")


def _read_graphs(source: str, stdin: TextIO) -> List[SignedGraph]:
    if source == "-":
        lines = stdin.read().splitlines()
    else:
        try:
            lines = Path(source).read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise DomainError(f"無法讀取 {source}: {e}") from e
    graphs = read_sg6(lines)
    if not graphs:
        raise DomainError("輸入中沒有任何 sg6 帶號圖")
    return graphs


def _parse_ints(text: Optional[str]) -> Optional[List[int]]:
    """'30..60'、'4,5,6' 或單一整數"""
    if text is None:
        return None
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise UsageError(f"無法解析整數範圍: {text!r}") from e


def _one_or_many(docs: List[Dict[str, Any]]) -> Any:
    return docs[0] if len(docs) == 1 else docs


# === 子命令 ===

def cmd_construct(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    doc = kit.construct(args.kind, s=args.s, k=args.k, r=args.r, n=args.n)
    out.write(doc["sg6"] + "\n")
    return EXIT_OK


def cmd_spectrum(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    docs = [kit.spectrum(g) for g in _read_graphs(args.input, stdin)]
    rows = [{"sg6": d["sg6"], "index": d["index"], "spectral_radius": d["spectral_radius"],
             "balanced": d["balanced"], "eigenvalues": d["eigenvalues"]} for d in docs]
    render(_one_or_many(docs), rows, args.format, out)
    return EXIT_OK


def _family_from_flags(args) -> Family:
    if args.tk4_free is not None:
        return Family("tk4_free", args.tk4_free)
    if args.kr_free is not None:
        return Family("kr_free", args.kr_free)
    return Family("c3_free")


def cmd_check(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    family = _family_from_flags(args)
    docs = [kit.check(g, family) for g in _read_graphs(args.input, stdin)]
    rows = [{k: d[k] for k in ("sg6", "family", "free", "unbalanced", "count")} for d in docs]
    render(_one_or_many(docs), rows, args.format, out)
    return EXIT_OK


def cmd_count_uk4(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    docs = [kit.count_uk4(g) for g in _read_graphs(args.input, stdin)]
    rows = [{"sg6": d["sg6"], "count": d["count"]} for d in docs]
    render(_one_or_many(docs), rows, args.format, out)
    return EXIT_OK


def cmd_canon(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    for g in _read_graphs(args.input, stdin):
        out.write(kit.canon(g)["canonical"] + "\n")
    return EXIT_OK


def cmd_switch(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    vertices = _parse_ints(args.set) or []
    for g in _read_graphs(args.input, stdin):
        bad = [v for v in vertices if not 0 <= v < g.n]
        if bad:
            raise UsageError(f"--set 含超出範圍的頂點 {bad}（n = {g.n}）")
        out.write(kit.switch(g, vertices)["sg6"] + "\n")
    return EXIT_OK


def cmd_structure(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    docs = [kit.structure(g, args.t) for g in _read_graphs(args.input, stdin)]
    rows = [{k: v for k, v in d.items() if k != "schema"} for d in docs]
    render(_one_or_many(docs), rows, args.format, out)
    return EXIT_OK


def cmd_search(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    if args.t is not None:
        family = Family("tk4_free", args.t)
    elif args.kr_free is not None:
        family = Family("kr_free", args.kr_free)
    elif args.c3_free:
        family = Family("c3_free")
    else:
        family = Family.parse(args.family)
    prune = False if args.exhaustive else (True if args.prune else None)
    cert = kit.search(n=args.n, objective=args.objective, family=family,
                      connected_only=args.connected, prune=prune, dedup=args.dedup)
    if args.out:
        Path(args.out).write_text(json.dumps(cert, ensure_ascii=False, indent=2) + "\n",
                                  encoding="utf-8")
        logger.info("憑證已寫入 %s", args.out)
    match = cert["matches_construction"]
    row = {
        "n": args.n,
        "family": cert["spec"]["family"],
        "objective": args.objective,
        "best_value": cert["best_value"],
        "witness": cert["witness"],
        "ties": len(cert["tied_witnesses"]),
        "matches_construction": None if match is None else match["switching_isomorphic"],
    }
    render(cert, [row], args.format, out)
    return EXIT_OK


def cmd_verify(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"未知的驗證套件: {args.suite}（可用：{', '.join(SUITES)}）")
    params = {
        "n_min": args.n_min,
        "n_max": args.n_max,
        "n_values": _parse_ints(args.n),
        "r_values": _parse_ints(args.r),
        "k_values": _parse_ints(args.k),
        "s_values": _parse_ints(args.s),
        "t_values": _parse_ints(args.t),
        "search_n": _parse_ints(args.search_n),
    }
    values = params["n_values"]
    if values and args.suite == "2.3":
        params["n"] = params.pop("n_values")[0]
    elif values:
        params["n_min"] = params["n_min"] if params["n_min"] is not None else min(values)
        params["n_max"] = params["n_max"] if params["n_max"] is not None else max(values)
    doc = kit.verify_suite(args.suite, **{k: v for k, v in params.items() if v is not None})
    rows = [{"params": r["params"], "status": r["status"], "margin": r["margin"],
             "note": r["note"]} for r in doc["rows"]]
    render(doc, rows, args.format, out)
    return EXIT_OK if doc["passed"] else EXIT_VERIFY


def cmd_verify_cert(args, kit: Toolkit, out: TextIO, stdin: TextIO) -> int:
    text = stdin.read() if args.certificate == "-" else Path(args.certificate).read_text(
        encoding="utf-8")
    doc = kit.verify_certificate(text)
    rows = [{"check": f["check"], "message": f["message"]} for f in doc["failures"]]
    render(doc, rows or [{"check": "all", "message": "ok"}], args.format, out)
    return EXIT_OK if doc["ok"] else EXIT_VERIFY


# === 參數解析 ===

def _common_options() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    sup = argparse.SUPPRESS
    common.add_argument("--config", default=sup, help="key = value 設定檔")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=sup, help="輸出格式")
    common.add_argument("--jobs", type=int, default=sup, help="工作行程數（預設讀 SGX_JOBS）")
    common.add_argument("--eq-tol", type=float, default=sup, help="特徵值相等的容許誤差")
    common.add_argument("--ord-tol", type=float, default=sup, help="嚴格不等式的容許誤差")
    common.add_argument("--checkpoint", default=sup, help="搜尋檢查點日誌路徑")
    common.add_argument("--progress", action="store_true", default=sup, help="顯示進度列")
    common.add_argument("-v", "--verbose", action="count", default=sup, help="增加日誌詳細程度")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=sup,
                        help="日誌等級")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="sgx", description="帶號圖譜工具與極值搜尋", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(handler=handler)
        return p

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", nargs="?", default="-", help="sg6 檔案，預設為標準輸入")

    p = add("construct", cmd_construct, "建構極值帶號圖")
    p.add_argument("kind", choices=["gamma", "sigma", "complete-neg", "complete-pos"])
    for name in ("s", "k", "r", "n"):
        p.add_argument(f"--{name}", type=int)

    p = add("spectrum", cmd_spectrum, "特徵值、index 與譜半徑")
    add_input(p)

    p = add("check", cmd_check, "禁止子結構族判定")
    add_input(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--tk4-free", type=int, metavar="T")
    group.add_argument("--kr-free", type=int, metavar="R")
    group.add_argument("--c3-free", action="store_true")

    p = add("count-uk4", cmd_count_uk4, "不平衡 K4 計數")
    add_input(p)

    p = add("canon", cmd_canon, "切換同構標準形")
    add_input(p)

    p = add("switch", cmd_switch, "在頂點集合上切換")
    add_input(p)
    p.add_argument("--set", default="", help="頂點清單，例如 0,2,3")

    p = add("structure", cmd_structure, "極值見證圖的結構報告")
    add_input(p)
    p.add_argument("--t", type=int, required=True)

    p = add("search", cmd_search, "極值搜尋並輸出憑證")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--objective", choices=["index", "spectral_radius"], default="index")
    fam = p.add_mutually_exclusive_group()
    fam.add_argument("--t", type=int, help="tK4^- -free 的 t")
    fam.add_argument("--kr-free", type=int, metavar="R")
    fam.add_argument("--c3-free", action="store_true")
    fam.add_argument("--family", default="all_unbalanced", help="例如 all-unbalanced、tk4_free(2)")
    p.add_argument("--connected", action="store_true", help="只考慮連通圖")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--prune", action="store_true", help="啟用剪枝（n ≥ 7 預設啟用）")
    mode.add_argument("--exhaustive", action="store_true", help="停用剪枝")
    p.add_argument("--dedup", action="store_true", help="底圖同構去重")
    p.add_argument("--out", help="憑證 JSON 輸出路徑")

    p = add("verify", cmd_verify, "數值驗證套件")
    p.add_argument("suite")
    p.add_argument("--n", help="n 的範圍，例如 30..60 或 4,5,6")
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--r")
    p.add_argument("--k")
    p.add_argument("--s")
    p.add_argument("--t")
    p.add_argument("--search-n", help="1.3 套件要實際搜尋的 n")

    p = add("verify-cert", cmd_verify_cert, "驗證搜尋憑證")
    p.add_argument("certificate", nargs="?", default="-")
    return parser


def _configure_logging(verbose: int, level: str) -> None:
    if verbose:
        level = "INFO" if verbose == 1 else "DEBUG"
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING),
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None,
         err: Optional[TextIO] = None, stdin: Optional[TextIO] = None) -> int:
    """執行命令列並回傳結束碼"""
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
        config = load_config(getattr(args, "config", None))
        config = config.override(
            jobs=getattr(args, "jobs", None),
            eq_tol=getattr(args, "eq_tol", None),
            ord_tol=getattr(args, "ord_tol", None),
            output_format=getattr(args, "format", None),
            checkpoint_path=getattr(args, "checkpoint", None),
            progress=getattr(args, "progress", None),
            log_level=getattr(args, "log_level", None),
        )
        args.format = config.output_format
        _configure_logging(getattr(args, "verbose", 0), config.log_level)
        return args.handler(args, Toolkit(config), out, stdin)
    except CapabilityError as e:
        err.write(f"錯誤: {e}\n")
        return EXIT_CAPABILITY
    except (DomainError, OSError) as e:
        err.write(f"錯誤: {e}\n")
        return EXIT_DOMAIN
    except SgxError as e:
        err.write(f"錯誤: {e}\n")
        return EXIT_DOMAIN


def main_sync() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_sync()
