"""
執行設定

預設值 → 設定檔（key = value）→ 環境變數 SGX_JOBS → 命令列參數，後者覆寫前者。
"""

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from .errors import DomainError


# === 基礎設定 ===
DEFAULT_JOBS = 1
DEFAULT_EQ_TOL = 1e-8
DEFAULT_ORD_TOL = 1e-9
OUTPUT_FORMATS = ("json", "csv", "table")
JOBS_ENV = "SGX_JOBS"


@dataclass(frozen=True)
class RunConfig:
    """一次執行的共用設定"""

    jobs: int = DEFAULT_JOBS
    eq_tol: float = DEFAULT_EQ_TOL
    ord_tol: float = DEFAULT_ORD_TOL
    output_format: str = "json"
    checkpoint_path: Optional[str] = None
    progress: bool = False
    log_level: str = "WARNING"

    def __post_init__(self):
        if self.jobs < 1:
            raise DomainError(f"jobs 必須 ≥ 1，收到 {self.jobs}")
        if self.eq_tol <= 0 or self.ord_tol <= 0:
            raise DomainError("容許誤差必須 > 0")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(f"未知輸出格式: {self.output_format}")

    def override(self, **changes: Any) -> "RunConfig":
        """以非 None 的值覆寫設定"""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _coerce(name: str, raw: str) -> Any:
    kinds = {f.name: f.type for f in fields(RunConfig)}
    if name not in kinds:
        raise DomainError(f"設定檔含未知鍵: {name}")
    if name == "jobs":
        return int(raw)
    if name in ("eq_tol", "ord_tol"):
        return float(raw)
    if name == "progress":
        return raw.lower() in ("1", "true", "yes", "on")
    if name == "checkpoint_path":
        return raw or None
    return raw


def parse_config_text(text: str) -> Dict[str, Any]:
    """解析 key = value 格式，# 開頭為註解"""
    values: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DomainError(f"設定檔第 {lineno} 行缺少 '='")
        key, raw = (part.strip() for part in line.split("=", 1))
        try:
            values[key] = _coerce(key, raw)
        except ValueError as e:
            if isinstance(e, DomainError):
                raise
            raise DomainError(f"設定檔第 {lineno} 行數值錯誤: {raw}") from e
    return values


def load_config(path: Optional[str] = None,
                env: Optional[Mapping[str, str]] = None) -> RunConfig:
    """載入設定：預設值、設定檔、環境變數"""
    env = os.environ if env is None else env
    values: Dict[str, Any] = {}
    if path:
        values.update(parse_config_text(Path(path).read_text(encoding="utf-8")))
    if env.get(JOBS_ENV):
        try:
            values["jobs"] = int(env[JOBS_ENV])
        except ValueError as e:
            raise DomainError(f"{JOBS_ENV} 必須是整數: {env[JOBS_ENV]}") from e
    return RunConfig(**values)
