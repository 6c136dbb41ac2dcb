"""
例外類別

DomainError 系列對應輸入錯誤（CLI 結束碼 1），
CapabilityError 系列對應資源或能力限制（CLI 結束碼 2）。
"""

from typing import Optional


class SgxError(Exception):
    """所有 sgx 例外的基底類別"""


class DomainError(SgxError, ValueError):
    """輸入不符合前置條件"""


class ParseError(DomainError):
    """sg6 文字格式錯誤"""

    def __init__(self, message: str, position: int = 0, line: Optional[int] = None):
        self.detail = message
        self.position = position
        self.line = line
        where = f"第 {line} 行，" if line is not None else ""
        super().__init__(f"{where}位置 {position}: {message}")

    def at_line(self, line: int) -> "ParseError":
        """補上檔案行號後重新產生例外"""
        return ParseError(self.detail, self.position, line)


class CapabilityError(SgxError, RuntimeError):
    """超出運算能力範圍"""


class ConvergenceError(CapabilityError):
    """特徵值求解未收斂"""


class GuardError(CapabilityError):
    """搜尋資源防護觸發"""

    def __init__(self, guard: str, message: str):
        self.guard = guard
        super().__init__(f"guard '{guard}' exceeded: {message}")
