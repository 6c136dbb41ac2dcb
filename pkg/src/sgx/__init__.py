"""
帶號圖譜工具套件

小階數帶號圖的譜計算與極值搜尋：
- 帶號圖模型、切換、平衡判定與 sg6 文字格式
- 特徵值、特徵多項式、等價劃分與商矩陣
- 極值構造 Γ_{s,n}、Σ_{k,n} 及其閉式多項式
- 不平衡團、tK_4^- 條件與平衡團數
- 切換類列舉、剪枝搜尋、可驗證憑證與數值驗證套件
"""

__version__ = "0.1.0"

from .constructions import gamma, sigma, complete_one_negative, complete_positive
from .errors import CapabilityError, DomainError, GuardError, ParseError, SgxError
from .forbidden import Family, count_unbalanced_k4, is_tk4_free
from .search import SearchSpec, extremal_search, verify_certificate
from .sgraph import SignedGraph, decode_sg6, encode_sg6, switch
from .spectra import index, spectral_radius, spectrum
from .toolkit import Toolkit

__all__ = [
    "SignedGraph",
    "decode_sg6",
    "encode_sg6",
    "switch",
    "spectrum",
    "index",
    "spectral_radius",
    "gamma",
    "sigma",
    "complete_one_negative",
    "complete_positive",
    "Family",
    "count_unbalanced_k4",
    "is_tk4_free",
    "SearchSpec",
    "extremal_search",
    "verify_certificate",
    "Toolkit",
    "SgxError",
    "DomainError",
    "ParseError",
    "CapabilityError",
    "GuardError",
]
