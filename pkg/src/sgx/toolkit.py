"""
帶號圖工具客戶端

把各領域模組包成回傳 JSON 友善 dict 的函式，可以在非 MCP 環境中使用；
命令列與 MCP 伺服器都透過 Toolkit 呼叫。
"""

import logging
from typing import Any, Dict, Iterable, List, Optional, Union

from .config import RunConfig
from .constructions import (
    complete_one_negative,
    complete_positive,
    gamma,
    sigma,
)
from .errors import DomainError
from .forbidden import Family, clique_report, count_unbalanced_k4, negative_triangles
from .lemmas import run_suite
from .search import (
    SCHEMA_VERSION,
    SearchCertificate,
    SearchSpec,
    extremal_search,
    verify_certificate,
    verify_extremal_structure,
)
from .sgraph import SignedGraph, canonical_sg6, decode_sg6, encode_sg6, is_balanced, switch
from .spectra import spectrum

logger = logging.getLogger(__name__)

GraphLike = Union[SignedGraph, str]

CONSTRUCTIONS = {
    "gamma": (gamma, ("s", "n")),
    "sigma": (sigma, ("k", "r", "n")),
    "complete-neg": (complete_one_negative, ("n",)),
    "complete-pos": (complete_positive, ("n",)),
}


def _graph(g: GraphLike) -> SignedGraph:
    return decode_sg6(g) if isinstance(g, str) else g


def _doc(**fields: Any) -> Dict[str, Any]:
    return {"schema": SCHEMA_VERSION, **fields}


def construct_graph(kind: str, **params: int) -> Dict[str, Any]:
    """依名稱建構極值帶號圖"""
    if kind not in CONSTRUCTIONS:
        raise DomainError(f"未知構造: {kind}（可用：{', '.join(CONSTRUCTIONS)}）")
    builder, names = CONSTRUCTIONS[kind]
    missing = [p for p in names if params.get(p) is None]
    if missing:
        raise DomainError(f"{kind} 缺少參數: {', '.join(missing)}")
    used = {p: int(params[p]) for p in names}
    g = builder(**used)
    return _doc(kind=kind, params=used, sg6=encode_sg6(g), n=g.n, m=g.m,
                negative_edges=[list(e) for e in g.negative_edges])


def spectrum_report(g: GraphLike) -> Dict[str, Any]:
    """特徵值、λ_1、ρ、是否平衡與負邊"""
    g = _graph(g)
    spec = spectrum(g)
    return _doc(
        sg6=encode_sg6(g),
        eigenvalues=spec.tolist(),
        index=spec.index,
        spectral_radius=spec.spectral_radius,
        balanced=is_balanced(g),
        negative_edges=[list(e) for e in g.negative_edges],
    )


def check_report(g: GraphLike, family: Union[Family, str]) -> Dict[str, Any]:
    """族條件判定與對應的計數"""
    g = _graph(g)
    family = Family.parse(family) if isinstance(family, str) else family
    warnings: List[str] = []
    balanced = is_balanced(g)
    if balanced:
        warnings.append("input is balanced")
        logger.warning("input is balanced: %s", encode_sg6(g))
    if family.kind == "tk4_free":
        count = count_unbalanced_k4(g)
    elif family.kind == "kr_free":
        count = clique_report(g, family.param).unbalanced_count if g.n >= family.param else 0
    elif family.kind == "c3_free":
        count = len(negative_triangles(g))
    else:
        count = None
    return _doc(
        sg6=encode_sg6(g),
        family=str(family),
        free=family.admits(g),
        unbalanced=not balanced,
        count=count,
        warnings=warnings,
    )


def count_uk4_report(g: GraphLike) -> Dict[str, Any]:
    """不平衡 4-團的個數與頂點集"""
    g = _graph(g)
    cliques = []
    if g.n >= 4:
        report = clique_report(g, 4)
        cliques = [sorted(s) for s, bad in zip(report.vertex_sets, report.unbalanced_flags) if bad]
    return _doc(sg6=encode_sg6(g), count=len(cliques), cliques=cliques)


class Toolkit:
    """帶號圖工具客戶端"""

    def __init__(self, config: Optional[RunConfig] = None):
        """
        初始化客戶端

        Args:
            config: 執行設定（jobs、容許誤差、檢查點路徑）
        """
        self.config = config or RunConfig()

    def construct(self, kind: str, **params: int) -> Dict[str, Any]:
        return construct_graph(kind, **params)

    def spectrum(self, g: GraphLike) -> Dict[str, Any]:
        return spectrum_report(g)

    def check(self, g: GraphLike, family: Union[Family, str]) -> Dict[str, Any]:
        return check_report(g, family)

    def count_uk4(self, g: GraphLike) -> Dict[str, Any]:
        return count_uk4_report(g)

    def canon(self, g: GraphLike) -> Dict[str, Any]:
        """切換同構標準形"""
        g = _graph(g)
        return _doc(input=encode_sg6(g), canonical=canonical_sg6(g))

    def switch(self, g: GraphLike, vertices: Iterable[int]) -> Dict[str, Any]:
        """在頂點集合上切換"""
        g = _graph(g)
        u = sorted(set(int(v) for v in vertices))
        return _doc(set=u, sg6=encode_sg6(switch(g, u)))

    def structure(self, g: GraphLike, t: int) -> Dict[str, Any]:
        return _doc(**verify_extremal_structure(_graph(g), t).to_dict())

    def search(self, n: int, objective: str = "index", family: Union[Family, str] = "all_unbalanced",
               connected_only: bool = False, prune: Optional[bool] = None,
               dedup: bool = False) -> Dict[str, Any]:
        """極值搜尋；prune 未指定時 n ≥ 7 自動啟用"""
        spec = SearchSpec(
            n=n,
            objective=objective,
            family=Family.parse(family) if isinstance(family, str) else family,
            connected_only=connected_only,
            prune=n > 6 if prune is None else prune,
            jobs=self.config.jobs,
            checkpoint_path=self.config.checkpoint_path,
            dedup=dedup,
        )
        return extremal_search(spec, progress=self.config.progress).to_dict()

    def verify_certificate(self, cert: Union[Dict[str, Any], str]) -> Dict[str, Any]:
        """獨立驗證憑證（dict 或 JSON 文字）"""
        if isinstance(cert, str):
            cert = SearchCertificate.from_json(cert)
        return _doc(**verify_certificate(cert).to_dict())

    def verify_suite(self, name: str, **params: Any) -> Dict[str, Any]:
        """執行數值驗證套件"""
        params.setdefault("eq_tol", self.config.eq_tol)
        params.setdefault("ord_tol", self.config.ord_tol)
        params.setdefault("jobs", self.config.jobs)
        return _doc(**run_suite(name, **params).to_dict())
