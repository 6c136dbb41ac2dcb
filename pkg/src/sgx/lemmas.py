"""
數值驗證套件

每個套件對一組參數逐列檢查，回傳 SuiteReport（每列含參數、邊界餘量與通過與否）。
套件名稱：1.2, 1.3, 2.1, 2.2, 2.3, 2.4, 2.6, 2.9, 3.1。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from .config import DEFAULT_EQ_TOL, DEFAULT_ORD_TOL
from .constructions import (
    complete_one_negative,
    gamma,
    h_poly,
    lambda1_gamma,
    lambda1_sigma,
    q_sigma,
    r_of_t,
    sigma,
    sigma_partition,
)
from .errors import DomainError
from .forbidden import Family, balanced_clique_number, count_unbalanced_k4, is_tk4_free
from .search import (
    SearchSpec,
    enumerate_switching_classes,
    extremal_search,
    iter_signed_graphs,
    verify_certificate,
)
from .sgraph import (
    SignedGraph,
    adjacency_matrix,
    all_pairs,
    canonical_signature,
    decode_sg6,
    is_balanced,
    spanning_forest,
    switch,
    switching_isomorphic,
)
from .spectra import index, is_submultiset, quotient, spectrum

logger = logging.getLogger(__name__)

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class SuiteRow:
    params: Dict[str, Any]
    status: str
    margin: Optional[float] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {"params": self.params, "status": self.status, "margin": self.margin,
                "note": self.note}


@dataclass
class SuiteReport:
    name: str
    rows: List[SuiteRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def skipped(self) -> List[SuiteRow]:
        return [r for r in self.rows if r.status == SKIP]

    @property
    def worst_margin(self) -> Optional[float]:
        margins = [r.margin for r in self.rows if r.margin is not None and r.status != SKIP]
        return min(margins) if margins else None

    def add(self, params: Dict[str, Any], ok: bool, margin: Optional[float] = None,
            note: str = "") -> None:
        self.rows.append(SuiteRow(params, PASS if ok else FAIL, margin, note))

    def skip(self, params: Dict[str, Any], note: str, margin: Optional[float] = None) -> None:
        self.rows.append(SuiteRow(params, SKIP, margin, note))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.name,
            "passed": self.passed,
            "worst_margin": self.worst_margin,
            "rows": [r.to_dict() for r in self.rows],
            "skipped": len(self.skipped),
        }


def _range(values: Optional[Iterable[int]], lo: int, hi: int) -> List[int]:
    return sorted(set(values)) if values is not None else list(range(lo, hi + 1))


# === 套件 ===

def suite_gamma_bounds(n_min: int = 5, n_max: int = 60, eq_tol: float = DEFAULT_EQ_TOL,
                       **_: Any) -> SuiteReport:
    """n−2 ≤ λ_1(Γ_{s,n}) < n−1，且左端等號恰在 s = 1；特徵值與 f_{s,n} 最大根一致"""
    report = SuiteReport("2.1")
    for n in range(max(n_min, 3), n_max + 1):
        for s in range(1, n - 1):
            lam = index(gamma(s, n))
            root = lambda1_gamma(s, n)
            agree = abs(lam - root) <= 1e-6
            lower = lam >= n - 2 - eq_tol
            upper = lam < n - 1
            tight = abs(lam - (n - 2)) <= eq_tol
            ok = agree and lower and upper and (tight == (s == 1))
            report.add({"n": n, "s": s}, ok, margin=(n - 1) - lam,
                       note="" if ok else f"λ1={lam:.12g} root={root:.12g}")
    return report


def suite_gamma_chain(n_min: int = 4, n_max: int = 60, ord_tol: float = DEFAULT_ORD_TOL,
                      **_: Any) -> SuiteReport:
    """λ_1(Γ_{1,n}) < λ_1(Γ_{2,n}) < … < λ_1(Γ_{n−2,n})"""
    report = SuiteReport("2.2")
    for n in range(max(n_min, 4), n_max + 1):
        values = [lambda1_gamma(s, n) for s in range(1, n - 1)]
        gaps = [b - a for a, b in zip(values, values[1:])]
        worst = min(gaps)
        report.add({"n": n}, worst > ord_tol, margin=worst)
    return report


def suite_kr_free(n: int = 6, s_values: Sequence[int] = (3, 4, 5), jobs: int = 1,
                  eq_tol: float = DEFAULT_EQ_TOL, **_: Any) -> SuiteReport:
    """K_{s+1}^- -free 不平衡帶號圖中 λ_1 的極值圖為 Γ_{s−2,n}"""
    report = SuiteReport("2.3")
    for s in s_values:
        params = {"n": n, "s": s}
        if not 3 <= s <= n - 1:
            report.skip(params, "需要 3 ≤ s ≤ n−1")
            continue
        spec = SearchSpec(n=n, objective="index", family=Family("kr_free", s + 1),
                          prune=True, jobs=jobs)
        cert = extremal_search(spec)
        expected = lambda1_gamma(s - 2, n)
        iso = switching_isomorphic(decode_sg6(cert.witness), gamma(s - 2, n))
        diff = abs(cert.best_value - expected)
        report.add(params, iso and diff <= eq_tol, margin=-diff,
                   note=f"witness={cert.witness}" + ("" if iso else " 非 Γ_{s-2,n}"))
    return report


def suite_c3_free_radius(n_values: Sequence[int] = (4, 5, 6), jobs: int = 1,
                         ord_tol: float = DEFAULT_ORD_TOL, eq_tol: float = DEFAULT_EQ_TOL,
                         **_: Any) -> SuiteReport:
    """連通、不平衡且無負三角形時 ρ ≤ ½(√(n²−8) + n − 4)；n = 4 由不平衡 C_4 達到"""
    report = SuiteReport("2.4")
    for n in n_values:
        spec = SearchSpec(n=n, objective="spectral_radius", family=Family("c3_free"),
                          connected_only=True, prune=n > 6, jobs=jobs)
        cert = extremal_search(spec)
        bound = 0.5 * (math.sqrt(n * n - 8) + n - 4)
        margin = bound - cert.best_value
        ok = margin >= -ord_tol
        note = f"witness={cert.witness}"
        if n == 4:
            c4 = SignedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)], negative=[(0, 1)])
            attained = abs(margin) <= eq_tol and switching_isomorphic(decode_sg6(cert.witness), c4)
            ok = ok and attained
            note += "；等號由不平衡 C4 達到" if attained else "；未達到等號"
        report.add({"n": n}, ok, margin=margin, note=note)
    return report


def suite_switching_classes(n_max: int = 5, **_: Any) -> SuiteReport:
    """切換類代表數 = 2^(m−n+c)，且標準簽名在切換軌道上為常數"""
    report = SuiteReport("2.6")
    for n in range(1, n_max + 1):
        pairs = all_pairs(n)
        bad = 0
        graphs = 0
        for mask in range(1 << len(pairs)):
            g = SignedGraph(n, tuple(p for k, p in enumerate(pairs) if (mask >> k) & 1), 0)
            graphs += 1
            c = len(spanning_forest(g).components)
            reps = {r.negative for r in enumerate_switching_classes(g)}
            if len(reps) != 1 << (g.m - n + c):
                bad += 1
                continue
            for sig in range(1 << g.m):
                h = SignedGraph(n, g.edges, sig)
                canon = canonical_signature(h).negative
                if canon not in reps or any(
                        canonical_signature(switch(h, {v})).negative != canon for v in range(n)):
                    bad += 1
                    break
        report.add({"n": n, "graphs": graphs}, bad == 0, note=f"{bad} 個底圖不符" if bad else "")
    return report


def suite_sigma(n_values: Optional[Sequence[int]] = None, r_values: Sequence[int] = (2, 3, 4),
                k_values: Sequence[int] = (2, 3, 4, 5), n_min: int = 30, n_max: int = 60,
                eq_tol: float = DEFAULT_EQ_TOL, ord_tol: float = DEFAULT_ORD_TOL,
                **_: Any) -> SuiteReport:
    """Σ_{k,n} 的商矩陣、閉式多項式、完整譜分解與對 k 的遞減"""
    report = SuiteReport("2.9")
    for n in _range(n_values, n_min, n_max):
        for r in r_values:
            for k in k_values:
                params = {"n": n, "r": r, "k": k}
                if n < k + r + 4 or k < 2:
                    report.skip(params, "參數超出構造範圍")
                    continue
                g = sigma(k, r, n)
                a = adjacency_matrix(g, dtype=np.int64)
                lam = index(g)
                q = quotient(a, sigma_partition(k, r, n))
                q_ok = np.array_equal(q.matrix, q_sigma(k, r, n).matrix)
                quotient_ok = q_ok and abs(lam - lambda1_sigma(k, r, n)) <= eq_tol
                h = h_poly(k, r, n)
                poly_ok = abs(h(lam)) <= 1e-6 * h.scale()
                q_vals = np.linalg.eigvals(q.matrix.astype(float)).real
                expected = list(q_vals) + [-1.0] * (n - k - 4) + [0.0] * (k - 1)
                decomposition_ok = len(expected) == n and is_submultiset(
                    expected, spectrum(g).tolist(), 1e-7)
                ok = quotient_ok and poly_ok and decomposition_ok
                prev = index(sigma(k - 1, r, n))
                gap = prev - lam
                if lam > n - 2:
                    report.add(params, ok and gap > ord_tol, margin=gap)
                elif ok:
                    report.skip(params, f"λ1 = {lam:.9f} ≤ n−2，遞減性檢查略過（實際差 {gap:.3e}）",
                                margin=gap)
                else:
                    report.add(params, False, margin=gap, note="商矩陣、多項式或譜分解不符")
    return report


def suite_balanced_clique(n_min: int = 1, n_max: int = 5, **_: Any) -> SuiteReport:
    """所有 n 階帶號圖 λ_1 ≤ n(1 − 1/ω_b)"""
    report = SuiteReport("3.1")
    for n in range(max(n_min, 1), n_max + 1):
        worst = math.inf
        count = 0
        for g in iter_signed_graphs(n):
            count += 1
            bound = n * (1 - 1 / balanced_clique_number(g))
            worst = min(worst, bound - index(g))
        report.add({"n": n, "graphs": count}, worst >= -1e-9, margin=worst)
    return report


def suite_one_negative(n_values: Sequence[int] = (4, 5, 6), naive_max: int = 5, jobs: int = 1,
                       eq_tol: float = DEFAULT_EQ_TOL, **_: Any) -> SuiteReport:
    """不平衡帶號圖中 λ_1 的唯一極值圖是恰有一條負邊的完全圖"""
    report = SuiteReport("1.2")
    for n in n_values:
        spec = SearchSpec(n=n, objective="index", prune=n > 5, jobs=jobs)
        cert = extremal_search(spec)
        expected = lambda1_gamma(n - 2, n)
        target = complete_one_negative(n)
        iso = switching_isomorphic(decode_sg6(cert.witness), target)
        unique = len(cert.tied_witnesses) == 1
        diff = abs(cert.best_value - expected)
        ok = iso and unique and diff <= eq_tol
        note = f"witness={cert.witness}"
        if n <= naive_max:
            naive = max(index(g) for g in iter_signed_graphs(n) if not is_balanced(g))
            ok = ok and abs(naive - cert.best_value) <= eq_tol
            note += f"；逐一列舉 {3 ** (n * (n - 1) // 2)} 個帶號圖一致"
        report.add({"n": n}, ok, margin=-diff, note=note)
    return report


def suite_tk4(t_values: Sequence[int] = (2, 4, 7, 11), n_max: int = 12,
              search_n: Sequence[int] = (), jobs: int = 1, **_: Any) -> SuiteReport:
    """Γ_{r,n} 恰有 t−1 個不平衡 K_4；可選擇對 t = 2 執行剪枝搜尋並檢查憑證"""
    report = SuiteReport("1.3")
    for t in t_values:
        r = r_of_t(t)
        if r is None:
            report.skip({"t": t}, "r not integral")
            continue
        for n in range(r + 2, n_max + 1):
            g = gamma(r, n)
            count = count_unbalanced_k4(g)
            report.add({"t": t, "n": n}, count == t - 1 and is_tk4_free(g, t),
                       note=f"count={count}")
    for n in search_n:
        spec = SearchSpec(n=n, objective="index", family=Family("tk4_free", 2), prune=True,
                          jobs=jobs)
        cert = extremal_search(spec)
        verdict = verify_certificate(cert)
        match = cert.matches_construction or {}
        structure = cert.structure or {}
        note = (f"witness={cert.witness} matches_construction="
                f"{match.get('switching_isomorphic')} structure={structure}")
        report.add({"t": 2, "n": n, "search": True}, bool(verdict), margin=None, note=note)
    return report


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "1.2": suite_one_negative,
    "1.3": suite_tk4,
    "2.1": suite_gamma_bounds,
    "2.2": suite_gamma_chain,
    "2.3": suite_kr_free,
    "2.4": suite_c3_free_radius,
    "2.6": suite_switching_classes,
    "2.9": suite_sigma,
    "3.1": suite_balanced_clique,
}


def run_suite(name: str, **params: Any) -> SuiteReport:
    """依名稱執行套件；未指定的參數使用預設範圍"""
    suite = SUITES.get(name)
    if suite is None:
        raise DomainError(f"未知的驗證套件: {name}（可用：{', '.join(SUITES)}）")
    logger.info("執行套件 %s %s", name, params)
    report = suite(**{k: v for k, v in params.items() if v is not None})
    logger.info("套件 %s：%s，%d 列，略過 %d 列", name, "通過" if report.passed else "失敗",
                len(report.rows), len(report.skipped))
    return report
