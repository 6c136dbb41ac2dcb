"""
極值帶號圖的構造

Γ_{s,n}：K_{n-1} 全正，另加頂點 v_n 連到 v_1..v_{s+1}，其中 v_n v_1 為唯一負邊。
Σ_{k,n}：五個區塊 u_2, u_1, K_r（w）, k·K_1（q）, K_{n-2-r-k}（v），u_1 u_2 為唯一負邊。

頂點編號：Γ_{s,n} 的 v_i ↦ i-1；Σ_{k,n} 依 u_2, u_1, w, q, v 的順序連續編號。
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, NamedTuple, Optional

import numpy as np

from .errors import DomainError
from .forbidden import Family
from .sgraph import SignedGraph, all_pairs
from .spectra import (
    EquitablePartition,
    QuotientMatrix,
    RealPolynomial,
    largest_real_root,
)


@dataclass(frozen=True)
class GammaParams:
    s: int
    n: int

    def __post_init__(self):
        if self.s < 1:
            raise DomainError(f"s ≥ 1 violated（s = {self.s}）")
        if self.s > self.n - 2:
            raise DomainError(f"s ≤ n−2 violated（s = {self.s}, n = {self.n}）")


@dataclass(frozen=True)
class SigmaParams:
    k: int
    r: int
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"k ≥ 1 violated（k = {self.k}）")
        if self.r < 2:
            raise DomainError(f"r ≥ 2 violated（r = {self.r}）")
        if self.n < self.k + self.r + 4:
            raise DomainError(f"n ≥ k+r+4 violated（k = {self.k}, r = {self.r}, n = {self.n}）")

    @property
    def a(self) -> int:
        """v 區塊大小 n-2-r-k"""
        return self.n - 2 - self.r - self.k


class Construction(NamedTuple):
    """具名構造與參數，可重建圖"""

    name: str
    params: Dict[str, int]

    def build(self) -> SignedGraph:
        return BUILDERS[self.name](**self.params)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "params": dict(self.params)}


# === 構造 ===

def gamma(s: int, n: int) -> SignedGraph:
    """Γ_{s,n}"""
    GammaParams(s, n)
    last = n - 1
    edges = [e for e in all_pairs(n) if e[1] < last]
    edges += [(i, last) for i in range(s + 1)]
    return SignedGraph.from_edges(n, edges, negative=[(0, last)])


def sigma(k: int, r: int, n: int) -> SignedGraph:
    """Σ_{k,n}（r 為 w 區塊大小）"""
    SigmaParams(k, r, n)
    u2, u1 = 0, 1
    w = range(2, 2 + r)
    q = range(2 + r, 2 + r + k)
    v = range(2 + r + k, n)
    edges = [(u1, u2)]
    edges += [(u1, x) for x in (*w, *q, *v)]
    edges += [(u2, x) for x in (*w, *q)]
    edges += [(a, b) for a in w for b in w if a < b]
    edges += [(a, b) for a in v for b in v if a < b]
    edges += [(a, b) for a in w for b in v]
    edges += [(a, b) for a in q for b in v]
    return SignedGraph.from_edges(n, edges, negative=[(u1, u2)])


def complete_positive(n: int) -> SignedGraph:
    if n < 1:
        raise DomainError(f"n ≥ 1 violated（n = {n}）")
    return SignedGraph.complete(n)


def complete_one_negative(n: int) -> SignedGraph:
    """恰有一條負邊的完全圖，即 Γ_{n-2,n}"""
    if n < 3:
        raise DomainError(f"n ≥ 3 violated（n = {n}）")
    return gamma(n - 2, n)


BUILDERS = {
    "gamma": gamma,
    "sigma": sigma,
    "complete_positive": complete_positive,
    "complete_one_negative": complete_one_negative,
}


# === 等價劃分 ===

def gamma_partition(s: int, n: int) -> EquitablePartition:
    """{v_n}, {v_1}, {v_2..v_{s+1}}, 其餘；s = n-2 時最後一格為空而省略"""
    GammaParams(s, n)
    blocks = [(n - 1,), (0,), tuple(range(1, s + 1))]
    rest = tuple(range(s + 1, n - 1))
    if rest:
        blocks.append(rest)
    return EquitablePartition(tuple(blocks))


def sigma_partition(k: int, r: int, n: int) -> EquitablePartition:
    """V_1 = {u_2}, V_2 = {u_1}, V_3 = w, V_4 = q, V_5 = v"""
    SigmaParams(k, r, n)
    return EquitablePartition((
        (0,),
        (1,),
        tuple(range(2, 2 + r)),
        tuple(range(2 + r, 2 + r + k)),
        tuple(range(2 + r + k, n)),
    ))


def q_sigma(k: int, r: int, n: int) -> QuotientMatrix:
    """Q(Σ_{k,n})"""
    p = SigmaParams(k, r, n)
    a = p.a
    matrix = np.array([
        [0, -1, r, k, 0],
        [-1, 0, r, k, a],
        [1, 1, r - 1, 0, a],
        [1, 1, 0, 0, a],
        [0, 1, r, k, a - 1],
    ], dtype=np.int64)
    return QuotientMatrix(matrix, sigma_partition(k, r, n))


# === 閉式多項式 ===

def f_poly(s: int, n: int) -> RealPolynomial:
    """λ³ − (n−3)λ² − (n+s−1)λ − s² + n + ns − 3"""
    GammaParams(s, n)
    return RealPolynomial.from_descending(1, -(n - 3), -(n + s - 1), -s * s + n + n * s - 3)


def h_poly(k: int, r: int, n: int) -> RealPolynomial:
    """Q(Σ_{k,n}) 的特徵多項式（閉式係數）"""
    SigmaParams(k, r, n)
    return RealPolynomial.from_descending(
        1,
        k - n + 4,
        k * k - k * n + k * r + 2 * k - 2 * n - r + 4,
        -k * k * r + k * k + k * n * r - k * n - k * r * r + n * r - r * r - r - 2,
        -2 * k * k + 2 * k * n - 3 * k * r - 3 * k + n * r + n - r * r - 3,
        2 * k * k * r - 2 * k * k - 2 * k * n * r + 2 * k * n + 2 * k * r * r - 2 * k,
    )


def lambda1_gamma(s: int, n: int) -> float:
    """λ_1(Γ_{s,n})，取 f_{s,n} 在 [n−2−1e−6, n−1] 的最大根"""
    p = f_poly(s, n)
    try:
        return largest_real_root(p, n - 2 - 1e-6, n - 1)
    except DomainError:
        return float(n - 2)


def lambda1_sigma(k: int, r: int, n: int) -> float:
    """λ_1(Σ_{k,n}) = λ_1(Q(Σ_{k,n}))（商矩陣非對稱，取最大實特徵值）"""
    values = np.linalg.eigvals(q_sigma(k, r, n).matrix.astype(float))
    return float(np.max(values.real))


# === t 與 r 的對應 ===

def r_of_t(t: int) -> Optional[int]:
    """r = (1 + √(8t−7)) / 2；非整數時回傳 None"""
    if t < 2:
        raise DomainError(f"t ≥ 2 violated（t = {t}）")
    d = 8 * t - 7
    root = math.isqrt(d)
    if root * root != d:
        return None
    return (1 + root) // 2


def t_of_r(r: int) -> int:
    """2t = r² − r + 2"""
    if r < 2:
        raise DomainError(f"r ≥ 2 violated（r = {r}）")
    return r * (r - 1) // 2 + 1


def predicted_extremal(t: int, n: int) -> Optional[Construction]:
    """n 充分大時 tK_4^- -free 不平衡帶號圖中 λ_1 的極值圖

    t ≥ C(n−2,2)+1 時為 Γ_{n−2,n}；2 ≤ t ≤ C(n−2,2) 且 r 為整數時為 Γ_{r,n}；
    其餘情形沒有對應的構造。
    """
    if t < 2:
        raise DomainError(f"t ≥ 2 violated（t = {t}）")
    if n < 4:
        raise DomainError(f"n ≥ 4 violated（n = {n}）")
    if t >= math.comb(n - 2, 2) + 1:
        return Construction("gamma", {"s": n - 2, "n": n})
    r = r_of_t(t)
    if r is None or r > n - 2:
        return None
    return Construction("gamma", {"s": r, "n": n})


def feasible_seed(family: Family, n: int) -> Optional[Construction]:
    """族中已知的不平衡成員，作為剪枝的初始下界"""
    if n < 3:
        return None
    if family.kind == "all_unbalanced":
        s = n - 2
    elif family.kind == "tk4_free":
        s = 1
        while s + 1 <= n - 2 and math.comb(s + 1, 2) <= family.param - 1:
            s += 1
    elif family.kind == "kr_free":
        if family.param < 4:
            return None
        s = min(family.param - 3, n - 2)
    else:
        return None
    return Construction("gamma", {"s": s, "n": n})
