"""
禁止子結構的偵測與計數

不平衡圈、不平衡團、tK_4^- 條件（少於 t 個不平衡 4-團，以頂點集區分）
與平衡團數 ω_b。
"""

import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .errors import DomainError
from .sgraph import SignedGraph, VertexSet, induced_subgraph, is_balanced, iter_bits


FAMILY_KINDS = ("all_unbalanced", "tk4_free", "kr_free", "c3_free")
_FAMILY_RE = re.compile(r"^(all_unbalanced|c3_free|tk4_free|kr_free)(?:\((\d+)\))?$")


@dataclass(frozen=True)
class CliqueReport:
    size: int
    vertex_sets: Tuple[VertexSet, ...]
    unbalanced_flags: Tuple[bool, ...]

    @property
    def unbalanced_count(self) -> int:
        return sum(self.unbalanced_flags)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "vertex_sets": [sorted(s) for s in self.vertex_sets],
            "unbalanced_flags": list(self.unbalanced_flags),
        }


@dataclass(frozen=True)
class Family:
    """搜尋族：all_unbalanced、tk4_free(t)、kr_free(r)、c3_free"""

    kind: str
    param: Optional[int] = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise DomainError(f"未知的族: {self.kind}")
        if self.kind == "tk4_free" and (self.param is None or self.param < 1):
            raise DomainError(f"tk4_free 需要 t ≥ 1，收到 {self.param}")
        if self.kind == "kr_free" and (self.param is None or self.param < 3):
            raise DomainError(f"kr_free 需要 r ≥ 3，收到 {self.param}")
        if self.kind in ("all_unbalanced", "c3_free") and self.param is not None:
            raise DomainError(f"{self.kind} 不接受參數")

    @classmethod
    def parse(cls, text: str) -> "Family":
        """解析 'tk4_free(2)'、'kr-free(4)'、'c3_free' 等寫法"""
        m = _FAMILY_RE.match(text.strip().lower().replace("-", "_"))
        if not m:
            raise DomainError(f"無法解析族: {text!r}")
        return cls(m.group(1), int(m.group(2)) if m.group(2) else None)

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}({self.param})"

    def admits(self, g: SignedGraph) -> bool:
        """族的禁止條件（不含不平衡要求）"""
        if self.kind == "tk4_free":
            return count_unbalanced_k4(g) <= self.param - 1
        if self.kind == "kr_free":
            return not contains_unbalanced_kr(g, self.param)
        if self.kind == "c3_free":
            return not contains_unbalanced_ck(g, 3)
        return True


# === 團 ===

def enumerate_cliques(g: SignedGraph, size: int) -> List[VertexSet]:
    """所有誘導完全底圖的 size 頂點集，依字典序"""
    if not 1 <= size <= max(g.n, 1):
        raise DomainError(f"size 必須在 [1, {g.n}]，收到 {size}")
    adj = g.adj_masks
    out: List[VertexSet] = []

    def extend(prefix: List[int], cand: int) -> None:
        if len(prefix) == size:
            out.append(frozenset(prefix))
            return
        need = size - len(prefix)
        for v in iter_bits(cand):
            if (cand >> v).bit_count() < need:
                break
            prefix.append(v)
            extend(prefix, cand & adj[v] & ~((1 << (v + 1)) - 1))
            prefix.pop()

    extend([], (1 << g.n) - 1)
    return out


def _negative_triangle_inside(g: SignedGraph, s: List[int]) -> bool:
    for a in range(len(s)):
        for b in range(a + 1, len(s)):
            sab = g.sign(s[a], s[b])
            for c in range(b + 1, len(s)):
                if sab * g.sign(s[a], s[c]) * g.sign(s[b], s[c]) < 0:
                    return True
    return False


def _require_clique(g: SignedGraph, s: List[int]) -> None:
    for a in range(len(s)):
        for b in range(a + 1, len(s)):
            if not g.has_edge(s[a], s[b]):
                raise DomainError(f"{sorted(s)} 不是團：缺少邊 ({s[a]}, {s[b]})")


def is_unbalanced_clique(g: SignedGraph, s: VertexSet) -> bool:
    """s 誘導的帶號完全圖是否不平衡"""
    members = sorted(s)
    _require_clique(g, members)
    return not is_balanced(induced_subgraph(g, members))


def count_unbalanced_k4(g: SignedGraph) -> int:
    """不平衡 4-團的個數（完全圖不平衡 ⇔ 含負三角形）"""
    if g.n < 4:
        return 0
    return sum(_negative_triangle_inside(g, sorted(s)) for s in enumerate_cliques(g, 4))


def is_tk4_free(g: SignedGraph, t: int) -> bool:
    """不平衡 4-團少於 t 個"""
    if t < 1:
        raise DomainError(f"t 必須 ≥ 1，收到 {t}")
    return count_unbalanced_k4(g) <= t - 1


def contains_unbalanced_kr(g: SignedGraph, r: int) -> bool:
    """是否有 r 頂點集誘導不平衡帶號完全圖"""
    if r < 3:
        raise DomainError(f"r 必須 ≥ 3，收到 {r}")
    if r > g.n:
        return False
    return any(_negative_triangle_inside(g, sorted(s)) for s in enumerate_cliques(g, r))


def contains_unbalanced_ck(g: SignedGraph, k: int) -> bool:
    """是否有長度 k 的負圈（作為子圖）"""
    if k < 3:
        raise DomainError(f"k 必須 ≥ 3，收到 {k}")
    if k > g.n:
        return False
    adj = g.adj_masks

    def walk(start: int, path: List[int], on_path: int, sign: int) -> bool:
        last = path[-1]
        if len(path) == k:
            return bool((adj[last] >> start) & 1) and sign * g.sign(last, start) < 0
        for w in iter_bits(adj[last] & ~on_path & ~((1 << (start + 1)) - 1)):
            path.append(w)
            if walk(start, path, on_path | (1 << w), sign * g.sign(last, w)):
                return True
            path.pop()
        return False

    return any(walk(v, [v], 1 << v, 1) for v in range(g.n))


def negative_triangles(g: SignedGraph) -> List[Tuple[int, int, int]]:
    """符號乘積為負的三角形，依字典序"""
    return [tuple(sorted(s)) for s in (enumerate_cliques(g, 3) if g.n >= 3 else [])
            if _negative_triangle_inside(g, sorted(s))]


def balanced_clique_number(g: SignedGraph) -> int:
    """ω_b：誘導平衡帶號子圖的最大團大小"""
    if g.n == 0:
        return 0
    adj = g.adj_masks
    best = 1

    def grow(clique: List[int], cand: int) -> None:
        nonlocal best
        best = max(best, len(clique))
        if len(clique) + cand.bit_count() <= best:
            return
        for v in iter_bits(cand):
            if len(clique) + (cand >> v).bit_count() <= best:
                return
            ok = all(g.sign(a, b) * g.sign(a, v) * g.sign(b, v) > 0
                     for i, a in enumerate(clique) for b in clique[i + 1:])
            if ok:
                clique.append(v)
                grow(clique, cand & adj[v] & ~((1 << (v + 1)) - 1))
                clique.pop()

    for v in range(g.n):
        grow([v], adj[v] & ~((1 << (v + 1)) - 1))
    return best


def clique_report(g: SignedGraph, size: int) -> CliqueReport:
    """size-團清單與各自是否不平衡"""
    sets = enumerate_cliques(g, size)
    flags = tuple(_negative_triangle_inside(g, sorted(s)) for s in sets)
    return CliqueReport(size, tuple(sets), flags)
