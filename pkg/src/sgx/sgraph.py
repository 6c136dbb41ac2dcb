"""
帶號圖核心模型

提供帶號圖的儲存、切換（switching）、平衡判定、取負、標準簽名，
以及 sg6 文字格式（graph6 底圖 + 十六進位負邊位元）的編碼與解碼。

頂點以 0..n-1 表示；文件中的 v_1..v_n 對應 0..n-1（v_n ↦ n-1）。
邊依字典序 (i, j), i < j 排列，負號以位元遮罩儲存：第 k 位為 1 表示第 k 條邊為負。
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import CapabilityError, DomainError, ParseError


Edge = Tuple[int, int]
VertexSet = FrozenSet[int]

# 標準形搜尋樹的節點數上限
MAX_CANONICAL_NODES = 200_000
_HEX = re.compile(r"[0-9a-fA-F]*")


@lru_cache(maxsize=None)
def all_pairs(n: int) -> Tuple[Edge, ...]:
    """n 個頂點上所有 (i, j), i < j，依字典序"""
    return tuple(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> Dict[Edge, int]:
    """(i, j) → 在 all_pairs(n) 中的位置"""
    return {p: k for k, p in enumerate(all_pairs(n))}


def iter_bits(mask: int) -> Iterator[int]:
    """遮罩中為 1 的位元位置，由低到高"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def as_mask(u: Iterable[int], n: int) -> int:
    """頂點集合 → 位元遮罩（檢查範圍）"""
    mask = 0
    for v in u:
        if not 0 <= v < n:
            raise DomainError(f"頂點 {v} 超出範圍 [0, {n})")
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class SignedGraph:
    """帶號圖 Γ = (G, σ)

    Args:
        n: 頂點數
        edges: 依字典序排列的邊 (i, j), i < j
        negative: 負邊位元遮罩，第 k 位對應 edges[k]
    """

    n: int
    edges: Tuple[Edge, ...]
    negative: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"頂點數必須 ≥ 0，收到 {self.n}")
        prev = (-1, -1)
        for e in self.edges:
            i, j = e
            if i == j:
                raise DomainError(f"不允許自環: {e}")
            if not (0 <= i < j < self.n):
                raise DomainError(f"邊 {e} 不合法（需 0 ≤ i < j < {self.n}）")
            if e <= prev:
                raise DomainError("邊必須依字典序排列且不重複")
            prev = e
        if self.negative < 0 or self.negative >> len(self.edges):
            raise DomainError("負邊遮罩超出邊數")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]],
                   negative: Iterable[Sequence[int]] = ()) -> "SignedGraph":
        """由邊清單建立；negative 列出負邊"""
        norm = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise DomainError(f"不允許自環: ({i}, {j})")
            norm.add((min(i, j), max(i, j)))
        ordered = tuple(sorted(norm))
        index = {e: k for k, e in enumerate(ordered)}
        mask = 0
        for e in negative:
            key = (min(e[0], e[1]), max(e[0], e[1]))
            if key not in index:
                raise DomainError(f"負邊 {key} 不在邊集合中")
            mask |= 1 << index[key]
        return cls(n, ordered, mask)

    @classmethod
    def complete(cls, n: int) -> "SignedGraph":
        """全正完全圖 K_n"""
        return cls(n, all_pairs(n), 0)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def adj_masks(self) -> Tuple[int, ...]:
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_index

    def sign(self, i: int, j: int) -> int:
        """邊 {i, j} 的符號 (+1 / -1)"""
        k = self.edge_index.get((min(i, j), max(i, j)))
        if k is None:
            raise DomainError(f"({i}, {j}) 不是邊")
        return -1 if (self.negative >> k) & 1 else 1

    @property
    def negative_edges(self) -> Tuple[Edge, ...]:
        return tuple(self.edges[k] for k in iter_bits(self.negative))

    def underlying(self) -> "SignedGraph":
        """同底圖的全正帶號圖"""
        return SignedGraph(self.n, self.edges, 0)

    def to_networkx(self) -> nx.Graph:
        """轉為 networkx 圖，符號存於邊屬性 sign"""
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        for k, (i, j) in enumerate(self.edges):
            G.add_edge(i, j, sign=-1 if (self.negative >> k) & 1 else 1)
        return G

    def __repr__(self) -> str:
        return f"SignedGraph(n={self.n}, m={self.m}, negative={list(self.negative_edges)})"


def from_networkx(G: nx.Graph) -> SignedGraph:
    """由 networkx 圖建立；頂點必須是 0..n-1，缺少 sign 屬性視為正"""
    n = G.number_of_nodes()
    if set(G.nodes) != set(range(n)):
        raise DomainError("networkx 圖的頂點必須是 0..n-1")
    neg = [(u, v) for u, v, s in G.edges(data="sign", default=1) if s < 0]
    return SignedGraph.from_edges(n, G.edges, neg)


# === 基本查詢 ===

def _check_vertex(g: SignedGraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise DomainError(f"頂點 {v} 超出範圍 [0, {g.n})")


def neighbors(g: SignedGraph, v: int) -> VertexSet:
    """v 的鄰點集合"""
    _check_vertex(g, v)
    return frozenset(iter_bits(g.adj_masks[v]))


def degree(g: SignedGraph, v: int) -> int:
    """v 的度數"""
    _check_vertex(g, v)
    return g.adj_masks[v].bit_count()


def adjacency_matrix(g: SignedGraph, dtype=float):
    """帶號鄰接矩陣 A(Γ)"""
    a = np.zeros((g.n, g.n), dtype=dtype)
    for k, (i, j) in enumerate(g.edges):
        s = -1 if (g.negative >> k) & 1 else 1
        a[i, j] = a[j, i] = s
    return a


# === 切換與取負 ===

def switch(g: SignedGraph, u: Iterable[int]) -> SignedGraph:
    """在 U 上切換：恰有一端在 U 的邊變號"""
    umask = as_mask(u, g.n)
    flip = 0
    for k, (i, j) in enumerate(g.edges):
        if ((umask >> i) ^ (umask >> j)) & 1:
            flip |= 1 << k
    return SignedGraph(g.n, g.edges, g.negative ^ flip)


def negate(g: SignedGraph) -> SignedGraph:
    """所有邊變號（−Γ）"""
    return SignedGraph(g.n, g.edges, g.negative ^ ((1 << g.m) - 1))


def induced_subgraph(g: SignedGraph, s: Iterable[int]) -> SignedGraph:
    """S 誘導的帶號子圖，頂點依原順序重新編號為 0..|S|-1"""
    order = sorted(set(s))
    as_mask(order, g.n)
    pos = {v: k for k, v in enumerate(order)}
    edges, mask = [], 0
    for k, (i, j) in enumerate(g.edges):
        if i in pos and j in pos:
            if (g.negative >> k) & 1:
                mask |= 1 << len(edges)
            edges.append((pos[i], pos[j]))
    return SignedGraph(len(order), tuple(edges), mask)


def relabel(g: SignedGraph, order: Sequence[int]) -> SignedGraph:
    """重新編號：新頂點 i 為舊頂點 order[i]"""
    if sorted(order) != list(range(g.n)):
        raise DomainError("order 必須是 0..n-1 的排列")
    pos = [0] * g.n
    for new, old in enumerate(order):
        pos[old] = new
    items = []
    for k, (i, j) in enumerate(g.edges):
        a, b = pos[i], pos[j]
        items.append(((min(a, b), max(a, b)), (g.negative >> k) & 1))
    items.sort()
    mask = 0
    for k, (_, neg) in enumerate(items):
        if neg:
            mask |= 1 << k
    return SignedGraph(g.n, tuple(e for e, _ in items), mask)


# === 連通性與生成森林 ===

class Forest(NamedTuple):
    """字典序 BFS 生成森林"""

    components: Tuple[Tuple[int, ...], ...]
    parent: Tuple[int, ...]
    tree: int


def spanning_forest(g: SignedGraph) -> Forest:
    """每個連通分量從最小頂點開始 BFS，鄰點依編號遞增拜訪"""
    parent = [-1] * g.n
    seen = 0
    tree = 0
    components = []
    for root in range(g.n):
        if (seen >> root) & 1:
            continue
        seen |= 1 << root
        order = [root]
        head = 0
        while head < len(order):
            v = order[head]
            head += 1
            for w in iter_bits(g.adj_masks[v] & ~seen):
                seen |= 1 << w
                parent[w] = v
                tree |= 1 << g.edge_index[(min(v, w), max(v, w))]
                order.append(w)
        components.append(tuple(order))
    return Forest(tuple(components), tuple(parent), tree)


def connected_components(g: SignedGraph) -> List[Tuple[int, ...]]:
    """連通分量（各自依 BFS 順序）"""
    return list(spanning_forest(g).components)


def is_connected(g: SignedGraph) -> bool:
    return g.n > 0 and len(spanning_forest(g).components) == 1


def _switching_labels(g: SignedGraph, forest: Optional[Forest] = None) -> List[int]:
    """沿生成森林傳遞 ±1 標記，使樹邊在切換後皆為正"""
    forest = forest or spanning_forest(g)
    label = [1] * g.n
    for comp in forest.components:
        for v in comp[1:]:
            p = forest.parent[v]
            label[v] = label[p] * g.sign(p, v)
    return label


# === 平衡與標準簽名 ===

def is_balanced(g: SignedGraph) -> bool:
    """每個圈都是正圈"""
    label = _switching_labels(g)
    return all(
        ((g.negative >> k) & 1) == (label[i] != label[j])
        for k, (i, j) in enumerate(g.edges)
    )


def cycle_sign(g: SignedGraph, cycle: Sequence[int]) -> int:
    """閉合走訪上的邊號乘積；首尾相同時視為已閉合"""
    walk = list(cycle)
    if len(walk) > 1 and walk[0] == walk[-1]:
        walk.pop()
    if len(walk) < 2:
        raise DomainError("圈至少需要兩個頂點")
    product = 1
    for a, b in zip(walk, walk[1:] + walk[:1]):
        _check_vertex(g, a)
        product *= g.sign(a, b)
    return product


def canonical_switching_set(g: SignedGraph) -> VertexSet:
    """切換到標準簽名所用的頂點集合"""
    return frozenset(v for v, s in enumerate(_switching_labels(g)) if s < 0)


def canonical_signature(g: SignedGraph) -> SignedGraph:
    """切換等價類的代表：標準生成森林全為正邊"""
    return switch(g, canonical_switching_set(g))


def _same_underlying(g1: SignedGraph, g2: SignedGraph) -> None:
    if g1.n != g2.n or g1.edges != g2.edges:
        raise DomainError("兩個帶號圖的底圖（含標號）不同")


def switching_equivalent(g1: SignedGraph, g2: SignedGraph) -> bool:
    """同一標號底圖上的兩個簽名是否切換等價"""
    _same_underlying(g1, g2)
    return canonical_signature(g1).negative == canonical_signature(g2).negative


def switching_set(g1: SignedGraph, g2: SignedGraph) -> Optional[VertexSet]:
    """回傳 U 使 switch(g1, U) == g2；不等價時回傳 None"""
    if not switching_equivalent(g1, g2):
        return None
    return canonical_switching_set(g1) ^ canonical_switching_set(g2)


# === 切換同構標準形 ===

def _edge_negative_triangles(g: SignedGraph) -> Dict[Edge, int]:
    """每條邊所在的負三角形數（切換不變量）"""
    counts = {}
    for i, j in g.edges:
        s = g.sign(i, j)
        c = 0
        for w in iter_bits(g.adj_masks[i] & g.adj_masks[j]):
            if s * g.sign(i, w) * g.sign(j, w) < 0:
                c += 1
        counts[(i, j)] = c
    return counts


def _ranked(keys: Sequence) -> List[int]:
    ranks = {c: r for r, c in enumerate(sorted(set(keys)))}
    return [ranks[c] for c in keys]


def _cells(color: Sequence[int]) -> List[List[int]]:
    cells: Dict[int, List[int]] = {}
    for v, c in enumerate(color):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def _common_prefix(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    return k


class _Leaf(NamedTuple):
    key: Tuple[int, int]
    order: List[int]
    path: List[int]
    graph: SignedGraph


class _Canonizer:
    """個體化 + 細分的搜尋樹，以已找到的切換自同構剪枝

    葉節點的鍵為 (底圖鍵, 標準簽名遮罩)，標準形取所有葉節點中鍵最小者。
    兩個葉節點的鍵相同時，對應的頂點置換是切換自同構：
    同軌道的分支略過，與第一個或目前最佳葉節點等價的子樹直接跳回分歧處。
    """

    def __init__(self, g: SignedGraph):
        self.g = g
        self.nbrs = [sorted(iter_bits(mask)) for mask in g.adj_masks]
        tri = _edge_negative_triangles(g)
        self.ecolor = [{w: tri[(min(v, w), max(v, w))] for w in self.nbrs[v]}
                       for v in range(g.n)]
        self.nodes = 0
        self.first: Optional[_Leaf] = None
        self.best: Optional[_Leaf] = None
        self.generators: List[List[int]] = []

    def initial_colors(self) -> List[int]:
        raw = [(len(self.nbrs[v]), sum(self.ecolor[v].values())) for v in range(self.g.n)]
        return self.refine(_ranked(raw))

    def refine(self, color: List[int]) -> List[int]:
        """等價細分；新格依不變量排序，原有格的先後不變"""
        while True:
            raw = [(color[v], tuple(sorted((self.ecolor[v][w], color[w]) for w in self.nbrs[v])))
                   for v in range(self.g.n)]
            refined = _ranked(raw)
            if len(set(refined)) == len(set(color)):
                return color
            color = refined

    def run(self) -> SignedGraph:
        self._visit(self.initial_colors(), [])
        return self.best.graph

    def _visit(self, color: List[int], path: List[int]) -> Optional[int]:
        self.nodes += 1
        if self.nodes > MAX_CANONICAL_NODES:
            raise CapabilityError(f"標準形搜尋樹超過 {MAX_CANONICAL_NODES} 個節點")
        cells = _cells(color)
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            return self._leaf([c[0] for c in cells], path)
        explored: List[int] = []
        for v in target:
            if explored and self._same_orbit(v, explored, path):
                continue
            explored.append(v)
            individualized = _ranked([(color[u], u != v) for u in range(self.g.n)])
            jump = self._visit(self.refine(individualized), path + [v])
            if jump is not None and jump < len(path):
                return jump
        return None

    def _leaf(self, order: List[int], path: List[int]) -> Optional[int]:
        h = relabel(self.g, order)
        c = canonical_signature(h)
        leaf = _Leaf((_underlying_key(h.n, h.edges), c.negative), order, path, c)
        if self.first is None:
            self.first = self.best = leaf
            return None
        for ref in (self.first, self.best):
            if leaf.key == ref.key:
                gamma = [0] * self.g.n
                for a, b in zip(ref.order, order):
                    gamma[a] = b
                self.generators.append(gamma)
                return _common_prefix(ref.path, path)
        if leaf.key < self.best.key:
            self.best = leaf
        return None

    def _same_orbit(self, v: int, explored: List[int], path: List[int]) -> bool:
        """v 是否與已展開的頂點同屬固定 path 的自同構軌道"""
        root = list(range(self.g.n))

        def find(x: int) -> int:
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

        for gamma in self.generators:
            if any(gamma[p] != p for p in path):
                continue
            for a, b in enumerate(gamma):
                ra, rb = find(a), find(b)
                if ra != rb:
                    root[ra] = rb
        target = find(v)
        return any(find(u) == target for u in explored)


def refined_cells(g: SignedGraph) -> List[List[int]]:
    """以切換不變量做顏色細分，回傳依顏色排序的頂點格"""
    return _cells(_Canonizer(g).initial_colors())


def _underlying_key(n: int, edges: Sequence[Edge]) -> int:
    index = pair_index(n)
    key = 0
    for e in edges:
        key |= 1 << index[e]
    return key


def canonical_form(g: SignedGraph) -> SignedGraph:
    """切換同構類的標準代表（重新編號 + 標準簽名）"""
    return _Canonizer(g).run()


def canonical_sg6(g: SignedGraph) -> str:
    """標準形的 sg6 字串"""
    return encode_sg6(canonical_form(g))


def switching_isomorphic(g1: SignedGraph, g2: SignedGraph) -> bool:
    """是否存在頂點對應使兩圖切換等價"""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(map(int.bit_count, g1.adj_masks)) != sorted(map(int.bit_count, g2.adj_masks)):
        return False
    return canonical_form(g1) == canonical_form(g2)


# === sg6 格式 ===

def encode_sg6(g: SignedGraph) -> str:
    """<graph6>:<hex>，hex 為字典序邊的負號位元（高位在前，補零至 ⌈m/4⌉ 位）"""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    g6 = nx.to_graph6_bytes(G, header=False).decode("ascii").strip()
    digits = -(-g.m // 4)
    if digits == 0:
        return f"{g6}:"
    bits = "".join("1" if (g.negative >> k) & 1 else "0" for k in range(g.m))
    bits = bits.ljust(4 * digits, "0")
    return f"{g6}:{int(bits, 2):0{digits}x}"


def decode_sg6(text: str) -> SignedGraph:
    """解析一行 sg6"""
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if ":" not in line:
        raise ParseError("sg6 缺少 ':' 分隔", position=len(line))
    if line.count(":") > 1:
        raise ParseError("sg6 只能含一個 ':'", position=line.index(":", line.index(":") + 1))
    g6, hexpart = line.split(":")
    if not g6:
        raise ParseError("缺少 graph6 欄位", position=0)
    for pos, ch in enumerate(g6):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"graph6 欄位含非法字元 {ch!r}", position=pos)
    try:
        G = nx.from_graph6_bytes(g6.encode("ascii"))
    except (nx.NetworkXError, ValueError) as e:
        raise ParseError(f"graph6 欄位無法解析: {e}", position=0) from e
    n = G.number_of_nodes()
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in G.edges))
    start = len(g6) + 1
    digits = -(-len(edges) // 4)
    if not _HEX.fullmatch(hexpart):
        bad = next(k for k, ch in enumerate(hexpart) if ch not in "0123456789abcdefABCDEF")
        raise ParseError("sign-bit 欄位含非十六進位字元", position=start + bad)
    if len(hexpart) != digits:
        raise ParseError(f"sign-bit 欄位長度錯誤：需要 {digits} 位，收到 {len(hexpart)} 位",
                         position=start)
    mask = 0
    if digits:
        bits = format(int(hexpart, 16), f"0{4 * digits}b")
        if "1" in bits[len(edges):]:
            raise ParseError("sign-bit 欄位的補零位元不為 0", position=start + len(hexpart) - 1)
        for k, b in enumerate(bits[:len(edges)]):
            if b == "1":
                mask |= 1 << k
    return SignedGraph(n, edges, mask)


def read_sg6(lines: Iterable[str]) -> List[SignedGraph]:
    """讀取多行 sg6；空行與 # 註解略過，錯誤帶行號"""
    graphs = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            graphs.append(decode_sg6(line))
        except ParseError as e:
            raise e.at_line(lineno) from e
    return graphs


def write_sg6(graphs: Iterable[SignedGraph]) -> str:
    return "".join(encode_sg6(g) + "\n" for g in graphs)
