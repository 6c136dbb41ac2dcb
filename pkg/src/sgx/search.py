"""
小階數不平衡帶號圖的極值搜尋

底圖依固定大小的區段切分，每個區段由工作行程獨立掃描：
每個底圖只列舉切換類代表（標準生成森林全正），
沿餘樹邊回溯並即時檢查族條件，以批次 eigvalsh 計算目標值。
剪枝只使用靜態種子下界與區段內的最佳值，因此結果與工作行程數無關。
"""

import hashlib
import itertools
import json
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool, Value
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from .constructions import Construction, feasible_seed, gamma, predicted_extremal, r_of_t
from .errors import DomainError, GuardError
from .forbidden import Family, enumerate_cliques
from .sgraph import (
    SignedGraph,
    all_pairs,
    canonical_form,
    canonical_sg6,
    decode_sg6,
    is_balanced,
    is_connected,
    spanning_forest,
    switching_isomorphic,
)
from .spectra import index as graph_index, nonneg_switching, spectrum

logger = logging.getLogger(__name__)


# === 基礎設定 ===
SCHEMA_VERSION = 1
OBJECTIVES = ("index", "spectral_radius")
MAX_ORDER = 8
MAX_EXHAUSTIVE_ORDER = 6
CHUNK_SIZE = 2048
BATCH_SIZE = 512
TIE_TOL = 1e-9
PRUNE_TOL = 1e-9
SEED_MARGIN = 1e-6
VALUE_TOL = 1e-8


@dataclass(frozen=True)
class SearchSpec:
    """搜尋設定；jobs 與 checkpoint_path 不影響結果"""

    n: int
    objective: str = "index"
    family: Family = field(default_factory=lambda: Family("all_unbalanced"))
    connected_only: bool = False
    prune: bool = False
    jobs: int = 1
    checkpoint_path: Optional[str] = None
    dedup: bool = False

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"n 必須 ≥ 3，收到 {self.n}")
        if self.objective not in OBJECTIVES:
            raise DomainError(f"未知目標: {self.objective}")
        if self.jobs < 1:
            raise DomainError(f"jobs 必須 ≥ 1，收到 {self.jobs}")
        if isinstance(self.family, str):
            object.__setattr__(self, "family", Family.parse(self.family))

    def to_dict(self) -> Dict[str, Any]:
        """憑證中回顯的語意欄位"""
        return {
            "n": self.n,
            "objective": self.objective,
            "family": str(self.family),
            "connected_only": self.connected_only,
            "prune": self.prune,
            "dedup": self.dedup,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SearchSpec":
        return cls(
            n=int(data["n"]),
            objective=data.get("objective", "index"),
            family=Family.parse(data.get("family", "all_unbalanced")),
            connected_only=bool(data.get("connected_only", False)),
            prune=bool(data.get("prune", False)),
            dedup=bool(data.get("dedup", False)),
        )

    def checksum(self) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


@dataclass
class SearchCertificate:
    """可獨立驗證的搜尋結果"""

    spec: Dict[str, Any]
    best_value: float
    witness: str
    tied_witnesses: List[str]
    classes_examined: int
    labeled_graphs_examined: int
    underlying_pruned: int
    witness_checks: Dict[str, bool]
    matches_construction: Optional[Dict[str, Any]]
    structure: Optional[Dict[str, Any]]
    wall_seconds: float
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": self.schema,
            "spec": self.spec,
            "best_value": self.best_value,
            "witness": self.witness,
            "tied_witnesses": list(self.tied_witnesses),
            "classes_examined": self.classes_examined,
            "labeled_graphs_examined": self.labeled_graphs_examined,
            "underlying_pruned": self.underlying_pruned,
            "witness_checks": self.witness_checks,
            "matches_construction": self.matches_construction,
            "structure": self.structure,
            "wall_seconds": self.wall_seconds,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SearchCertificate":
        try:
            return cls(
                spec=dict(data["spec"]),
                best_value=float(data["best_value"]),
                witness=str(data["witness"]),
                tied_witnesses=list(data.get("tied_witnesses", [])),
                classes_examined=int(data.get("classes_examined", 0)),
                labeled_graphs_examined=int(data.get("labeled_graphs_examined", 0)),
                underlying_pruned=int(data.get("underlying_pruned", 0)),
                witness_checks=dict(data.get("witness_checks", {})),
                matches_construction=data.get("matches_construction"),
                structure=data.get("structure"),
                wall_seconds=float(data.get("wall_seconds", 0.0)),
                schema=int(data.get("schema", SCHEMA_VERSION)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"憑證格式錯誤: {e}") from e

    @classmethod
    def from_json(cls, text: str) -> "SearchCertificate":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise DomainError(f"憑證不是合法 JSON: {e}") from e


# === 目標函數 ===

def objective_value(g: SignedGraph, objective: str) -> float:
    spec = spectrum(g)
    return spec.index if objective == "index" else spec.spectral_radius


def underlying_upper_bound(underlying: SignedGraph) -> float:
    """全正簽名的 λ_1，為任一簽名 λ_1 與 ρ 的上界"""
    if underlying.m == 0:
        return 0.0
    return graph_index(underlying.underlying())


def stanley_bound(m: int) -> float:
    """m 條邊的圖 λ_1 ≤ (−1 + √(1+8m)) / 2"""
    return (-1 + math.sqrt(1 + 8 * m)) / 2


# === 切換類列舉 ===

class _SignatureSpace:
    """底圖上的餘樹邊回溯，族條件在其邊全部決定時檢查"""

    def __init__(self, g: SignedGraph, family: Family):
        self.g = g
        self.family = family
        forest = spanning_forest(g)
        self.components = len(forest.components)
        self.free = [k for k in range(g.m) if not (forest.tree >> k) & 1]
        position = {k: p for p, k in enumerate(self.free)}
        # 每個位置完成的檢查：(三角形遮罩們, 種類)
        self.checks: List[List[Tuple[int, ...]]] = [[] for _ in self.free]
        self.k4_limit = None
        if family.kind == "c3_free":
            triangles = enumerate_cliques(g, 3) if g.n >= 3 else []
            self._attach(triangles, position)
        elif family.kind == "kr_free":
            if g.n >= family.param:
                inside = set()
                for clique in enumerate_cliques(g, family.param):
                    inside.update(frozenset(t) for t in itertools.combinations(sorted(clique), 3))
                self._attach(sorted(inside, key=sorted), position)
        elif family.kind == "tk4_free":
            self.k4_limit = family.param - 1
            if g.n >= 4:
                self._attach(enumerate_cliques(g, 4), position)

    def _triangle_mask(self, tri: Sequence[int]) -> int:
        a, b, c = tri
        idx = self.g.edge_index
        return (1 << idx[(a, b)]) | (1 << idx[(a, c)]) | (1 << idx[(b, c)])

    def _attach(self, structures, position: Dict[int, int]) -> None:
        for s in structures:
            members = sorted(s)
            tris = tuple(self._triangle_mask(t) for t in itertools.combinations(members, 3))
            span = 0
            for t in tris:
                span |= t
            slots = [position[k] for k in range(self.g.m) if (span >> k) & 1 and k in position]
            if slots:
                self.checks[max(slots)].append(tris)

    @property
    def dimension(self) -> int:
        return len(self.free)

    def masks(self, unbalanced_only: bool = True) -> Iterator[int]:
        """符合族條件的負邊遮罩（以底圖邊索引為位元）"""
        free, checks, limit = self.free, self.checks, self.k4_limit
        depth = len(free)

        def negative(tris: Tuple[int, ...], mask: int) -> bool:
            return any((mask & t).bit_count() & 1 for t in tris)

        def walk(p: int, mask: int, count: int) -> Iterator[int]:
            if p == depth:
                if mask or not unbalanced_only:
                    yield mask
                return
            for bit in (0, 1):
                m2 = mask | (bit << free[p])
                c2 = count
                ok = True
                for tris in checks[p]:
                    if negative(tris, m2):
                        if limit is None:
                            ok = False
                            break
                        c2 += 1
                        if c2 > limit:
                            ok = False
                            break
                if ok:
                    yield from walk(p + 1, m2, c2)

        yield from walk(0, 0, 0)


def enumerate_switching_classes(underlying: SignedGraph) -> Iterator[SignedGraph]:
    """每個切換類恰好產生一個代表（共 2^(m−n+c) 個）"""
    g = underlying.underlying()
    space = _SignatureSpace(g, Family("all_unbalanced"))
    for mask in space.masks(unbalanced_only=False):
        yield SignedGraph(g.n, g.edges, mask)


def iter_signed_graphs(n: int) -> Iterator[SignedGraph]:
    """所有 3^C(n,2) 個標號帶號圖（每對頂點：無邊、正、負）"""
    pairs = all_pairs(n)
    for choice in itertools.product((0, 1, -1), repeat=len(pairs)):
        edges = [p for p, c in zip(pairs, choice) if c]
        negative = [p for p, c in zip(pairs, choice) if c < 0]
        yield SignedGraph.from_edges(n, edges, negative)


# === 底圖序列 ===

def _nth_combination(pool: int, r: int, index: int) -> List[int]:
    """range(pool) 的 r-組合中字典序第 index 個"""
    c = math.comb(pool, r)
    result = []
    n = pool
    while r:
        c, n, r = c * r // n, n - 1, r - 1
        while index >= c:
            index -= c
            c, n = c * (n - r) // n, n - 1
        result.append(pool - 1 - n)
    return result


def _next_combination(combo: List[int], pool: int) -> bool:
    r = len(combo)
    i = r - 1
    while i >= 0 and combo[i] == i + pool - r:
        i -= 1
    if i < 0:
        return False
    combo[i] += 1
    for j in range(i + 1, r):
        combo[j] = combo[j - 1] + 1
    return True


@dataclass(frozen=True)
class UnderlyingStream:
    """底圖的列舉順序

    by_edges=False：鄰接遮罩遞增；by_edges=True：先依邊數（≥ m_min）再依組合字典序。
    """

    n: int
    by_edges: bool = False
    m_min: int = 0

    @property
    def pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    def __len__(self) -> int:
        if not self.by_edges:
            return 1 << self.pairs
        return sum(math.comb(self.pairs, m) for m in range(self.m_min, self.pairs + 1))

    def slice(self, start: int, end: int) -> Iterator[int]:
        if not self.by_edges:
            yield from range(start, end)
            return
        total = self.pairs
        offset = start
        m = self.m_min
        while m <= total and offset >= math.comb(total, m):
            offset -= math.comb(total, m)
            m += 1
        remaining = end - start
        while remaining > 0 and m <= total:
            combo = _nth_combination(total, m, offset)
            while remaining > 0:
                mask = 0
                for k in combo:
                    mask |= 1 << k
                yield mask
                remaining -= 1
                if not _next_combination(combo, total):
                    break
            m += 1
            offset = 0


def _graph_from_mask(n: int, mask: int) -> SignedGraph:
    pairs = all_pairs(n)
    return SignedGraph(n, tuple(pairs[k] for k in range(len(pairs)) if (mask >> k) & 1), 0)


def _is_canonical_underlying(g: SignedGraph) -> bool:
    return canonical_form(g).edges == g.edges


# === 區段掃描 ===

@dataclass
class ChunkResult:
    start: int
    end: int
    best: Optional[float] = None
    candidates: List[Tuple[float, str]] = field(default_factory=list)
    classes: int = 0
    labeled: int = 0
    pruned: int = 0

    @property
    def witness(self) -> Optional[str]:
        if not self.candidates:
            return None
        return min(sg6 for _, sg6 in self.candidates)


@dataclass(frozen=True)
class _ChunkTask:
    n: int
    objective: str
    family: Family
    connected_only: bool
    prune: bool
    dedup: bool
    stream: UnderlyingStream
    start: int
    end: int
    seed_cutoff: Optional[float]


def _evaluate(g: SignedGraph, masks: List[int], objective: str) -> np.ndarray:
    rows = np.array([i for i, _ in g.edges])
    cols = np.array([j for _, j in g.edges])
    bits = (np.array(masks, dtype=np.int64)[:, None] >> np.arange(g.m)) & 1
    signs = 1.0 - 2.0 * bits
    a = np.zeros((len(masks), g.n, g.n))
    a[:, rows, cols] = signs
    a[:, cols, rows] = signs
    vals = np.linalg.eigvalsh(a)
    if objective == "index":
        return vals[:, -1]
    return np.maximum(vals[:, -1], -vals[:, 0])


# 跨行程共享的最佳值（只增不減），由 Pool initializer 設定
_shared_best = None


def _init_worker(cell) -> None:
    global _shared_best
    _shared_best = cell


def _publish(value: float) -> None:
    if _shared_best is None:
        return
    with _shared_best.get_lock():
        if value > _shared_best.value:
            _shared_best.value = value


def scan_chunk(task: _ChunkTask) -> ChunkResult:
    """掃描一個底圖區段，回傳區段內的最佳值與並列候選

    低於種子下界的底圖計入 pruned；低於區段或共享最佳值的底圖只列舉不計算特徵值，
    使計數與行程數及完成順序無關。
    """
    result = ChunkResult(task.start, task.end)
    raw: List[Tuple[float, SignedGraph]] = []
    best = -math.inf
    seed = -math.inf if task.seed_cutoff is None else task.seed_cutoff

    def cutoff() -> float:
        shared = -math.inf if _shared_best is None else _shared_best.value
        return max(seed, best, shared)

    for mask in task.stream.slice(task.start, task.end):
        g = _graph_from_mask(task.n, mask)
        forest = spanning_forest(g)
        c = len(forest.components)
        if g.m - g.n + c == 0:
            continue
        if task.connected_only and c != 1:
            continue
        if task.dedup and not _is_canonical_underlying(g):
            continue
        bound = underlying_upper_bound(g) if task.prune else math.inf
        if bound < seed - PRUNE_TOL:
            result.pruned += 1
            continue
        space = _SignatureSpace(g, task.family)
        per_class = 1 << (g.n - c)
        masks_iter = space.masks()
        if bound < cutoff() - PRUNE_TOL:
            count = sum(1 for _ in masks_iter)
            result.classes += count
            result.labeled += count * per_class
            continue
        while True:
            batch = list(itertools.islice(masks_iter, BATCH_SIZE))
            if not batch:
                break
            values = _evaluate(g, batch, task.objective)
            result.classes += len(batch)
            result.labeled += len(batch) * per_class
            top = float(values.max())
            if top > best:
                best = top
                raw = [(v, sg) for v, sg in raw if v >= best - TIE_TOL]
                _publish(best)
            for k in np.flatnonzero(values >= best - TIE_TOL):
                raw.append((float(values[k]), SignedGraph(g.n, g.edges, batch[k])))
    if raw:
        result.best = best
        result.candidates = sorted({(v, canonical_sg6(sg)) for v, sg in raw})
    logger.debug("區段 [%d, %d) 完成：classes=%d pruned=%d best=%s",
                 task.start, task.end, result.classes, result.pruned, result.best)
    return result


# === 檢查點日誌 ===

class CheckpointJournal:
    """逐行追加的區段完成紀錄

    格式：range_start range_end best_value witness_sg6 spec_checksum
    後接 classes= labeled= pruned= ties=value;sg6,... 與該行的 crc=
    最後一行不完整（寫入中斷）時捨棄並截斷檔案，該區段重新計算；
    中間行損壞則視為錯誤。
    """

    def __init__(self, path: Union[str, Path], checksum: str):
        self.path = Path(path)
        self.checksum = checksum

    @staticmethod
    def _crc(body: str) -> str:
        return hashlib.sha256(body.encode("utf-8")).hexdigest()[:8]

    def _parse(self, line: str) -> Optional[ChunkResult]:
        """解析一行；格式或 crc 不符時回傳 None"""
        body, sep, crc = line.rpartition(" crc=")
        if not sep or crc != self._crc(body):
            return None
        parts = body.split()
        if len(parts) < 5:
            return None
        try:
            extra = dict(p.split("=", 1) for p in parts[5:])
            chunk = ChunkResult(int(parts[0]), int(parts[1]))
            chunk.best = None if parts[2] == "none" else float(parts[2])
            chunk.classes = int(extra.get("classes", 0))
            chunk.labeled = int(extra.get("labeled", 0))
            chunk.pruned = int(extra.get("pruned", 0))
            chunk.candidates = [
                (float(v), sg)
                for v, sg in (item.split(";", 1) for item in extra.get("ties", "").split(",") if item)
            ]
        except ValueError:
            return None
        if parts[4] != self.checksum:
            raise DomainError(f"檢查點屬於不同的搜尋設定（checksum {parts[4]}）")
        return chunk

    def load(self) -> Dict[Tuple[int, int], ChunkResult]:
        done: Dict[Tuple[int, int], ChunkResult] = {}
        if not self.path.exists():
            return done
        lines = self.path.read_bytes().decode("utf-8", errors="replace").splitlines(keepends=True)
        for lineno, line in enumerate(lines, 1):
            last = lineno == len(lines)
            if not line.strip():
                continue
            chunk = self._parse(line.rstrip("\n")) if line.endswith("\n") or not last else None
            if chunk is None:
                if not last:
                    raise DomainError(f"檢查點第 {lineno} 行損壞")
                logger.warning("檢查點最後一行不完整，捨棄後重算該區段")
                with self.path.open("rb+") as f:
                    f.truncate(len("".join(lines[:-1]).encode("utf-8")))
                break
            done[(chunk.start, chunk.end)] = chunk
        logger.info("檢查點已載入 %d 個完成區段", len(done))
        return done

    def append(self, chunk: ChunkResult) -> None:
        best = "none" if chunk.best is None else repr(chunk.best)
        ties = ",".join(f"{v!r};{sg}" for v, sg in chunk.candidates)
        body = (f"{chunk.start} {chunk.end} {best} {chunk.witness or '-'} {self.checksum} "
                f"classes={chunk.classes} labeled={chunk.labeled} pruned={chunk.pruned} ties={ties}")
        with self.path.open("a", encoding="utf-8", newline="") as f:
            f.write(f"{body} crc={self._crc(body)}\n")
            f.flush()


# === 結構檢查 ===

@dataclass
class StructureReport:
    """極值見證圖在非負特徵向量切換後的結構"""

    unbalanced: bool
    connected: Optional[bool] = None
    negative_edges: Optional[int] = None
    r: Optional[int] = None
    common_neighbors: Optional[int] = None
    common_neighbors_ok: Optional[bool] = None
    gamma_isomorphic: Optional[bool] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def verify_extremal_structure(g: SignedGraph, t: int) -> StructureReport:
    """連通性、負邊數、負邊兩端的共同鄰點數是否為 r，以及是否切換同構於 Γ_{r,n}"""
    if is_balanced(g):
        return StructureReport(unbalanced=False, notes=["not unbalanced"])
    switched = nonneg_switching(g).graph
    report = StructureReport(
        unbalanced=True,
        connected=is_connected(switched),
        negative_edges=len(switched.negative_edges),
    )
    r = r_of_t(t)
    if r is None:
        report.notes.append("r not integral, structure check skipped")
        return report
    report.r = r
    if report.negative_edges == 1:
        a, b = switched.negative_edges[0]
        common = switched.adj_masks[a] & switched.adj_masks[b]
        report.common_neighbors = common.bit_count()
        report.common_neighbors_ok = report.common_neighbors == r
    else:
        report.notes.append(f"negative edge count is {report.negative_edges}, not 1")
    report.gamma_isomorphic = r <= g.n - 2 and switching_isomorphic(g, gamma(r, g.n))
    return report


# === 主搜尋 ===

def _expected_construction(spec: SearchSpec) -> Optional[Construction]:
    if spec.objective != "index":
        return None
    fam = spec.family
    if fam.kind == "all_unbalanced":
        return Construction("complete_one_negative", {"n": spec.n})
    if fam.kind == "tk4_free" and fam.param >= 2:
        return predicted_extremal(fam.param, spec.n) if spec.n >= 4 else None
    if fam.kind == "kr_free" and 4 <= fam.param <= spec.n + 1:
        return Construction("gamma", {"s": fam.param - 3, "n": spec.n})
    return None


def _check_guards(spec: SearchSpec) -> None:
    if spec.n > MAX_ORDER:
        raise GuardError("max_order", f"n = {spec.n} > {MAX_ORDER}，不支援此階數的窮舉")
    if not spec.prune and spec.n > MAX_EXHAUSTIVE_ORDER:
        raise GuardError("exhaustive_order",
                         f"n = {spec.n} > {MAX_EXHAUSTIVE_ORDER} 時必須啟用剪枝（prune）")


def plan_chunks(spec: SearchSpec) -> Tuple[UnderlyingStream, Optional[float], List[Tuple[int, int]]]:
    """底圖序列、種子下界與區段切分"""
    seed_cutoff = None
    stream = UnderlyingStream(spec.n)
    if spec.prune:
        m_min = 0
        seed = feasible_seed(spec.family, spec.n)
        if seed is not None:
            seed_cutoff = objective_value(seed.build(), spec.objective) - SEED_MARGIN
            pairs = spec.n * (spec.n - 1) // 2
            while m_min < pairs and stanley_bound(m_min) < seed_cutoff - PRUNE_TOL:
                m_min += 1
            logger.info("種子 %s%s，下界 %.9f，邊數 ≥ %d",
                        seed.name, seed.params, seed_cutoff, m_min)
        stream = UnderlyingStream(spec.n, by_edges=True, m_min=m_min)
    total = len(stream)
    ranges = [(s, min(s + CHUNK_SIZE, total)) for s in range(0, total, CHUNK_SIZE)]
    return stream, seed_cutoff, ranges


def extremal_search(spec: SearchSpec, progress: bool = False) -> SearchCertificate:
    """在族中的不平衡帶號圖裡最大化目標值

    Args:
        spec: 搜尋設定
        progress: 是否在 stderr 顯示 tqdm 進度列
    """
    _check_guards(spec)
    started = time.perf_counter()
    stream, seed_cutoff, ranges = plan_chunks(spec)
    journal = CheckpointJournal(spec.checkpoint_path, spec.checksum()) if spec.checkpoint_path else None
    done = journal.load() if journal else {}
    tasks = [
        _ChunkTask(spec.n, spec.objective, spec.family, spec.connected_only, spec.prune,
                   spec.dedup, stream, s, e, seed_cutoff)
        for s, e in ranges if (s, e) not in done
    ]
    logger.info("搜尋 %s：%d 個區段（%d 個已完成），jobs=%d",
                spec.to_dict(), len(ranges), len(ranges) - len(tasks), spec.jobs)
    results: List[ChunkResult] = [done[r] for r in ranges if r in done]
    cell = Value("d", max((r.best for r in results if r.best is not None), default=-math.inf))
    with tqdm(total=len(ranges), initial=len(ranges) - len(tasks), desc="search",
              unit="chunk", disable=not progress, file=sys.stderr) as bar:
        if spec.jobs > 1 and len(tasks) > 1:
            with Pool(processes=spec.jobs, initializer=_init_worker, initargs=(cell,)) as pool:
                for chunk in pool.imap(scan_chunk, tasks):
                    _record(chunk, results, journal, bar)
        else:
            _init_worker(cell)
            try:
                for task in tasks:
                    _record(scan_chunk(task), results, journal, bar)
            finally:
                _init_worker(None)
    return _finalize(spec, results, time.perf_counter() - started)


def _record(chunk: ChunkResult, results: List[ChunkResult],
            journal: Optional[CheckpointJournal], bar) -> None:
    results.append(chunk)
    if journal:
        journal.append(chunk)
    bar.update(1)


def _finalize(spec: SearchSpec, results: List[ChunkResult], seconds: float) -> SearchCertificate:
    found = [r for r in results if r.best is not None]
    if not found:
        raise DomainError(f"族 {spec.family} 在 n = {spec.n} 沒有符合條件的不平衡成員")
    top = max(r.best for r in found)
    ties = sorted({sg for r in found for v, sg in r.candidates if v >= top - TIE_TOL})
    witness_sg6 = ties[0]
    witness = decode_sg6(witness_sg6)
    best_value = objective_value(witness, spec.objective)
    checks = {
        "unbalanced": not is_balanced(witness),
        "family_free": spec.family.admits(witness),
        "connected": is_connected(witness) or not spec.connected_only,
    }
    expected = _expected_construction(spec)
    matches = None
    if expected is not None:
        matches = {**expected.to_dict(),
                   "switching_isomorphic": switching_isomorphic(witness, expected.build())}
    structure = None
    if spec.family.kind == "tk4_free" and spec.objective == "index" and spec.family.param >= 2:
        structure = verify_extremal_structure(witness, spec.family.param).to_dict()
    cert = SearchCertificate(
        spec=spec.to_dict(),
        best_value=best_value,
        witness=witness_sg6,
        tied_witnesses=ties,
        classes_examined=sum(r.classes for r in results),
        labeled_graphs_examined=sum(r.labeled for r in results),
        underlying_pruned=sum(r.pruned for r in results),
        witness_checks=checks,
        matches_construction=matches,
        structure=structure,
        wall_seconds=round(seconds, 3),
    )
    logger.info("搜尋完成：best=%.12g witness=%s ties=%d", best_value, witness_sg6, len(ties))
    return cert


# === 憑證驗證 ===

@dataclass
class VerificationReport:
    ok: bool
    failures: List[Dict[str, str]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, check: str, message: str) -> None:
        self.ok = False
        self.failures.append({"check": check, "message": message})

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "failures": list(self.failures)}


def verify_certificate(cert: Union[SearchCertificate, Dict[str, Any]]) -> VerificationReport:
    """重新計算見證圖的性質，不重跑搜尋"""
    if isinstance(cert, dict):
        cert = SearchCertificate.from_dict(cert)
    report = VerificationReport(ok=True)
    try:
        spec = SearchSpec.from_dict(cert.spec)
    except DomainError as e:
        report.fail("spec", str(e))
        return report
    try:
        g = decode_sg6(cert.witness)
    except DomainError as e:
        report.fail("witness decode", str(e))
        return report
    if g.n != spec.n:
        report.fail("order mismatch", f"見證圖有 {g.n} 個頂點，設定為 {spec.n}")
        return report
    if is_balanced(g):
        report.fail("not unbalanced", "見證圖是平衡的")
    if not spec.family.admits(g):
        report.fail("family violation", f"見證圖不屬於 {spec.family}")
    if spec.connected_only and not is_connected(g):
        report.fail("connectivity", "見證圖不連通")
    value = objective_value(g, spec.objective)
    if abs(value - cert.best_value) > VALUE_TOL:
        report.fail("objective mismatch", f"重新計算得 {value:.12g}，憑證記載 {cert.best_value:.12g}")
    if cert.tied_witnesses and cert.witness != min(cert.tied_witnesses):
        report.fail("tie-break", "見證圖不是並列者中最小的標準 sg6")
    return report


def lemma_suite(name: str, **params: Any):
    """執行數值驗證套件（見 sgx.lemmas）"""
    from .lemmas import run_suite

    return run_suite(name, **params)
