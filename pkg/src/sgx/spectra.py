"""
帶號鄰接矩陣的數值線性代數

特徵值求解（LAPACK 或循環 Jacobi）、特徵多項式（Faddeev–LeVerrier）、
Rayleigh 商、等價劃分與商矩陣，以及多項式最大實根的隔離。
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import CapabilityError, ConvergenceError, DomainError
from .sgraph import SignedGraph, VertexSet, adjacency_matrix, switch


# === 基礎設定 ===
DEFAULT_TOL = 1e-10
MAX_SWEEPS = 60
MAX_CHARPOLY_ORDER = 12
# 特徵向量符號慣例：第一個絕對值超過此門檻的座標為正
SIGN_EPS = 1e-9

Number = Union[int, float]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """遞減排列的特徵值 λ_1 ≥ … ≥ λ_n，可附正交特徵向量（按欄）"""

    values: np.ndarray
    vectors: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values.tolist())

    @property
    def index(self) -> float:
        return float(self.values[0])

    @property
    def least(self) -> float:
        return float(self.values[-1])

    @property
    def spectral_radius(self) -> float:
        return max(self.index, -self.least)

    def tolist(self) -> List[float]:
        return self.values.tolist()

    def multiplicities(self, tol: float = 1e-8) -> List[Tuple[float, int]]:
        """將相差不超過 tol 的特徵值合併計數"""
        groups: List[List[float]] = []
        for v in self.values.tolist():
            if groups and abs(groups[-1][-1] - v) <= tol:
                groups[-1].append(v)
            else:
                groups.append([v])
        return [(sum(g) / len(g), len(g)) for g in groups]


@dataclass(frozen=True, eq=False)
class EigenPair:
    """特徵值與單位特徵向量"""

    value: float
    vector: np.ndarray


class NonnegSwitching(NamedTuple):
    u: VertexSet
    graph: SignedGraph
    pair: EigenPair


# === 特徵值求解 ===

def _as_symmetric(matrix) -> np.ndarray:
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"需要方陣，收到形狀 {a.shape}")
    if a.shape[0] < 1:
        raise DomainError("矩陣階數必須 ≥ 1")
    if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
        raise DomainError("矩陣不對稱")
    return a


def jacobi_eigh(a: np.ndarray, tol: float = DEFAULT_TOL,
                max_sweeps: int = MAX_SWEEPS) -> Tuple[np.ndarray, np.ndarray]:
    """循環 Jacobi 旋轉；回傳未排序的 (特徵值, 特徵向量欄)"""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(float(np.max(np.sum(np.abs(a), axis=1))), 1.0)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)))
        if off <= tol * scale:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    off = math.sqrt(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)))
    if off <= tol * scale:
        return np.diag(a).copy(), v
    raise ConvergenceError(f"Jacobi 在 {max_sweeps} 次掃描內未收斂（非對角範數 {off:.3e}）")


def _fix_signs(vecs: np.ndarray) -> np.ndarray:
    for col in range(vecs.shape[1]):
        x = vecs[:, col]
        big = np.flatnonzero(np.abs(x) > SIGN_EPS)
        if big.size and x[big[0]] < 0:
            vecs[:, col] = -x
    return vecs


def eigen_symmetric(matrix, tol: float = DEFAULT_TOL, vectors: bool = False,
                    method: str = "lapack") -> Spectrum:
    """實對稱矩陣的完整特徵分解，特徵值遞減

    Args:
        matrix: 實對稱方陣
        tol: 收斂門檻（Jacobi）與殘差檢查的尺度
        vectors: 是否回傳特徵向量
        method: "lapack"（numpy.linalg.eigh）或 "jacobi"
    """
    if tol <= 0:
        raise DomainError("tol 必須 > 0")
    a = _as_symmetric(matrix)
    if method == "lapack":
        vals, vecs = np.linalg.eigh(a)
    elif method == "jacobi":
        vals, vecs = jacobi_eigh(a, tol)
    else:
        raise DomainError(f"未知求解方法: {method}")
    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    if not vectors:
        return Spectrum(vals)
    vecs = _fix_signs(vecs / np.linalg.norm(vecs, axis=0))
    residual = np.max(np.abs(a @ vecs - vecs * vals))
    bound = 10 * tol * max(float(np.max(np.sum(np.abs(a), axis=1))), 1.0)
    if residual > bound:
        raise ConvergenceError(f"特徵向量殘差 {residual:.3e} 超過 {bound:.3e}")
    return Spectrum(vals, vecs)


def _graph_matrix(g: SignedGraph) -> np.ndarray:
    if g.n < 1:
        raise DomainError("空圖（0 個頂點）沒有譜")
    return adjacency_matrix(g)


def spectrum(g: SignedGraph, vectors: bool = False, method: str = "lapack") -> Spectrum:
    """帶號圖的鄰接譜"""
    return eigen_symmetric(_graph_matrix(g), vectors=vectors, method=method)


def index(g: SignedGraph) -> float:
    """最大特徵值 λ_1"""
    return spectrum(g).index


def spectral_radius(g: SignedGraph) -> float:
    """ρ(Γ) = max(λ_1, −λ_n)"""
    return spectrum(g).spectral_radius


def leading_eigenpair(g: SignedGraph) -> EigenPair:
    """λ_1 與其單位特徵向量（第一個非零座標為正）"""
    spec = spectrum(g, vectors=True)
    return EigenPair(spec.index, spec.vectors[:, 0].copy())


def nonneg_switching(g: SignedGraph) -> NonnegSwitching:
    """切換到 λ_1 具有非負特徵向量的等價圖

    U 取主特徵向量的負座標；切換後的特徵向量即座標絕對值。
    """
    pair = leading_eigenpair(g)
    x = pair.vector
    u = frozenset(int(i) for i in np.flatnonzero(x < -1e-12))
    switched = switch(g, u)
    return NonnegSwitching(u, switched, EigenPair(pair.value, np.abs(x)))


def rayleigh(matrix, x: Sequence[float]) -> float:
    """Rayleigh 商 xᵀAx / xᵀx"""
    a = np.asarray(matrix, dtype=float)
    v = np.asarray(x, dtype=float)
    denom = float(v @ v)
    if denom == 0.0:
        raise DomainError("Rayleigh 商需要非零向量")
    return float(v @ a @ v) / denom


# === 多項式 ===

def _scalar(c) -> Number:
    if isinstance(c, (np.integer, np.floating)):
        c = c.item()
    if isinstance(c, float) and c.is_integer() and abs(c) < 2 ** 53:
        return int(c)
    return c


@dataclass(frozen=True)
class RealPolynomial:
    """實係數多項式，係數由常數項往高次排列"""

    coefficients: Tuple[Number, ...]

    def __post_init__(self):
        coeffs = [_scalar(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            raise DomainError("零多項式沒有首項係數")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_descending(cls, *coeffs: Number) -> "RealPolynomial":
        """由高次往低次給係數"""
        return cls(tuple(reversed(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Number:
        return self.coefficients[-1]

    def descending(self) -> Tuple[Number, ...]:
        return tuple(reversed(self.coefficients))

    def scale(self) -> float:
        """係數的最大絕對值"""
        return float(max(abs(c) for c in self.coefficients))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> Optional["RealPolynomial"]:
        """導數；常數多項式回傳 None"""
        if self.degree == 0:
            return None
        return RealPolynomial(tuple(k * c for k, c in enumerate(self.coefficients) if k))

    def roots(self) -> np.ndarray:
        """所有根（複數陣列）"""
        return np.polynomial.polynomial.polyroots([float(c) for c in self.coefficients])

    def real_roots(self, tol: float = 1e-7) -> np.ndarray:
        r = self.roots()
        return np.sort(r[np.abs(r.imag) <= tol].real)[::-1]

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = "" if (mag == 1 and k) else f"{mag:g}" if isinstance(mag, float) else str(mag)
            var = "" if k == 0 else ("λ" if k == 1 else f"λ^{k}")
            terms.append((sign, body + var))
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def char_poly(matrix) -> RealPolynomial:
    """特徵多項式 det(xI − M)（Faddeev–LeVerrier）

    整數矩陣以 Python 整數精確運算；否則以浮點運算。
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DomainError(f"需要非空方陣，收到形狀 {a.shape}")
    n = a.shape[0]
    if n > MAX_CHARPOLY_ORDER:
        raise CapabilityError(f"特徵多項式僅支援階數 ≤ {MAX_CHARPOLY_ORDER}，收到 {n}")
    integral = np.issubdtype(a.dtype, np.integer) or bool(
        np.all(np.mod(a.astype(float), 1) == 0))
    if integral:
        m = np.array([[int(x) for x in row] for row in a.tolist()], dtype=object)
        eye = np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object)
        work = np.zeros((n, n), dtype=object)
    else:
        m = a.astype(float)
        eye = np.eye(n)
        work = np.zeros((n, n))
    coeffs: List[Number] = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        work = m.dot(work) + coeffs[n - k + 1] * eye
        trace = np.trace(m.dot(work))
        if integral:
            trace = int(trace)
            if trace % k:
                raise ArithmeticError("Faddeev–LeVerrier 出現非整除")
            coeffs[n - k] = -trace // k
        else:
            coeffs[n - k] = -float(trace) / k
    return RealPolynomial(tuple(coeffs))


# === 等價劃分 ===

@dataclass(frozen=True)
class EquitablePartition:
    """頂點劃分 X_1, …, X_k（各格非空且互不相交）"""

    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(v) for v in b)) for b in self.blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise DomainError("劃分的格不可為空")
            if seen.intersection(b):
                raise DomainError("劃分的格必須互不相交")
            seen.update(b)
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def covers(self, n: int) -> bool:
        return sorted(v for b in self.blocks for v in b) == list(range(n))

    def characteristic_matrix(self, n: int) -> np.ndarray:
        """n×k 的 0/1 特徵矩陣 P"""
        p = np.zeros((n, self.k))
        for j, b in enumerate(self.blocks):
            p[list(b), j] = 1
        return p


@dataclass(frozen=True, eq=False)
class QuotientMatrix:
    """等價劃分的商矩陣 B，b_ij 為 X_i 中每個頂點往 X_j 的列和"""

    matrix: np.ndarray
    partition: EquitablePartition

    @property
    def k(self) -> int:
        return self.matrix.shape[0]


def _block_sums(a: np.ndarray, p: EquitablePartition) -> List[List[np.ndarray]]:
    return [[a[np.ix_(bi, bj)].sum(axis=1) for bj in p.blocks] for bi in p.blocks]


def _check_partition(a: np.ndarray, p: EquitablePartition) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"需要方陣，收到形狀 {a.shape}")
    if not p.covers(a.shape[0]):
        raise DomainError("劃分未恰好覆蓋所有頂點")


def is_equitable(matrix, p: EquitablePartition, tol: float = 1e-9) -> bool:
    """每個格對 (X_i, X_j) 的列和在 X_i 內皆相同（整數矩陣精確比較）"""
    a = np.asarray(matrix)
    _check_partition(a, p)
    exact = np.issubdtype(a.dtype, np.integer)
    for row in _block_sums(a, p):
        for sums in row:
            spread = sums.max() - sums.min()
            if (spread != 0) if exact else (spread > tol):
                return False
    return True


def quotient(matrix, p: EquitablePartition, tol: float = 1e-9) -> QuotientMatrix:
    """等價劃分的商矩陣；劃分不等價時拋出 DomainError"""
    a = np.asarray(matrix)
    if not is_equitable(a, p, tol):
        raise DomainError("劃分不是等價劃分")
    sums = _block_sums(a, p)
    b = np.array([[row[j][0] for j in range(p.k)] for row in sums], dtype=a.dtype)
    return QuotientMatrix(b, p)


# === 實根隔離 ===

def _polish(p: RealPolynomial, x: float, lo: float, hi: float) -> float:
    dp = p.derivative()
    if dp is None:
        return x
    for _ in range(3):
        slope = dp(x)
        if slope == 0:
            break
        step = x - p(x) / slope
        if not lo <= step <= hi or abs(p(step)) > abs(p(x)):
            break
        x = step
    return x


def largest_real_root(p: RealPolynomial, lo: float, hi: float,
                      tol: float = 1e-12, samples: int = 2048) -> float:
    """[lo, hi] 中的最大實根

    由 hi 往下掃描找第一個變號區間，二分至寬度 < tol，再做 Newton 修正。
    偶數重根（不變號）無法偵測。
    """
    if not lo < hi:
        raise DomainError(f"需要 lo < hi，收到 [{lo}, {hi}]")
    xs = np.linspace(hi, lo, samples + 1)
    upper, f_upper = float(xs[0]), p(float(xs[0]))
    if f_upper == 0:
        return upper
    for x in xs[1:]:
        lower = float(x)
        f_lower = p(lower)
        if f_lower == 0:
            return lower
        if (f_lower < 0) != (f_upper < 0):
            break
        upper, f_upper = lower, f_lower
    else:
        raise DomainError(f"多項式在 [{lo}, {hi}] 上沒有變號")
    a, b, fa = lower, upper, f_lower
    while b - a > tol:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = p(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    return _polish(p, 0.5 * (a + b), a, b)


def is_submultiset(sub: Iterable[float], sup: Iterable[float], tol: float = 1e-8) -> bool:
    """sub 的每個值都能在 sup 中配到相差 ≤ tol 的相異元素"""
    pool = sorted(float(v) for v in sup)
    used = [False] * len(pool)
    for v in sorted(float(x) for x in sub):
        best, gap = -1, tol
        for k, w in enumerate(pool):
            if used[k]:
                continue
            d = abs(w - v)
            if d <= gap:
                best, gap = k, d
            elif w > v + tol:
                break
        if best < 0:
            return False
        used[best] = True
    return True


def multiset_equal(a: Iterable[float], b: Iterable[float], tol: float = 1e-8) -> bool:
    a, b = list(a), list(b)
    return len(a) == len(b) and is_submultiset(a, b, tol)
