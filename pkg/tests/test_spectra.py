"""
測試特徵值求解、特徵多項式與等價劃分
"""

import itertools
import math

import numpy as np
import pytest

from sgx.constructions import f_poly, gamma, gamma_partition, h_poly, q_sigma
from sgx.errors import CapabilityError, DomainError
from sgx.sgraph import SignedGraph, adjacency_matrix, negate, switch
from sgx.spectra import (
    EquitablePartition,
    RealPolynomial,
    char_poly,
    eigen_symmetric,
    index,
    is_equitable,
    is_submultiset,
    largest_real_root,
    leading_eigenpair,
    multiset_equal,
    nonneg_switching,
    quotient,
    rayleigh,
    spectral_radius,
    spectrum,
)

SQRT5 = math.sqrt(5)


# === 特徵值 ===

def test_complete_graph_spectrum():
    spec = spectrum(SignedGraph.complete(5))
    assert spec.index == pytest.approx(4)
    assert spec.spectral_radius == pytest.approx(4)
    assert spec.multiplicities() == [(pytest.approx(4), 1), (pytest.approx(-1), 4)]


def test_one_negative_k4():
    spec = spectrum(gamma(2, 4))
    assert spec.tolist() == pytest.approx([SQRT5, 1, -1, -SQRT5])
    assert index(gamma(2, 4)) == pytest.approx(SQRT5)
    assert spectral_radius(gamma(2, 4)) == pytest.approx(SQRT5)


def test_negated_triangle():
    assert spectrum(negate(SignedGraph.complete(3))).tolist() == pytest.approx([1, 1, -2])


@pytest.mark.parametrize("g", [gamma(1, 5), gamma(3, 6), SignedGraph.complete(4)])
def test_trace_identities(g):
    values = np.array(spectrum(g).tolist())
    assert abs(values.sum()) <= 1e-6
    assert (values ** 2).sum() == pytest.approx(2 * g.m, abs=1e-6)


def test_jacobi_agrees_with_lapack():
    g = gamma(3, 7)
    lapack = spectrum(g, vectors=True)
    jacobi = spectrum(g, vectors=True, method="jacobi")
    assert jacobi.tolist() == pytest.approx(lapack.tolist(), abs=1e-8)
    a = adjacency_matrix(g)
    residual = np.abs(a @ jacobi.vectors - jacobi.vectors * jacobi.values).max()
    assert residual <= 1e-8


def test_eigen_symmetric_rejects_bad_input():
    with pytest.raises(DomainError):
        eigen_symmetric([[0, 1], [0, 0]])
    with pytest.raises(DomainError):
        eigen_symmetric([[1, 2, 3]])
    with pytest.raises(DomainError):
        eigen_symmetric([[1]], method="qr")
    with pytest.raises(DomainError):
        spectrum(SignedGraph(0, ()))


def test_leading_eigenpair():
    pair = leading_eigenpair(SignedGraph.complete(3))
    assert pair.value == pytest.approx(2)
    assert pair.vector.tolist() == pytest.approx([1 / math.sqrt(3)] * 3)

    edge = SignedGraph.from_edges(2, [(0, 1)], negative=[(0, 1)])
    pair = leading_eigenpair(edge)
    assert pair.value == pytest.approx(1)
    assert pair.vector.tolist() == pytest.approx([1 / math.sqrt(2), -1 / math.sqrt(2)])


def test_gamma_one_index():
    assert index(gamma(1, 5)) == pytest.approx(3)


def test_nonneg_switching(unbalanced_triangle):
    result = nonneg_switching(unbalanced_triangle)
    assert result.pair.value == pytest.approx(1)
    assert (result.pair.vector >= 0).all()
    a = adjacency_matrix(result.graph)
    assert a @ result.pair.vector == pytest.approx(result.pair.vector, abs=1e-9)
    assert index(result.graph) == pytest.approx(1)


def test_rayleigh():
    a = adjacency_matrix(SignedGraph.complete(3))
    assert rayleigh(a, [1, 1, 1]) == pytest.approx(2)
    with pytest.raises(DomainError):
        rayleigh(a, [0, 0, 0])


# === 多項式 ===

def test_real_polynomial_basics():
    p = f_poly(2, 4)
    assert p.descending() == (1, -1, -5, 5)
    assert p.degree == 3
    assert str(p) == "λ^3 - λ^2 - 5λ + 5"
    assert p(1) == 0
    assert p.derivative().descending() == (3, -2, -5)
    assert RealPolynomial((7,)).derivative() is None
    with pytest.raises(DomainError):
        RealPolynomial((0, 0))


def test_char_poly_exact():
    a = adjacency_matrix(gamma(2, 4), dtype=int)
    assert char_poly(a).descending() == (1, 0, -6, 0, 5)


def test_char_poly_of_sigma_quotient():
    assert char_poly(q_sigma(1, 2, 10).matrix) == h_poly(1, 2, 10)


def test_char_poly_limit():
    with pytest.raises(CapabilityError):
        char_poly(np.zeros((13, 13), dtype=int))


def test_largest_real_root():
    p = f_poly(2, 8)
    assert p.descending() == (1, -5, -9, 17)
    root = largest_real_root(p, 6, 7)
    assert 6 < root < 6.1
    assert abs(p(root)) <= 1e-9 * p.scale()


def test_largest_real_root_without_sign_change():
    p = RealPolynomial.from_descending(1, 0, 1)
    with pytest.raises(DomainError):
        largest_real_root(p, -1, 1)
    with pytest.raises(DomainError):
        largest_real_root(p, 1, 1)


def test_gamma_one_root_is_n_minus_two():
    assert largest_real_root(f_poly(1, 9), 7 - 1e-6, 8) == pytest.approx(7, abs=1e-9)


# === 等價劃分 ===

def test_gamma_partition_quotient():
    g = gamma(2, 5)
    a = adjacency_matrix(g, dtype=np.int64)
    p = gamma_partition(2, 5)
    assert is_equitable(a, p)
    q = quotient(a, p)
    assert q.matrix.tolist() == [
        [0, -1, 2, 0],
        [-1, 0, 2, 1],
        [1, 1, 1, 1],
        [0, 1, 2, 0],
    ]
    top = float(np.max(np.linalg.eigvals(q.matrix.astype(float)).real))
    assert top == pytest.approx(index(g), abs=1e-8)


def test_non_equitable_partition():
    a = adjacency_matrix(gamma(2, 5), dtype=np.int64)
    p = EquitablePartition(((0, 1, 2, 3), (4,)))
    assert not is_equitable(a, p)
    with pytest.raises(DomainError):
        quotient(a, p)


def test_partition_validation():
    with pytest.raises(DomainError):
        EquitablePartition(((0, 1), (1, 2)))
    with pytest.raises(DomainError):
        EquitablePartition(((0,), ()))
    with pytest.raises(DomainError):
        is_equitable(np.eye(3, dtype=int), EquitablePartition(((0, 1),)))


def test_multisets():
    assert is_submultiset([1.0, -1.0], [SQRT5, 1.0, -1.0, -SQRT5])
    assert not is_submultiset([1.0, 1.0], [1.0, 2.0])
    assert multiset_equal([3, -1, -1, -1], [-1, -1, 3, -1 + 1e-10])
    assert not multiset_equal([1, 2], [1, 2, 3])


# === 隨機性質 ===

def _blow_up(rng):
    """各格內外皆為同號完全連接或無邊的帶號圖，回傳 (圖, 劃分)"""
    sizes = [int(x) for x in rng.integers(1, 4, size=int(rng.integers(2, 5)))]
    blocks, start = [], 0
    for size in sizes:
        blocks.append(list(range(start, start + size)))
        start += size
    edges, negative = [], []
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks[i:], start=i):
            sign = int(rng.integers(-1, 2))
            if sign == 0:
                continue
            pairs = itertools.combinations(bi, 2) if i == j else itertools.product(bi, bj)
            for u, v in pairs:
                edges.append((u, v))
                if sign < 0:
                    negative.append((u, v))
    g = SignedGraph.from_edges(start, edges, negative)
    return g, EquitablePartition(tuple(tuple(b) for b in blocks))


def test_spectrum_is_switching_invariant(random_signed_graphs):
    rng = np.random.default_rng(7)
    for g in random_signed_graphs:
        u = [v for v in range(g.n) if rng.random() < 0.5]
        assert np.allclose(spectrum(switch(g, u)).values, spectrum(g).values, atol=1e-9)


def test_negation_swaps_extremes(random_signed_graphs):
    for g in random_signed_graphs:
        assert -spectrum(g).least == pytest.approx(index(negate(g)), abs=1e-9)


def test_rayleigh_never_exceeds_index(random_signed_graphs):
    rng = np.random.default_rng(8)
    for g in random_signed_graphs:
        a = adjacency_matrix(g)
        lam = index(g)
        for _ in range(50):
            assert rayleigh(a, rng.normal(size=g.n)) <= lam + 1e-9


@pytest.mark.parametrize("n", range(5, 13))
def test_gamma_spectrum_from_f(n):
    for s in range(1, n - 1):
        expected = list(np.sort(f_poly(s, n).roots().real)) + [-1.0] * (n - 3)
        assert multiset_equal(expected, spectrum(gamma(s, n)).tolist(), 1e-6)


def test_quotient_eigenvalues_are_eigenvalues():
    rng = np.random.default_rng(9)
    for _ in range(30):
        g, p = _blow_up(rng)
        a = adjacency_matrix(g, dtype=np.int64)
        assert is_equitable(a, p)
        b = quotient(a, p).matrix.astype(float)
        root = np.sqrt([len(block) for block in p.blocks])
        sym = b * root[:, None] / root[None, :]
        values = np.linalg.eigvalsh((sym + sym.T) / 2)
        assert is_submultiset(values, spectrum(g).tolist(), 1e-7)
