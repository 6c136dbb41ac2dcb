"""
測試禁止子結構的偵測與計數
"""

import itertools
import math

import numpy as np
import pytest

from sgx.constructions import complete_one_negative, gamma
from sgx.errors import DomainError
from sgx.forbidden import (
    Family,
    balanced_clique_number,
    clique_report,
    contains_unbalanced_ck,
    contains_unbalanced_kr,
    count_unbalanced_k4,
    enumerate_cliques,
    is_tk4_free,
    is_unbalanced_clique,
    negative_triangles,
)
from sgx.sgraph import SignedGraph, induced_subgraph, is_balanced, switch


def _cycle(n, negative=()):
    return SignedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], negative=negative)


def _brute_force_uk4(g):
    count = 0
    for s in itertools.combinations(range(g.n), 4):
        sub = induced_subgraph(g, s)
        if sub.m == 6 and not is_balanced(sub):
            count += 1
    return count


# === 族 ===

def test_family_parse():
    assert Family.parse("kr-free(4)") == Family("kr_free", 4)
    assert Family.parse("tk4_free(2)") == Family("tk4_free", 2)
    assert Family.parse("all-unbalanced") == Family("all_unbalanced")
    assert str(Family("tk4_free", 3)) == "tk4_free(3)"
    with pytest.raises(DomainError):
        Family.parse("bogus")
    with pytest.raises(DomainError):
        Family("tk4_free")
    with pytest.raises(DomainError):
        Family("kr_free", 2)
    with pytest.raises(DomainError):
        Family("c3_free", 3)


# === 團 ===

def test_enumerate_cliques():
    assert len(enumerate_cliques(SignedGraph.complete(5), 4)) == 5
    assert enumerate_cliques(_cycle(5), 3) == []
    assert enumerate_cliques(gamma(2, 5), 4) == [frozenset({0, 1, 2, 3}), frozenset({0, 1, 2, 4})]
    with pytest.raises(DomainError):
        enumerate_cliques(SignedGraph.complete(3), 4)


def test_is_unbalanced_clique():
    assert not is_unbalanced_clique(SignedGraph.complete(4), frozenset(range(4)))
    assert is_unbalanced_clique(gamma(2, 4), frozenset(range(4)))
    two = SignedGraph.from_edges(4, itertools.combinations(range(4), 2),
                                 negative=[(0, 1), (2, 3)])
    assert is_unbalanced_clique(two, frozenset(range(4)))
    with pytest.raises(DomainError):
        is_unbalanced_clique(_cycle(4), frozenset(range(4)))


@pytest.mark.parametrize("r,expected", [(2, 1), (3, 3), (4, 6)])
def test_count_unbalanced_k4_on_gamma(r, expected):
    g = gamma(r, r + 4)
    assert count_unbalanced_k4(g) == expected
    assert _brute_force_uk4(g) == expected


def test_count_unbalanced_k4_on_complete_one_negative():
    for n in (5, 6, 8):
        assert count_unbalanced_k4(complete_one_negative(n)) == math.comb(n - 2, 2)
    assert count_unbalanced_k4(SignedGraph.complete(6)) == 0


def test_is_tk4_free():
    g = gamma(2, 7)
    assert is_tk4_free(g, 2)
    assert not is_tk4_free(g, 1)
    assert is_tk4_free(complete_one_negative(7), math.comb(5, 2) + 1)
    with pytest.raises(DomainError):
        is_tk4_free(g, 0)


def test_contains_unbalanced_kr(unbalanced_c4):
    assert contains_unbalanced_kr(gamma(3, 7), 5)
    assert not contains_unbalanced_kr(gamma(3, 7), 6)
    assert not contains_unbalanced_kr(SignedGraph.complete(6), 4)
    assert not contains_unbalanced_kr(unbalanced_c4, 3)
    with pytest.raises(DomainError):
        contains_unbalanced_kr(unbalanced_c4, 2)


def test_contains_unbalanced_ck(unbalanced_triangle, unbalanced_c4, balanced_c4):
    assert contains_unbalanced_ck(unbalanced_triangle, 3)
    assert contains_unbalanced_ck(unbalanced_c4, 4)
    assert not contains_unbalanced_ck(unbalanced_c4, 3)
    assert not contains_unbalanced_ck(balanced_c4, 4)
    assert contains_unbalanced_ck(gamma(2, 6), 3)
    assert contains_unbalanced_ck(_cycle(5, negative=[(0, 1)]), 5)
    assert not contains_unbalanced_ck(_cycle(5, negative=[(0, 1)]), 4)


def test_negative_triangles():
    assert negative_triangles(gamma(2, 5)) == [(0, 1, 4), (0, 2, 4)]
    assert negative_triangles(SignedGraph.complete(5)) == []


def test_balanced_clique_number():
    assert balanced_clique_number(SignedGraph.complete(5)) == 5
    assert balanced_clique_number(complete_one_negative(4)) == 3
    assert balanced_clique_number(SignedGraph(4, ())) == 1
    assert balanced_clique_number(SignedGraph(0, ())) == 0


def test_family_admits():
    assert Family("tk4_free", 2).admits(gamma(2, 6))
    assert not Family("tk4_free", 2).admits(gamma(3, 6))
    assert Family("kr_free", 5).admits(gamma(2, 6))
    assert not Family("kr_free", 4).admits(gamma(2, 6))
    assert not Family("c3_free").admits(gamma(2, 6))
    assert Family("all_unbalanced").admits(SignedGraph.complete(3))


def test_clique_report():
    report = clique_report(gamma(2, 5), 4)
    assert report.unbalanced_count == 1
    assert report.to_dict()["vertex_sets"] == [[0, 1, 2, 3], [0, 1, 2, 4]]
    assert report.to_dict()["unbalanced_flags"] == [False, True]


# === 隨機與全列舉性質 ===

@pytest.mark.parametrize("n", [4, 5])
def test_clique_unbalanced_iff_negative_triangle(n):
    k = SignedGraph.complete(n)
    for mask in range(1 << k.m):
        g = SignedGraph(n, k.edges, mask)
        has_negative_triangle = bool(negative_triangles(g))
        assert is_unbalanced_clique(g, frozenset(range(n))) == has_negative_triangle
        assert is_balanced(g) == (not has_negative_triangle)


def test_unbalanced_k4_count_is_switching_invariant(random_signed_graphs):
    rng = np.random.default_rng(3)
    for g in random_signed_graphs:
        count = count_unbalanced_k4(g)
        for _ in range(4):
            h = switch(g, [v for v in range(g.n) if rng.random() < 0.5])
            assert count_unbalanced_k4(h) == count
            assert len(negative_triangles(h)) == len(negative_triangles(g))
