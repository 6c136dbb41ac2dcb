"""
測試 Toolkit 客戶端
"""

import math

import pytest

from sgx.config import RunConfig
from sgx.constructions import gamma
from sgx.errors import DomainError
from sgx.sgraph import SignedGraph
from sgx.toolkit import Toolkit, check_report, construct_graph, count_uk4_report


@pytest.fixture
def kit():
    return Toolkit(RunConfig())


def test_construct(kit):
    doc = kit.construct("gamma", s=2, n=4)
    assert doc["schema"] == 1
    assert doc["sg6"] == "C~:20"
    assert doc["params"] == {"s": 2, "n": 4}
    assert doc["negative_edges"] == [[0, 3]]
    assert kit.construct("complete-pos", n=4)["sg6"] == "C~:00"


def test_construct_errors():
    with pytest.raises(DomainError):
        construct_graph("petersen", n=10)
    with pytest.raises(DomainError, match="缺少參數"):
        construct_graph("sigma", k=1, n=10)


def test_spectrum(kit):
    doc = kit.spectrum("C~:20")
    assert doc["index"] == pytest.approx(math.sqrt(5))
    assert doc["balanced"] is False
    assert doc["eigenvalues"] == pytest.approx([math.sqrt(5), 1, -1, -math.sqrt(5)])


def test_check_counts():
    doc = check_report(gamma(2, 6), "tk4_free(2)")
    assert doc["free"] is True
    assert doc["count"] == 1
    assert doc["warnings"] == []
    assert check_report(gamma(2, 6), "kr_free(4)")["count"] == 1
    assert check_report(gamma(2, 6), "c3_free")["count"] == 2


def test_check_warns_on_balanced_input():
    doc = check_report(SignedGraph.complete(4), "tk4_free(1)")
    assert doc["unbalanced"] is False
    assert doc["warnings"] == ["input is balanced"]


def test_count_uk4():
    doc = count_uk4_report(gamma(3, 6))
    assert doc["count"] == 3
    assert doc["cliques"] == [[0, 1, 2, 5], [0, 1, 3, 5], [0, 2, 3, 5]]
    assert count_uk4_report(SignedGraph.complete(3))["count"] == 0


def test_canon_and_switch(kit):
    assert kit.canon("C~:20")["canonical"] == "C~:04"
    doc = kit.switch("C~:20", [3, 3])
    assert doc["set"] == [3]
    assert doc["sg6"] == "C~:0c"


def test_search_and_verify(kit):
    cert = kit.search(n=4)
    assert cert["spec"]["prune"] is False
    assert cert["best_value"] == pytest.approx(math.sqrt(5))
    assert kit.verify_certificate(cert)["ok"] is True
    cert["best_value"] = 3.0
    assert kit.verify_certificate(cert)["ok"] is False


def test_structure(kit):
    doc = kit.structure(gamma(2, 8), 2)
    assert doc["schema"] == 1
    assert doc["common_neighbors_ok"] is True


def test_verify_suite_uses_config():
    kit = Toolkit(RunConfig(eq_tol=1e-7))
    doc = kit.verify_suite("2.1", n_min=5, n_max=6)
    assert doc["passed"] is True
    assert doc["suite"] == "2.1"
