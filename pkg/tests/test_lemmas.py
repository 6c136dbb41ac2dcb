"""
測試數值驗證套件
"""

import pytest

from sgx.errors import DomainError
from sgx.lemmas import SUITES, SuiteReport, run_suite
from sgx.search import lemma_suite


def test_suite_names():
    assert sorted(SUITES) == ["1.2", "1.3", "2.1", "2.2", "2.3", "2.4", "2.6", "2.9", "3.1"]
    with pytest.raises(DomainError):
        run_suite("9.9")


def test_gamma_bounds():
    report = run_suite("2.1", n_min=5, n_max=14)
    assert report.passed
    assert len(report.rows) == sum(n - 2 for n in range(5, 15))
    assert 0 < report.worst_margin < 1


def test_gamma_chain():
    report = run_suite("2.2", n_min=4, n_max=14)
    assert report.passed
    assert report.worst_margin > 1e-9


def test_c3_free_radius_small():
    report = run_suite("2.4", n_values=(4,))
    assert report.passed
    assert report.rows[0].margin == pytest.approx(0, abs=1e-8)


def test_switching_classes():
    report = run_suite("2.6", n_max=4)
    assert report.passed
    assert [r.params["graphs"] for r in report.rows] == [1, 2, 8, 64]


def test_sigma_suite_skips_when_index_below_threshold():
    report = run_suite("2.9", n_min=30, n_max=31)
    assert report.passed
    assert report.skipped
    assert all("λ1" in r.note or "範圍" in r.note for r in report.skipped)


def test_balanced_clique_bound():
    report = run_suite("3.1", n_max=4)
    assert report.passed
    assert report.rows[-1].params == {"n": 4, "graphs": 729}


def test_one_negative_small():
    report = run_suite("1.2", n_values=(4,))
    assert report.passed
    assert "729" in report.rows[0].note


def test_tk4_counts():
    report = run_suite("1.3", t_values=(2, 3, 4, 7), n_max=9)
    assert report.passed
    assert report.skipped[0].params == {"t": 3}


def test_lemma_suite_entry_point():
    assert isinstance(lemma_suite("2.2", n_min=5, n_max=6), SuiteReport)


def test_report_to_dict():
    doc = run_suite("2.2", n_min=5, n_max=5).to_dict()
    assert doc["suite"] == "2.2"
    assert doc["passed"] is True
    assert doc["skipped"] == 0
    assert doc["rows"][0]["status"] == "pass"


@pytest.mark.slow
def test_kr_free_search():
    report = run_suite("2.3", n=6, s_values=(3, 4))
    assert report.passed


@pytest.mark.slow
def test_one_negative_with_pruning():
    report = run_suite("1.2", n_values=(5, 6))
    assert report.passed


def test_gamma_bounds_full_range():
    assert run_suite("2.1").passed


def test_gamma_chain_full_range():
    assert run_suite("2.2").passed


@pytest.mark.slow
def test_kr_free_search_s5():
    report = run_suite("2.3", n=6, s_values=(5,))
    assert report.passed


@pytest.mark.slow
def test_c3_free_radius_n5_n6():
    report = run_suite("2.4", n_values=(5, 6))
    assert report.passed
    assert len(report.rows) == 2


@pytest.mark.slow
def test_switching_classes_up_to_five():
    report = run_suite("2.6", n_max=5)
    assert report.passed
    assert [r.params["graphs"] for r in report.rows] == [1, 2, 8, 64, 1024]
