"""
測試執行設定與例外
"""

import pytest

from sgx.config import DEFAULT_EQ_TOL, RunConfig, load_config, parse_config_text
from sgx.errors import CapabilityError, DomainError, GuardError, ParseError


def test_defaults():
    config = load_config(env={})
    assert config == RunConfig()
    assert config.eq_tol == DEFAULT_EQ_TOL
    assert config.jobs == 1


def test_file_then_env(tmp_path):
    path = tmp_path / "sgx.conf"
    path.write_text("# 設定\njobs = 3\nord_tol = 1e-10\nprogress = yes\n\n", encoding="utf-8")
    config = load_config(str(path), env={})
    assert config.jobs == 3
    assert config.ord_tol == 1e-10
    assert config.progress is True
    assert load_config(str(path), env={"SGX_JOBS": "6"}).jobs == 6


def test_override_ignores_none():
    config = RunConfig().override(jobs=None, output_format="csv")
    assert config.jobs == 1
    assert config.output_format == "csv"


def test_invalid_values():
    with pytest.raises(DomainError):
        RunConfig(jobs=0)
    with pytest.raises(DomainError):
        RunConfig(output_format="xml")
    with pytest.raises(DomainError):
        parse_config_text("colour = red")
    with pytest.raises(DomainError):
        parse_config_text("jobs = many")
    with pytest.raises(DomainError):
        parse_config_text("jobs")
    with pytest.raises(DomainError):
        load_config(env={"SGX_JOBS": "x"})


def test_error_hierarchy():
    assert issubclass(ParseError, DomainError)
    assert issubclass(DomainError, ValueError)
    assert issubclass(GuardError, CapabilityError)
    err = GuardError("max_order", "n = 9")
    assert err.guard == "max_order"
    assert str(err) == "guard 'max_order' exceeded: n = 9"
    located = ParseError("bad", position=3).at_line(7)
    assert (located.line, located.position, located.detail) == (7, 3, "bad")
