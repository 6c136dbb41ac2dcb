"""
測試命令列介面與結束碼
"""

import io
import json

import pytest

from sgx.cli import EXIT_CAPABILITY, EXIT_DOMAIN, EXIT_OK, EXIT_VERIFY, main


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def no_env_jobs(monkeypatch):
    monkeypatch.delenv("SGX_JOBS", raising=False)


def test_construct():
    code, out, _ = run(["construct", "gamma", "--s", "2", "--n", "4"])
    assert code == EXIT_OK
    assert out == "C~:20\n"


def test_construct_domain_error():
    code, _, err = run(["construct", "gamma", "--s", "3", "--n", "4"])
    assert code == EXIT_DOMAIN
    assert "s ≤ n−2" in err


def test_spectrum_json():
    code, out, _ = run(["spectrum"], stdin="C~:20\n")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["index"] == pytest.approx(5 ** 0.5)


def test_spectrum_csv_many():
    code, out, _ = run(["spectrum", "--format", "csv"], stdin="C~:20\nC~:00\n")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "sg6,index,spectral_radius,balanced,eigenvalues"
    assert lines[1].startswith("C~:20,2.2360679775,")
    assert lines[2].startswith("C~:00,3,3,true,")


def test_bad_input_is_domain_error():
    code, _, err = run(["spectrum"], stdin="C~:2\n")
    assert code == EXIT_DOMAIN
    assert "第 1 行" in err


def test_check_requires_one_family():
    code, _, _ = run(["check"], stdin="C~:20\n")
    assert code == EXIT_DOMAIN
    code, out, _ = run(["check", "--tk4-free", "2", "--format", "table"], stdin="C~:20\n")
    assert code == EXIT_OK
    assert out.splitlines()[0].split() == ["sg6", "family", "free", "unbalanced", "count"]


def test_count_uk4():
    code, out, _ = run(["count-uk4"], stdin="C~:20\n")
    assert code == EXIT_OK
    assert json.loads(out)["count"] == 1


def test_canon_and_switch():
    assert run(["canon"], stdin="C~:20\n")[1] == "C~:04\n"
    assert run(["switch", "--set", "3"], stdin="C~:20\n")[1] == "C~:0c\n"
    code, _, _ = run(["switch", "--set", "4"], stdin="C~:20\n")
    assert code == EXIT_DOMAIN


def test_search_guards():
    code, _, err = run(["search", "--n", "9"])
    assert code == EXIT_CAPABILITY
    assert "max_order" in err
    code, _, err = run(["search", "--n", "7", "--exhaustive"])
    assert code == EXIT_CAPABILITY
    assert "exhaustive_order" in err


def test_search_writes_certificate(tmp_path):
    cert_path = tmp_path / "cert.json"
    code, out, _ = run(["search", "--n", "4", "--out", str(cert_path), "--format", "csv"])
    assert code == EXIT_OK
    assert out.splitlines()[1].split(",")[:2] == ["4", "all_unbalanced"]

    code, out, _ = run(["verify-cert", str(cert_path)])
    assert code == EXIT_OK
    assert json.loads(out)["ok"] is True

    doc = json.loads(cert_path.read_text(encoding="utf-8"))
    doc["best_value"] = 1.0
    cert_path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = run(["verify-cert", str(cert_path)])
    assert code == EXIT_VERIFY
    assert json.loads(out)["failures"][0]["check"] == "objective mismatch"


def test_verify_suite():
    code, out, _ = run(["verify", "2.1", "--n", "5..7"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["passed"] is True
    assert {row["params"]["n"] for row in doc["rows"]} == {5, 6, 7}


def test_verify_unknown_suite():
    code, _, err = run(["verify", "4.2"])
    assert code == EXIT_DOMAIN
    assert "4.2" in err


def test_usage_error():
    code, _, _ = run(["search"])
    assert code == EXIT_DOMAIN
    code, _, _ = run(["spectrum", "--jobs", "0"], stdin="C~:20\n")
    assert code == EXIT_DOMAIN


def test_config_file(tmp_path):
    conf = tmp_path / "sgx.conf"
    conf.write_text("output_format = csv\n", encoding="utf-8")
    code, out, _ = run(["spectrum", "--config", str(conf)], stdin="C~:00\n")
    assert code == EXIT_OK
    assert out.startswith("sg6,index")
