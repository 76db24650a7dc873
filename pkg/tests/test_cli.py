import json
import os

import pytest

from suzukicoh import cli, store
from suzukicoh.pipeline import build_operators
from suzukicoh.suzuki_ff import CurveParams


def _run(capsys, *argv):
    code = 0
    try:
        cli.main(list(argv))
    except SystemExit as exc:
        code = exc.code or 0
    out = capsys.readouterr().out
    return code, out


def test_basis_listing(capsys):
    code, out = _run(capsys, "basis", "--m", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["genus"] == 14
    assert len(data["basis"]) == 14


def test_basis_pole_orders_strictly_increasing(capsys):
    code, out = _run(capsys, "basis", "--m", "2", "--format", "json")
    data = json.loads(out)
    assert len(data["basis"]) == 124
    weights = sorted(r["omega_pole_weight"] for r in data["basis"])
    assert len(set(weights)) == len(weights)
    fpoles = sorted(r["h1O_pole_order"] for r in data["basis"])
    assert len(set(fpoles)) == len(fpoles)


def test_decompose_output(capsys):
    code, out = _run(capsys, "decompose", "--m", "1")
    assert code == 0
    assert out.strip() == "D_1 = E/E(F^2+V^2) + (E/E(F^3+V^3))^4"


def test_eo_trivial(capsys):
    code, out = _run(capsys, "eo", "--m", "2", "--trivial", "--source", "model")
    assert out.strip() == "[0,1,1,2]"


def test_good_subsets(capsys):
    code, out = _run(capsys, "good-subsets", "--m", "2", "--format", "json")
    data = json.loads(out)
    assert len(data["subsets"]) == 11
    assert data["total_dimension"] == 248


def test_conjecture(capsys):
    code, out = _run(capsys, "conjecture", "--m", "1", "--format", "json")
    data = json.loads(out)
    assert data["multiplicity"] == 4 and data["matches_paper"]


def test_json_determinism(capsys):
    _, out1 = _run(capsys, "decompose", "--m", "1", "--format", "json")
    _, out2 = _run(capsys, "decompose", "--m", "1", "--format", "json")
    assert out1 == out2


def test_matrices_csv(capsys):
    code, out = _run(capsys, "matrices", "--m", "1", "--operator", "F", "--format", "csv")
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert len(lines) == 28
    assert all(len(l.split(",")) == 28 for l in lines)


def test_cache_roundtrip_and_corruption(tmp_path, capsys):
    cache = str(tmp_path / "cache")
    _, out_miss = _run(capsys, "matrices", "--m", "1", "--cache", cache, "--format", "json")
    files = sorted(os.listdir(cache))
    assert files == ["m1_mod11_F.json", "m1_mod11_V.json", "m1_mod11_tau.json"]
    _, out_hit = _run(capsys, "matrices", "--m", "1", "--cache", cache, "--format", "json")
    assert out_miss == out_hit
    # corrupt one file: the CLI must recompute and still agree
    with open(os.path.join(cache, "m1_mod11_F.json"), "w") as fh:
        fh.write("{not json")
    _, out_again = _run(capsys, "matrices", "--m", "1", "--cache", cache, "--format", "json")
    assert out_again == out_miss


def test_cache_env_variable(tmp_path, capsys, monkeypatch):
    cache = str(tmp_path / "envcache")
    monkeypatch.setenv(store.CACHE_ENV, cache)
    _run(capsys, "matrices", "--m", "1", "--format", "json")
    assert os.path.isdir(cache) and len(os.listdir(cache)) == 3


def test_cached_operators_equal_fresh(tmp_path):
    params = CurveParams(1)
    cache = str(tmp_path / "c")
    space1, ops1 = build_operators(params, cache)
    space2, ops2 = build_operators(params, cache)
    for name in ("F", "V", "tau"):
        assert ops1[name] == ops2[name]


def test_verify_exit_codes(capsys):
    code, out = _run(capsys, "verify", "--m", "1", "--suite", "dims,maincor")
    assert code == 0
    assert "all checks passed" in out


def test_verify_json(capsys):
    code, out = _run(capsys, "verify", "--m", "1", "--suite", "dims", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True


def test_verify_rejects_unknown_suite(capsys):
    with pytest.raises(ValueError):
        cli.main(["verify", "--m", "1", "--suite", "nonsense"])


def test_m_range_rejected(capsys):
    with pytest.raises(SystemExit):
        cli.main(["basis", "--m", "7"])


def test_cartier_table_command(capsys):
    code, out = _run(capsys, "cartier-table", "--m", "2", "--format", "json")
    data = json.loads(out)
    bad = [r["row"] for r in data["rows"] if not r["matches_printed"]]
    assert bad == ["h2", "y*h1"]
