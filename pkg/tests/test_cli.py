import json

import pytest

from conftest import config_path
from plectic import cli
from plectic.verify import Check


def run(tmp_path, *argv):
    out = tmp_path / "out.txt"
    code = cli.main([*argv, "--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_tate_periods(tmp_path):
    code, text = run(tmp_path, "periods", "--config", str(config_path("tate.json")), "--digits", "20")
    assert code == 0
    q = json.loads(text)["places"][0]["periods"][0][0]
    assert q["valuation"] == 1
    assert q["digits"] == [1] + [0] * 19
    assert q["precision"] == 20


def test_tate_abel_jacobi(tmp_path):
    code, text = run(
        tmp_path, "aj", "--config", str(config_path("tate.json")),
        "--cycle", str(config_path("cycle_tate.json")), "--digits", "30",
    )
    assert code == 0
    scalar = json.loads(text)["slots"][0][0]
    # 2/3 in Z_5 is 4 + 1*5 + 3*5^2 + 1*5^3 + ...
    assert scalar["digits"] == [4] + [1, 3] * 14 + [1]


def test_tree_dot_is_deterministic(tmp_path):
    args = ["tree", "--config", str(config_path("rank2.json")), "--radius", "3", "--format", "dot"]
    code1, first = run(tmp_path, *args)
    code2, second = run(tmp_path, *args)
    assert code1 == code2 == 0
    assert first == second
    assert first.startswith("graph place0 {")


def test_hecke_report(tmp_path):
    code, text = run(
        tmp_path, "hecke", "--config", str(config_path("tate_index2.json")),
        "--morphism", str(config_path("morphism_tate_index2.json")),
        "--cycle", str(config_path("cycle_tate.json")),
    )
    assert code == 0
    out = json.loads(text)
    assert out["index"] == 2
    assert out["functoriality"]["ok"]


def test_limitset_and_measures(tmp_path):
    code, text = run(tmp_path, "limitset", "--config", str(config_path("rank2.json")))
    assert code == 0 and json.loads(text)["places"][0]["kind"] == "perfect"
    code, text = run(tmp_path, "measures", "--config", str(config_path("rank2.json")))
    assert code == 0 and json.loads(text)["rank"] == 2


def test_bad_input_exits_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"prime\": 5}")
    assert cli.main(["periods", "--config", str(bad)]) == 1
    assert cli.main(["periods", "--config", str(config_path("tate.json")), "--format", "dot"]) == 1
    with pytest.raises(SystemExit) as info:
        cli.main(["nonsense"])
    assert info.value.code == 1


def test_failed_certificate_exits_2(tmp_path):
    cfg = json.loads(config_path("rank2.json").read_text())
    factor = cfg["factors"][0]
    factor["generators"][1] = factor["generators"][0]
    factor["balls"][1] = factor["balls"][0]
    bad = tmp_path / "overlap.json"
    bad.write_text(json.dumps(cfg))
    assert cli.main(["periods", "--config", str(bad)]) == 2


def test_unstable_integral_exits_3(tmp_path):
    code, _ = run(
        tmp_path, "integrate", "--config", str(config_path("rank2.json")),
        "--cycle", str(config_path("cycle_rank2.json")), "--depth", "2", "--digits", "20",
    )
    assert code == 3


def test_failed_invariant_exits_4_and_writes_report(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda group, suite, seed: [Check("padic", "forced", False, "x")])
    code, text = run(tmp_path, "verify", "--config", str(config_path("tate.json")))
    assert code == 4
    assert json.loads(text)["ok"] is False


@pytest.mark.parametrize("name", ["tate.json", "cyclic_cyclic.json", "tate_index2.json"])
def test_verify_passes_on_shipped_configs(tmp_path, name):
    code, text = run(tmp_path, "verify", "--config", str(config_path(name)))
    assert code == 0
    assert json.loads(text)["ok"]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["rank2.json", "cyclic_rank2.json"])
def test_verify_passes_on_rank2_configs(tmp_path, name):
    code, _ = run(tmp_path, "verify", "--config", str(config_path(name)))
    assert code == 0
