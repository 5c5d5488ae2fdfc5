import json
from fractions import Fraction as Fr

import pytest

from jkepler.algebra import make_algebra
from jkepler.cli import (Report, SuiteConfig, emit, info_table, main, parse_nu, run,
                         spectrum_table)


def _strip_wall(data: bytes) -> dict:
    d = json.loads(data.decode())
    d.pop("wall_time_ms")
    return d


@pytest.mark.parametrize("suite", ["jordan", "tkk", "poisson", "measure"])
def test_suites_pass_on_small_algebra(suite):
    cfg = SuiteConfig(algebra="gamma:2", suite=suite, trials=8, seed=3, levels=2)
    rep = run(cfg)
    assert rep.all_pass(), [c for c in rep.checks if c["status"] == "fail"]
    assert rep.suite == suite and rep.algebra == "gamma:2"


def test_operators_suite_with_nu():
    cfg = SuiteConfig(algebra="gamma:3", suite="operators", trials=3, seed=2,
                      nu=Fr(1), levels=2)
    rep = run(cfg)
    assert rep.all_pass()
    names = {c["name"] for c in rep.checks}
    assert "operators:SS" in names and "grading:I=2" in names and "lowest-weight" in names


def test_cone_suite():
    cfg = SuiteConfig(algebra="gamma:3", suite="cone", trials=5, seed=1)
    rep = run(cfg)
    assert rep.all_pass(), [c for c in rep.checks if c["status"] == "fail"]


def test_checks_sorted_and_deterministic():
    cfg = SuiteConfig(algebra="gamma:2", suite="poisson", trials=5, seed=9)
    r1, r2 = run(cfg), run(cfg)
    names = [c["name"] for c in r1.checks]
    assert names == sorted(names)
    assert _strip_wall(emit(r1, "json")) == _strip_wall(emit(r2, "json"))


def test_jobs_parallel_matches_serial():
    base = SuiteConfig(algebra="gamma:2", suite="jordan", trials=6, seed=4)
    par = SuiteConfig(algebra="gamma:2", suite="jordan", trials=6, seed=4, jobs=4)
    assert _strip_wall(emit(run(base), "json")) == _strip_wall(emit(run(par), "json"))


def test_emit_json_schema_and_roundtrip():
    rep = run(SuiteConfig(algebra="gamma:2", suite="measure", trials=5, seed=0))
    payload = emit(rep, "json")
    d = json.loads(payload.decode())
    assert set(d) == {"suite", "algebra", "params", "checks", "wall_time_ms"}
    for c in d["checks"]:
        assert set(c) == {"name", "status", "metric", "witness"}
        assert c["status"] in ("pass", "fail", "skipped")
        assert c["metric"] == "exact" or isinstance(c["metric"], float)
    back = Report.from_json(payload)
    assert emit(back, "json") == payload


def test_empty_and_failing_reports_serialize():
    empty = Report("poisson", "gamma:2", {}, [])
    d = json.loads(emit(empty, "json").decode())
    assert d["checks"] == []
    witness = {"u": ["1", "0", "2"], "v": ["0", "1", "0"], "z": ["1"], "w": ["2"]}
    failing = Report("poisson", "gamma:2", {}, [
        {"name": "poisson:XY", "status": "fail", "metric": "exact", "witness": witness}])
    assert not failing.all_pass()
    d = json.loads(emit(failing, "json").decode())
    assert d["checks"][0]["witness"] == witness
    text = emit(failing, "text").decode()
    assert "witness" in text and "fail" in text


def test_parse_nu_sugar():
    alg = make_algebra("h:3:H")  # delta = 4
    assert parse_nu("d:1", alg) == Fr(2)
    assert parse_nu("7/3", alg) == Fr(7, 3)
    assert parse_nu("1.5", alg) == Fr(3, 2)


def test_config_validation():
    with pytest.raises(Exception):
        SuiteConfig(algebra="gamma:2", trials=0)
    with pytest.raises(Exception):
        SuiteConfig(algebra="gamma:2", tol=0.0)
    with pytest.raises(Exception):
        SuiteConfig(algebra="gamma:2", suite="nope")


# --- the command-line entry point -------------------------------------------------

def test_main_verify_json(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = main(["verify", "--suite", "poisson", "--algebra", "gamma:2", "--trials", "5",
                 "--seed", "7", "--format", "json", "--out", str(out)])
    assert code == 0
    d = json.loads(out.read_bytes().decode())
    assert all(c["status"] == "pass" for c in d["checks"])


def test_main_bad_algebra_is_usage_error(capsys):
    code = main(["info", "--algebra", "nope:3"])
    assert code == 2
    assert "grammar" in capsys.readouterr().err


def test_main_bad_nu_pairing_is_domain_error(capsys):
    code = main(["verify", "--suite", "operators", "--algebra", "gamma:3",
                 "--nu", "1/3", "--trials", "2"])
    assert code == 2
    assert "Wallach" in capsys.readouterr().err


def test_main_spectrum_table(capsys):
    code = main(["spectrum", "--algebra", "gamma:3", "--nu", "1", "--levels", "4"])
    assert code == 0
    out = capsys.readouterr().out
    for val in ("-1/2", "-1/8", "-1/18", "-1/32"):
        assert val in out


def test_main_info(capsys):
    code = main(["info", "--algebra", "h:3:O"])
    assert code == 0
    out = capsys.readouterr().out
    assert "rho=3 delta=8 dim=27" in out
    assert "dim_str=79 dim_co=133" in out


def test_main_config_file(tmp_path):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"suite": "poisson", "trials": 4, "seed": 5}))
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["verify", "--algebra", "gamma:2", "--config", str(cfgfile),
                 "--format", "json", "--out", str(out1)]) == 0
    # flags win over the config file
    assert main(["verify", "--algebra", "gamma:2", "--config", str(cfgfile),
                 "--suite", "measure", "--format", "json", "--out", str(out2)]) == 0
    assert json.loads(out1.read_bytes())["suite"] == "poisson"
    assert json.loads(out2.read_bytes())["suite"] == "measure"


def test_env_seed_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("JK_SEED", "123")
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "measure", "--algebra", "gamma:2", "--trials", "4",
                 "--format", "json", "--out", str(out)]) == 0
    assert json.loads(out.read_bytes())["params"]["seed"] == 123


def test_spectrum_and_info_tables():
    alg = make_algebra("gamma:3")
    table = spectrum_table(alg, Fr(1), 3, True, seed=0)
    assert [row["energy"] for row in table["levels"]] == ["-1/2", "-1/8", "-1/18"]
    assert [row["degeneracy"] for row in table["levels"]] == [1, 4, 9]
    info = info_table(alg)
    assert info["dim_str"] == 7 and info["dim_co"] == 15


def test_main_exit_code_on_failure(tmp_path, monkeypatch):
    import jkepler.cli as cli
    failing = Report("poisson", "gamma:2", {}, [
        {"name": "poisson:XY", "status": "fail", "metric": "exact",
         "witness": {"u": ["1"]}}])
    monkeypatch.setattr(cli, "run", lambda cfg: failing)
    code = main(["verify", "--suite", "poisson", "--algebra", "gamma:2",
                 "--format", "json", "--out", str(tmp_path / "f.json")])
    assert code == 1
