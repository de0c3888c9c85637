import json

import jsonschema
import pytest

from supersymbols import cli, suites
from supersymbols.grammar import ParseError
from supersymbols.report import Check, Report, SuiteConfig, emit_report, load_schema


def test_bracket_examples():
    assert cli.compute_bracket("t y1", "t x1", "poisson") == "t^2"
    assert cli.compute_bracket("tau", "t", "circ_h") == "h"
    assert cli.compute_bracket("d", "t", "weyl") == "t d + t"


def test_bracket_modes():
    assert cli.compute_bracket("tau", "t", "circ_h", mode="product") == "h + t tau"
    assert cli.compute_bracket("tau", "t", "circ_h", mode="bracket") == "1"
    assert cli.compute_bracket("tau", "t", "circ_h", h="1/2") == "1/2"
    assert cli.compute_bracket("d", "t", "weyl", mode="commutator") == "t"
    assert cli.compute_bracket("t^2", "t", "contact") == "-2 t^2"


def test_truncated_result_is_marked():
    out = cli.compute_bracket("tau^-1", "t^-1", "circ_h", mode="product", cutoff=-5)
    assert out.endswith("+ O(tau^-6)")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        cli.compute_bracket("t $ y1", "t", "poisson")
    assert err.value.position == 2


def test_main_bracket(capsys):
    assert cli.main(["bracket", "t y1", "t x1"]) == 0
    assert capsys.readouterr().out.strip() == "t^2"
    assert cli.main(["bracket", "t + x1", "t"]) == 2


def test_gamma_table(capsys):
    assert cli.main(["gamma", "table", "--sigma", "2,-3,1"]) == 0
    out = capsys.readouterr().out
    assert "[e1f1h1, e2f2h2] = (2) P1(e1,e2) + (-3) P2(f1,f2) + (1) P3(h1,h2)" in out


def test_gamma_verify_json(capsys):
    assert cli.main(["gamma", "verify", "--variant", "poisson", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    jsonschema.validate(data, load_schema())
    pairs = [c for c in data["checks"] if " hom [" in c["id"]]
    assert len(pairs) == 17 * 17


def test_gamma_psl(capsys):
    assert cli.main(["gamma", "psl", "--alpha", "-1"]) == 0
    assert "kappa = -1" in capsys.readouterr().out
    assert cli.main(["gamma", "psl", "--alpha", "3"]) == 2


def test_reports_are_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert cli.main(["run", "--suite", "psl", "--format", "json", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_json_round_trip():
    report = suites.run_suite(SuiteConfig("cocycles", range=2))
    data = emit_report(report, "json")
    jsonschema.validate(json.loads(data), load_schema())
    back = Report.from_json(data)
    assert back == report
    assert emit_report(back, "json") == data


def test_text_report_is_aligned():
    report = Report("demo", SuiteConfig("psl").echo(),
                    [Check("a", True), Check("longer id", False, "x + 1")])
    lines = emit_report(report, "text").decode().splitlines()
    header = next(l for l in lines if l.startswith("check"))
    rows = [l for l in lines if l.startswith(("a ", "longer id"))]
    col = header.index("status")
    assert all(r[col:].startswith(("pass", "fail")) for r in rows)
    assert lines[-1] == "2 checks, 1 failed: FAIL"


def test_exit_status_follows_checks(monkeypatch, capsys):
    assert Report("x", {}, [Check("ok", True)]).exit_code == 0
    assert Report("x", {}, [Check("ok", True), Check("bad", False, "1")]).exit_code == 1

    def failing(run):
        run.check("always fails", lambda: (False, "residual 1"))
        run.check("still runs", lambda: (True, ""))

    monkeypatch.setitem(suites.SUITES, "psl", failing)
    assert cli.main(["run", "--suite", "psl", "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "fail"
    assert [c["status"] for c in data["checks"]] == ["fail", "pass"]
    assert data["checks"][0]["residual"] == "residual 1"


def test_unknown_suite():
    with pytest.raises(suites.UnknownSuite):
        suites.run_suite(SuiteConfig("nonsense"))
    with pytest.raises(SystemExit):
        cli.main(["run", "--suite", "nonsense"])


def test_config_invariants():
    with pytest.raises(ValueError):
        SuiteConfig("psl", range=0)
    with pytest.raises(ValueError):
        SuiteConfig("psl", cutoff=-2)


def test_timing_is_opt_in():
    plain = suites.run_suite(SuiteConfig("psl"))
    timed = suites.run_suite(SuiteConfig("psl", timing=True))
    assert all(c.timing is None for c in plain.checks)
    assert all(c.timing is not None for c in timed.checks)
