import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plocal import GroupSpec, ParseError, PipelineConfig, analyze, run_pipeline
from plocal.catalog import build_group, parse_cycles
from plocal.errors import OutOfRangePoint
from plocal.report import VERDICT_KEYS, emit_report


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "plocal.cli", *args],
        capture_output=True,
        text=True,
    )


def test_parse_cycles_basic():
    p = parse_cycles("(1 2 3)", degree=3)
    assert p.images == (1, 2, 0)
    assert parse_cycles("()").is_identity()
    assert parse_cycles("(1 2)(2 3)").cycle_string() == "(1 3 2)"


def test_parse_cycles_whitespace_and_overlap():
    a = parse_cycles("  (1 2) ( 3 4 ) ", degree=4)
    assert a.cycle_string() == "(1 2)(3 4)"
    b = parse_cycles("(1 2)(1 3)", degree=3)
    assert b.cycle_string() == "(1 2 3)"


def test_parse_cycles_errors():
    with pytest.raises(ParseError):
        parse_cycles("(1 2")
    with pytest.raises(ParseError):
        parse_cycles("1 2)")
    with pytest.raises(ParseError):
        parse_cycles("(1 1)")
    with pytest.raises(OutOfRangePoint):
        parse_cycles("(1 5)", degree=3)


@given(st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n)))))
@settings(max_examples=50)
def test_parse_format_roundtrip(images):
    from plocal import Permutation
    p = Permutation(tuple(images))
    assert parse_cycles(p.cycle_string(), degree=p.degree) == p


def test_catalog_orders():
    import math
    for n in range(1, 7):
        assert build_group(f"sym:{n}").order == math.factorial(n)
    for n in range(3, 7):
        assert build_group(f"alt:{n}").order == math.factorial(n) // 2
    for n in (1, 2, 3, 6, 12):
        assert build_group(f"cyc:{n}").order == n
    for n in (2, 4, 6, 8, 12):
        assert build_group(f"dih:{n}").order == n
    assert build_group("sym:3 x cyc:3").order == 18
    assert build_group("cyc:2 x cyc:2 x cyc:2").order == 8


def test_explicit_generators():
    G = build_group("gens:(1 2 3)(4 5),(1 2)")
    assert G.degree == 5
    assert G.order == 12  # <(123)(45),(12)> in S_5
    H = build_group("gens:(1 2);deg=4")
    assert H.degree == 4
    assert H.order == 2


def test_report_schema_keys():
    rep = run_pipeline("sym:3", PipelineConfig(prime=2, include_timings=False))
    d = rep.data
    for key in ("schema_version", "group", "prime", "sylow", "poset",
                "categories", "homology", "limits", "verdicts", "overall"):
        assert key in d
    assert d["sylow"]["order"] == 2
    assert d["sylow"]["count"] == 3
    assert set(d["verdicts"]) == set(VERDICT_KEYS)
    assert "timings" not in d


def test_report_text_format():
    rep = run_pipeline("sym:3", PipelineConfig(prime=2, include_timings=False))
    text = emit_report(rep, "text")
    for key in VERDICT_KEYS:
        assert key in text
    assert "overall: pass" in text


def test_check_subset_marks_others_not_certified():
    rep = run_pipeline(
        "sym:3",
        PipelineConfig(prime=2, checks=("closure", "main"), include_timings=False),
    )
    v = rep.data["verdicts"]
    assert v["closure_idempotent"] == "pass"
    assert v["main_comparison"] == "pass"
    assert v["class_filtration_limits"] == "not-certified"
    assert rep.data["overall"] == "not-certified"
    assert rep.exit_code == 0


def test_degenerate_prime_not_dividing_order():
    rep = run_pipeline("cyc:3", PipelineConfig(prime=2, include_timings=False))
    d = rep.data
    assert d["sylow"]["order"] == 1
    assert d["overall"] == "pass"
    main = d["homology"]["main_comparison"]
    assert main["classifying_dims"] == [1, 0, 0]
    assert main["linking_dims"] == [1, 0, 0]


def test_trivial_group():
    rep = run_pipeline("cyc:1", PipelineConfig(prime=2, include_timings=False))
    assert rep.data["overall"] == "pass"


def test_analyze_from_group_spec():
    rep = analyze(GroupSpec("sym:3", 2), include_timings=False, checks=("main",))
    assert rep.data["verdicts"]["main_comparison"] == "pass"
    assert rep.data["prime"] == 2


def test_determinism_same_process():
    cfg = PipelineConfig(prime=2, include_timings=False)
    a = run_pipeline("sym:3", cfg).to_json()
    b = run_pipeline("sym:3", cfg).to_json()
    assert a == b


def test_budget_failure_gives_partial_report():
    rep = run_pipeline(
        "sym:4",
        PipelineConfig(prime=2, budget=500, include_timings=False,
                       checks=("closure", "nerve-vs-group")),
    )
    v = rep.data["verdicts"]
    assert v["closure_idempotent"] == "pass"
    assert v["transporter_nerve_vs_classifying_space"] == "not-certified"
    assert rep.data["overall"] == "not-certified"
    assert rep.exit_code == 0


def test_exit_code_on_failing_verdict():
    from plocal.report import AnalysisReport, finalize_overall

    verdicts = {"main_comparison": "fail"}
    rep = AnalysisReport({"verdicts": verdicts, "overall": finalize_overall(verdicts)})
    assert rep.overall == "fail"
    assert rep.exit_code == 1


def test_cli_parse_check():
    r = run_cli("parse-check", "(1 2)(2 3)")
    assert r.returncode == 0
    assert "(1 3 2)" in r.stdout
    bad = run_cli("parse-check", "(1 2")
    assert bad.returncode == 2


def test_cli_catalog():
    r = run_cli("catalog")
    assert r.returncode == 0
    assert "sym:n" in r.stdout


def test_cli_analyze_json_and_exit_code():
    r = run_cli(
        "analyze", "--group", "sym:3", "--prime", "2",
        "--no-timings", "--check", "closure,main",
    )
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["group"]["order"] == 6
    assert d["verdicts"]["main_comparison"] == "pass"
    assert d["sylow"] == {"order": 2, "count": 3, "p_part": 2, "label": d["sylow"]["label"]}


def test_cli_analyze_bad_prime():
    r = run_cli("analyze", "--group", "sym:3", "--prime", "4")
    assert r.returncode == 2


def test_cli_analyze_unknown_check():
    r = run_cli("analyze", "--group", "sym:3", "--prime", "2", "--check", "bogus")
    assert r.returncode == 2


def test_cli_determinism_across_processes():
    args = (
        "analyze", "--group", "sym:3", "--prime", "3",
        "--no-timings",
    )
    a = run_cli(*args)
    b = run_cli(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout
