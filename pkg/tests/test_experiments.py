import json
import subprocess
import sys
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birkhoff import GOLDEN, MissingProvenance, preset
from birkhoff.experiments import (
    DEFAULT_PROVENANCE,
    ExperimentConfig,
    load_provenance,
    parse_observable,
    parse_rotation,
    run_figure,
    run_oracle,
    run_regression,
)
from birkhoff.experiments.cli import SUBCOMMANDS, build_parser, main
from birkhoff.experiments.figures import FIGURES
from birkhoff.experiments.regression import PAPER, GoldenRecord, RecordCheck, default_records


@given(
    st.sampled_from(["golden", "silver", "sqrt41minus6", "sqrt3minus1over2", "-1,1,2,5"]),
    st.sampled_from(["logsin", "hecke", "hecke-rad", "trigpoly:2,-2"]),
    st.one_of(st.none(), st.integers(1, 30)),
    st.sampled_from(["0", "1/2", "3/7"]),
    st.sampled_from(["csv", "json"]),
    st.integers(0, 1),
    st.booleans(),
)
def test_config_round_trip(alpha, obs, n, x0, fmt, offset, deep):
    cfg = ExperimentConfig(alpha=alpha, obs=obs, n=n, x0=x0, format=fmt, index_offset=offset, deep=deep)
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg


def test_presets_resolve_exactly():
    assert parse_rotation("golden") == GOLDEN
    assert parse_rotation("-6,1,1,41") == preset("sqrt41minus6")
    assert parse_rotation("sqrt3minus1over2").cf_period == (2, 1)


@pytest.mark.parametrize("field, value", [("format", "xml"), ("normalization", "log2"), ("n", 0),
                                          ("alpha", "pi"), ("obs", "cos"), ("bins", 0)])
def test_config_validation(field, value):
    with pytest.raises(ValueError):
        replace(ExperimentConfig(), **{field: value})


def test_parse_observable_hecke_variants():
    assert parse_observable("hecke-raw").mean == 0.5
    assert parse_observable("hecke-rad").scale == pytest.approx(6.283185307179586)


def test_help_names_figures(capsys):
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--help"])
    out = capsys.readouterr().out
    for name in SUBCOMMANDS:
        assert name in out
    for k in range(1, 8):
        assert f"Figure {k}" in out


@pytest.mark.parametrize("fig", FIGURES)
def test_figure_reproducible(tmp_path, fig):
    n = {"fig1": 10, "fig2": 14, "fig3": 12, "fig4": 14, "fig5": 2, "fig6": 10, "fig7": 9}[fig]
    a = ExperimentConfig(n=n, out=str(tmp_path / "a"), K=None if fig != "fig6" else 500)
    b = replace(a, out=str(tmp_path / "b"))
    pa, pb = run_figure(fig, a), run_figure(fig, b)
    manifest = json.loads(pa[-1].read_text())
    assert manifest["figure"] == fig and manifest["files"]
    for x, y in zip(pa[:-1], pb[:-1]):
        assert x.read_bytes() == y.read_bytes()


def test_fig1_defaults(tmp_path):
    paths = run_figure("fig1", ExperimentConfig(out=str(tmp_path)))
    trace = (tmp_path / "fig1_trace.csv").read_text().splitlines()
    assert len(trace) == 611 and trace[0] == "k,S_k,S_k/log(k)"
    env = (tmp_path / "fig1_envelopes.csv").read_text().splitlines()
    assert abs(float(env[-1].split(",")[2]) - 1.75687) < 5e-3
    assert json.loads(paths[-1].read_text())["parameters"]["convergents"][13] == {"n": 14, "p": 377, "q": 610}


def test_fig2_defaults(tmp_path):
    run_figure("fig2", ExperimentConfig(out=str(tmp_path)))
    hist = (tmp_path / "fig2_histogram.csv").read_text().splitlines()
    assert hist[0] == "bin_center,normalized_density" and len(hist) == 201
    man = json.loads((tmp_path / "fig2_manifest.json").read_text())
    assert man["parameters"]["K"] == 75025
    for norm in ("logk", "logqn"):
        assert (tmp_path / f"fig2_fourier_{norm}.csv").read_text().startswith("m,Re,Im,modulus")


def test_fig5_defaults(tmp_path):
    run_figure("fig5", ExperimentConfig(out=str(tmp_path)))
    lines = (tmp_path / "fig5_f_family.csv").read_text().splitlines()
    assert lines[0] == "x,f_9,f_10,f_11" and len(lines) == 2001


def test_json_format(tmp_path):
    run_figure("fig3", ExperimentConfig(n=10, format="json", out=str(tmp_path)))
    data = json.loads((tmp_path / "fig3_beta_10.json").read_text())
    assert len(data["x_left"]) == len(data["value"]) == 89


def test_unknown_figure(tmp_path):
    with pytest.raises(ValueError):
        run_figure("fig8", ExperimentConfig(out=str(tmp_path)))


@pytest.mark.parametrize("argv, expected", [
    (["sums", "--n", "10"], "sums.csv"),
    (["renorm", "--n", "12", "--m", "2"], "f_12_2.csv"),
    (["beta", "--n", "16", "--alpha", "sqrt3minus1over2"], "beta_periodic_16.csv"),
    (["distribution", "--n", "14"], "histogram.csv"),
    (["fourier", "--n", "14", "--normalization", "logqn"], "fourier_logqn.csv"),
    (["complex", "--n", "10", "--K", "55"], "B_10.csv"),
    (["polygon", "--n", "12"], "polygon.csv"),
    (["figure", "fig1", "--n", "8"], "fig1_trace.csv"),
])
def test_cli_subcommands(tmp_path, capsys, argv, expected):
    assert main(argv + ["--out", str(tmp_path)]) == 0
    assert (tmp_path / expected).exists()
    assert str(tmp_path / expected) in capsys.readouterr().out


def test_cli_actionable_error(capsys):
    assert main(["sums", "--alpha", "3,1,1,4"]) == 2
    assert "sqrt(4)" in capsys.readouterr().err


def test_cli_module_entry(tmp_path):
    r = subprocess.run([sys.executable, "-m", "birkhoff", "polygon", "--n", "6", "--out", str(tmp_path)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and (tmp_path / "polygon.csv").exists()


def test_oracle_empty_blocks_regression(tmp_path):
    path = run_oracle([], tmp_path / "p.json")
    assert json.loads(path.read_text()) == {"suites": {}, "thresholds": {}}
    with pytest.raises(MissingProvenance):
        run_regression(path)
    with pytest.raises(MissingProvenance):
        run_regression(tmp_path / "absent.json")


def test_oracle_rational_suite(tmp_path):
    data = json.loads(run_oracle(["rational"], tmp_path / "p.json").read_text())
    assert data["suites"]["rational"]["max_abs_gap_q_le_200"] < 1e-12
    with pytest.raises(ValueError):
        run_oracle(["nope"], tmp_path / "q.json")


def test_shipped_provenance():
    prov = load_provenance(DEFAULT_PROVENANCE)
    sweep = prov["suites"]["renorm"]["golden_logsin"]
    assert sorted(int(n) for n in sweep) == list(range(18, 26))
    assert all(abs(r["beta_one_minus"] - 0.104) < 5e-3 for r in sweep.values())


@pytest.fixture(scope="module")
def report():
    return run_regression()


def test_published_records_pass(report):
    published = [r for r in report.records if r.provenance == PAPER]
    assert published and all(r.passed for r in published), [r.id for r in published if not r.passed]


def test_report_counts(report):
    counts = report.counts_by_provenance()
    assert set(counts) == {"PAPER", "TRIVIAL", "DERIVED"}
    assert sum(c["total"] for c in counts.values()) == len(report.records)
    data = json.loads(report.to_json())
    assert len(data["records"]) == len(report.records)


def test_records_unique_and_tagged():
    ids = [s.record.id for s in default_records()]
    assert len(ids) == len(set(ids))
    assert all(s.record.provenance in ("PAPER", "TRIVIAL", "DERIVED") for s in default_records())


def test_tampered_record_identified():
    good = next(c for c in default_records() if c.record.id == "polygon_q5")
    bad = RecordCheck(replace(good.record, expected=6.0), good.compute)
    tampered = RecordCheck(replace(good.record, id="tampered", expected=6.0), good.compute)
    rep = run_regression(checks=[good, tampered])
    assert [r.id for r in rep.failures] == ["tampered"]
    assert not run_regression(checks=[bad]).passed


def test_regression_cli_exit_status(tmp_path):
    out = tmp_path / "report.json"
    code = main(["regression", "--out", str(out)])
    data = json.loads(out.read_text())
    assert code == (0 if data["passed"] else 1)


def test_golden_record_compare_modes():
    r = GoldenRecord("x", 1.0, 0.1, PAPER, "")
    assert r.evaluate(1.05).passed and not r.evaluate(1.2).passed
    u = GoldenRecord("u", 1.0, 0.0, PAPER, "", "upper")
    assert u.evaluate(0.5).passed and not u.evaluate(1.5).passed
    with pytest.raises(ValueError):
        GoldenRecord("z", 1.0, 0.0, PAPER, "", "lower").evaluate(0.0)
