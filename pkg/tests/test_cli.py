import json

import pytest
from typer.testing import CliRunner

import config
from charts import strip_chart
from duality import pattern_range
from grading import ChromaticContext
from main import app
from report import PATTERN_COLUMNS, PATTERN_DETAIL_COLUMNS, OutputEnvelope

runner = CliRunner()


def invoke(*args, env=None):
    return runner.invoke(app, list(args), env=env)


def payload(result):
    return json.loads(result.stdout)["payload"]


# ── Envelope ──────────────────────────────────────────────────────────────────
def test_envelope_json_and_csv_round_trip():
    env = OutputEnvelope("pattern", {"p": "5", "h": "2"},
                         ({"t": "0", "verdict": "nonzero", "witness_family": "I",
                           "witness_N": "1", "witness_params": "s=4;s_modulus=5"},
                          {"t": "8", "verdict": "zero", "witness_family": "",
                           "witness_N": "", "witness_params": ""}),
                         PATTERN_COLUMNS)
    assert OutputEnvelope.from_json(env.to_json()) == env
    back = OutputEnvelope.from_csv(env.to_csv(), "pattern", {"p": "5", "h": "2"})
    assert back.payload == env.payload
    assert env.to_csv().splitlines()[0] == ",".join(PATTERN_COLUMNS)


def test_envelope_values_become_strings():
    env = OutputEnvelope("pairs", payload=({"h": 3, "p": 5},))
    assert env.payload == ({"h": "3", "p": "5"},)
    assert env.schema_version == config.SCHEMA_VERSION


def test_strip_chart_is_byte_stable():
    ctx = ChromaticContext(5, 2)
    first = strip_chart(pattern_range(ctx, -200, 0), "p=5 h=2")
    second = strip_chart(list(reversed(pattern_range(ctx, -200, 0))), "p=5 h=2")
    assert first == second
    assert first.startswith("<svg") and first.endswith("</svg>\n")


# ── Commands ──────────────────────────────────────────────────────────────────
def test_pairs_count_only():
    result = invoke("pairs", "--limit", "10", "--count-only")
    assert result.exit_code == 0
    assert payload(result) == [{"lo": "1", "hi": "10", "count": "3"}]


def test_pairs_range():
    result = invoke("pairs", "--range", "3", "4")
    assert payload(result) == [{"h": "3", "p": "5"}]


def test_pattern_csv():
    result = invoke("--format", "csv", "pattern", "--p", "5", "--h", "2",
                    "--t-range", "-200", "0", "--coeffs", "mod_p")
    assert result.exit_code == 0
    rows = OutputEnvelope.from_csv(result.stdout, "pattern").payload
    by_t = {r["t"]: r for r in rows}
    assert len(rows) == 201
    assert by_t["0"]["verdict"] == "nonzero" and by_t["0"]["witness_family"].startswith("I")
    assert by_t["-8"]["verdict"] in ("zero", "nonzero")


def test_pattern_json_matches_csv():
    args = ["pattern", "--p", "5", "--h", "2", "--t-range", "-48", "8"]
    as_json = invoke(*args)
    as_csv = invoke("--format", "csv", *args)
    assert tuple(payload(as_json)) == OutputEnvelope.from_csv(as_csv.stdout, "pattern").payload


def test_pattern_detail():
    result = invoke("pattern", "--p", "5", "--h", "3", "--t-range", "-64", "-64", "--detail")
    assert result.exit_code == 0
    (row,) = payload(result)
    assert row["verdict"] == "zero"
    assert row["reason"] == "no witness; family III checked at bound level"
    assert row["termination_N"] == "2" and row["checked_N"] == "1..2"
    assert row["potential_witnesses"] == ""


def test_pattern_detail_csv_columns():
    args = ["--format", "csv", "pattern", "--p", "5", "--h", "3", "--t-range", "-24", "-20",
            "--detail"]
    rows = OutputEnvelope.from_csv(invoke(*args).stdout, "pattern").payload
    assert tuple(rows[0]) == PATTERN_DETAIL_COLUMNS
    by_t = {r["t"]: r for r in rows}
    assert by_t["-20"]["reason"] == "sparseness" and by_t["-20"]["checked_N"] == ""
    assert by_t["-24"]["potential_witnesses"] == "III@N=1:d=5,5;lift=-24;degree_sum=280"


def test_pattern_svg(tmp_path):
    target = tmp_path / "strip.svg"
    args = ["pattern", "--p", "5", "--h", "2", "--t-range", "-100", "0", "--svg", str(target)]
    assert invoke(*args).exit_code == 0
    first = target.read_bytes()
    assert invoke(*args).exit_code == 0
    assert target.read_bytes() == first


def test_conclusions_cli():
    result = invoke("conclusions", "--p", "5", "--h", "3")
    assert result.exit_code == 0
    texts = " ".join(r["text"] for r in payload(result))
    assert "V(1)" in texts


def test_conclusions_inapplicable_still_exits_zero():
    result = invoke("conclusions", "--p", "7", "--h", "4")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["context"]["applicable"] == "false"


@pytest.mark.parametrize("args, expected", [
    (["ideal", "check", "--p", "5", "--h", "3", "--N", "1", "--exponents", "1,5"], "true"),
    (["ideal", "check", "--p", "5", "--h", "3", "--N", "1", "--exponents", "6,5"], "false"),
    (["ideal", "check", "--p", "5", "--h", "3", "--N", "2"], "true"),
])
def test_ideal_check(args, expected):
    assert payload(invoke(*args))[0]["invariant"] == expected


def test_ideal_enum():
    rows = payload(invoke("ideal", "enum", "--p", "5", "--h", "2", "--N", "1", "--cap", "5"))
    assert [r["exponents"] for r in rows] == ["1", "2", "3", "4", "5"]


def test_ahn_cross_check():
    rows = payload(invoke("ahn", "--h", "3", "--p", "5", "--N-max", "3", "--cross-check"))
    assert [r["a"] for r in rows] == ["5", "25", "129"]
    assert all(r["agrees"] == "true" for r in rows)


def test_greek_degrees():
    rows = payload(invoke("greek", "degrees", "--p", "5", "--h", "2", "--family", "I",
                          "--window", "40", "40"))
    assert rows == [{"family": "I", "s": "1", "N": "0", "d": "1", "degree": "40",
                     "level": "chart", "label": "v2^1/(pv1)"}]


def test_dual_shift():
    rows = payload(invoke("dual", "shift", "--p", "5", "--h", "3", "--t", "0", "--N", "1"))
    assert rows == [{"t": "0", "N": "1", "modulus": "1240", "residue": "936"}]


def test_bounds():
    rows = payload(invoke("bounds", "--p", "13", "--h", "5", "--N-max", "20", "--variant", "kappa"))
    assert len(rows) == 20 and all(r["holds"] == "true" for r in rows)


# ── Errors ────────────────────────────────────────────────────────────────────
def test_domain_error_exits_one():
    result = invoke("pattern", "--p", "5", "--h", "4", "--t-range", "0", "8")
    assert result.exit_code == 1
    assert "domain_error" in result.output


def test_composite_prime_exits_one():
    result = invoke("dual", "shift", "--p", "9", "--h", "3", "--t", "0", "--N", "1")
    assert result.exit_code == 1


@pytest.mark.parametrize("extra", [[], ["--count-only"]])
def test_pairs_reversed_range_exits_one(extra):
    result = invoke("pairs", "--range", "10", "3", *extra)
    assert result.exit_code == 1
    assert "domain_error" in result.output


def test_unknown_flag_is_usage_error():
    assert invoke("pairs", "--bogus").exit_code == 2


def test_bad_settings_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("n_max = lots\n", encoding="utf-8")
    result = invoke("--config", str(cfg), "pairs", "--limit", "10")
    assert result.exit_code == 1
    assert "config_error" in result.output


def test_settings_file_sets_defaults(tmp_path):
    cfg = tmp_path / "ok.cfg"
    cfg.write_text("# caps\nsearch_cap = 2\n\nworkers = 1\n", encoding="utf-8")
    rows = payload(invoke("--config", str(cfg), "ideal", "enum", "--p", "5", "--h", "2", "--N", "1"))
    assert [r["exponents"] for r in rows] == ["1", "2"]


def test_version():
    result = invoke("--version")
    assert result.exit_code == 0
    assert config.APP_VERSION in result.stdout


def test_greek_degrees_bound_level():
    rows = payload(invoke("greek", "degrees", "--p", "5", "--h", "3", "--family", "III",
                          "--window", "900", "1000", "--bound-N", "1"))
    assert {"level": "bound", "d": "5,5", "degree": "960"}.items() <= next(
        r for r in rows if r["level"] == "bound" and r["d"] == "5,5").items()
