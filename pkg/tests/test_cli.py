"""Command line behaviour: text output, JSON mode, exit codes, registry paths.

All tests drive :func:`euler_periods.cli.dispatch` in process and read the
streams through capsys, so they check the exact bytes a shell user sees.
"""

import json

import pytest

from euler_periods.cli import dispatch

GOOD_REGISTRY_ROW = {
    "label": "probe:2026",
    "value": "1.0e-3",
    "uncertainty_components": ["1e-6"],
    "year": 2026,
    "source_eq": "local",
}


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_registry(tmp_path, name="reg.json", label="probe:2026"):
    row = dict(GOOD_REGISTRY_ROW, label=label)
    path = tmp_path / name
    path.write_text(json.dumps([row]), encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# Documented examples, byte for byte
# ---------------------------------------------------------------------------


def test_zeta_two_prec_seven(capsys):
    code, out, err = run(capsys, "zeta", "2", "--prec", "7")
    assert code == 0
    assert out == "1.644934 ± 1e-7\n"
    assert err == ""


def test_g2_compare_example(capsys):
    code, out, err = run(capsys, "g2-compare", "exp:2008", "th:2012")
    assert code == 0
    assert out == "-1.05e-12 ± 0.82e-12\n"


def test_zeta_one_divergence(capsys):
    code, out, err = run(capsys, "zeta", "1")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")
    assert "diverge" in err


# ---------------------------------------------------------------------------
# Every subcommand runs
# ---------------------------------------------------------------------------

SMOKE = [
    ("zeta", "3"),
    ("phi", "1"),
    ("polylog", "2", "1/2"),
    ("gamma",),
    ("gamma", "--method", "ZETA_SERIES", "--prec", "12"),
    ("bernoulli", "12"),
    ("mzv", "2", "3"),
    ("multiphi", "1", "3"),
    ("stuffle-check", "2", "3"),
    ("identity-check", "dilog-reflection", "--x", "0.5"),
    ("identity-check", "cotangent", "--x", "0.5", "--terms", "30"),
    ("identity-check", "euler-product", "--s", "2", "--prime-bound", "1000"),
    ("identity-check", "phi-funceq", "--s", "0.3"),
    ("coact", "zeta_m(3)"),
    ("conjugates", "zeta_m(3)"),
    ("per", "zeta_m(2)"),
    ("period", "bubble", "--samples", "20000"),
    ("selftest", "--samples", "20000"),
    ("g2-assemble",),
    ("g2-invert-alpha", "exp:2008"),
    ("g2-compare", "th:2012", "th:2017"),
    ("registry-list",),
]


@pytest.mark.parametrize("argv", SMOKE, ids=lambda a: " ".join(a))
def test_subcommand_smoke(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0
    assert out.strip()
    assert err == ""


def test_all_commands_covered_by_smoke():
    from euler_periods.cli import _COMMANDS

    assert {argv[0] for argv in SMOKE} == set(_COMMANDS)


# ---------------------------------------------------------------------------
# Pinned outputs
# ---------------------------------------------------------------------------


def test_bernoulli_exact_fraction(capsys):
    code, out, _ = run(capsys, "bernoulli", "12")
    assert code == 0
    assert out == "-691/2730\n"


def test_mzv_output(capsys):
    code, out, _ = run(capsys, "mzv", "3", "5")
    assert code == 0
    assert out == "0.0377076729848475 ± 1e-15\n"


def test_multiphi_output(capsys):
    code, out, _ = run(capsys, "multiphi", "1", "3")
    assert code == 0
    assert out == "-0.117875999650509 ± 1e-15\n"


def test_stuffle_check_passes(capsys):
    code, out, _ = run(capsys, "stuffle-check", "2", "3")
    assert code == 0
    assert out.startswith("residual ")
    assert out.rstrip().endswith(": pass")


def test_coact_line(capsys):
    code, out, _ = run(capsys, "coact", "zeta_m(3)")
    assert code == 0
    assert out == "1 (x) zeta_m(3) + zeta_u(3) (x) 1\n"


def test_conjugates_lines(capsys):
    code, out, _ = run(capsys, "conjugates", "zeta_m(3)")
    assert code == 0
    assert out.splitlines() == ["zeta_m(3)", "1", "span dimension 2"]


def test_per_kernel_combination(capsys):
    code, out, _ = run(capsys, "per", "5*zeta_m(4) - 2*zeta_m(2)*zeta_m(2)")
    assert code == 0
    value = float(out.split(" ± ")[0])
    assert abs(value) < 1e-12
    assert out.rstrip().endswith("± 1e-15")


def test_g2_assemble_default_alpha(capsys):
    code, out, _ = run(capsys, "g2-assemble")
    assert code == 0
    assert out == "0.001159652181664 ± 2.3e-12\n"


def test_g2_invert_alpha_output(capsys):
    code, out, _ = run(capsys, "g2-invert-alpha", "exp:2008")
    assert code == 0
    assert out == "137.035999159537 ± 2.1e-7\n"


def test_registry_list_shape(capsys):
    code, out, _ = run(capsys, "registry-list")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 16
    assert any(line.startswith("exp:2008") for line in lines)
    assert all(" ± " in line for line in lines)


def test_selftest_reports_pass(capsys):
    code, out, _ = run(capsys, "selftest", "--samples", "20000")
    assert code == 0
    assert "pass" in out
    assert "seed 42" in out


def test_period_seed_flag_changes_result(capsys):
    _, out_a, _ = run(capsys, "period", "bubble", "--samples", "20000")
    _, out_b, _ = run(capsys, "period", "bubble", "--samples", "20000", "--seed", "5")
    assert out_a != out_b


# ---------------------------------------------------------------------------
# JSON mode
# ---------------------------------------------------------------------------

JSON_CASES = [
    ("zeta", "2", "--prec", "7"),
    ("mzv", "2", "3"),
    ("g2-compare", "exp:2008", "th:2012"),
    ("conjugates", "zeta_m(3)"),
    ("registry-list",),
    ("stuffle-check", "2", "3"),
]


@pytest.mark.parametrize("argv", JSON_CASES, ids=lambda a: " ".join(a))
def test_json_embeds_plain_output(capsys, argv):
    code, plain, _ = run(capsys, *argv)
    assert code == 0
    code2, out, _ = run(capsys, *argv, "--json")
    assert code2 == 0
    doc = json.loads(out)
    assert doc["command"] == argv[0]
    assert doc["output"] == plain.rstrip("\n")


def test_json_zeta_fields(capsys):
    _, out, _ = run(capsys, "zeta", "2", "--prec", "7", "--json")
    doc = json.loads(out)
    assert doc == {"command": "zeta", "value": "1.644934", "bound": "1e-7",
                   "output": "1.644934 ± 1e-7"}


def test_json_compare_fields(capsys):
    _, out, _ = run(capsys, "g2-compare", "exp:2008", "th:2012", "--json")
    doc = json.loads(out)
    assert doc["difference"] == "-1.05e-12"
    assert doc["uncertainty"] == "0.82e-12"
    assert doc["pull"] == "-1.276"


def test_json_invert_reports_iterations(capsys):
    _, out, _ = run(capsys, "g2-invert-alpha", "exp:2008", "--json")
    doc = json.loads(out)
    assert 1 <= doc["iterations"] <= 6


# ---------------------------------------------------------------------------
# Determinism
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ("zeta", "2", "--prec", "30"),
    ("mzv", "2", "3"),
    ("period", "bubble", "--samples", "20000"),
    ("g2-invert-alpha", "exp:2008"),
], ids=lambda a: " ".join(a))
def test_reruns_are_byte_identical(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------


def test_exit_one_uncertifiable_cutoff(capsys):
    code, out, err = run(capsys, "multiphi", "1", "3", "--cutoff", "12")
    assert code == 1
    assert "certified bound" in err


@pytest.mark.parametrize("argv", [
    ("zeta", "1"),
    ("zeta", "abc"),
    ("zeta", "2", "--prec", "0"),
    ("zeta", "2", "--prec", "101"),
    ("polylog", "3", "3/4"),
    ("polylog", "2", "7/5"),
    ("mzv", "2", "1"),
    ("mzv", "2", "2", "2", "2"),
    ("bernoulli", "-1"),
    ("stuffle-check", "1", "2"),
    ("period", "triangle"),
    ("period", "heptagon"),
    ("per", "Li_m(2; 2/1)"),
    ("coact", "zeta_m("),
    ("coact", "zeta_m(1)"),
    ("g2-compare", "exp:2008", "exp:1899"),
    ("g2-invert-alpha", "not-a-number"),
], ids=lambda a: " ".join(a))
def test_exit_two_invalid_input(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    if err:
        assert err.startswith("error:") or "usage" in err


def test_exit_two_no_command(capsys):
    code, out, err = run(capsys)
    assert code == 2
    assert "usage" in err


def test_exit_two_unknown_command(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2


def test_exit_three_identity_tolerance(capsys):
    code, out, _ = run(capsys, "identity-check", "euler-product",
                       "--s", "2", "--prime-bound", "100", "--tol", "1e-9")
    assert code == 3
    assert "FAIL" in out


def test_identity_tolerance_pass_keeps_zero(capsys):
    code, out, _ = run(capsys, "identity-check", "dilog-reflection",
                       "--x", "0.5", "--tol", "1e-9")
    assert code == 0
    assert "pass" in out


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "usage" in out


# ---------------------------------------------------------------------------
# Registry resolution order
# ---------------------------------------------------------------------------


def test_registry_flag_overrides_default(capsys, tmp_path):
    path = write_registry(tmp_path)
    code, out, _ = run(capsys, "registry-list", "--registry", path)
    assert code == 0
    assert "probe:2026" in out
    assert "exp:2008" not in out


def test_registry_env_fallback(capsys, tmp_path, monkeypatch):
    path = write_registry(tmp_path)
    monkeypatch.setenv("EULER_PERIODS_REGISTRY", path)
    code, out, _ = run(capsys, "registry-list")
    assert code == 0
    assert "probe:2026" in out


def test_registry_flag_beats_env(capsys, tmp_path, monkeypatch):
    env_path = write_registry(tmp_path, "env.json", label="fromenv:2026")
    flag_path = write_registry(tmp_path, "flag.json", label="fromflag:2026")
    monkeypatch.setenv("EULER_PERIODS_REGISTRY", env_path)
    code, out, _ = run(capsys, "registry-list", "--registry", flag_path)
    assert code == 0
    assert "fromflag:2026" in out
    assert "fromenv:2026" not in out


def test_registry_broken_file_is_input_error(capsys, tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text("[{", encoding="utf-8")
    code, _, err = run(capsys, "registry-list", "--registry", str(bad))
    assert code == 2
    assert "JSON" in err
