"""CLI: golden-file regressions, exit codes, and output determinism."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from tcaseries import cli

GOLDEN = Path(__file__).parent / "golden"


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


GOLDEN_CASES = [
    ("detring_d3_r1_sigma.json", ["detring", "--d", "3", "--r", "1", "--form", "sigma"]),
    ("detring_d3_r1_sigma.txt", ["detring", "--d", "3", "--r", "1", "--form", "sigma", "--text"]),
    ("detring_d2_r1_s_n6.json", ["detring", "--d", "2", "--r", "1", "--form", "s", "--truncate", "6"]),
    ("detring_d2_r2_hilbert.json", ["detring", "--d", "2", "--r", "2", "--form", "hilbert"]),
    ("theta_d3_r1_alpha2.json", ["theta", "--d", "3", "--r", "1", "--alpha", "[2]"]),
    ("theta_d2_r1_mu1_s_n5.json", ["theta", "--d", "2", "--r", "1", "--mu", "[1]", "--form", "s", "--truncate", "5"]),
    ("hilbert_d3_r1.json", ["hilbert", "--d", "3", "--r", "1"]),
    ("hilbert_d3_r1.txt", ["hilbert", "--d", "3", "--r", "1", "--text"]),
    ("enhanced_d2_r1_n4.json", ["enhanced", "--d", "2", "--r", "1", "--truncate", "4"]),
    ("gessel_d2_r1_n4.json", ["gessel", "--d", "2", "--r", "1", "--truncate", "4"]),
    ("hilbschur_sym2_n6.json", ["hilbschur", "--rep", "sym2", "--truncate", "6"]),
    ("invariants_sl2_nmax6.json", ["invariants", "--group", "sl2", "--rep", "standard", "--nmax", "6"]),
    ("invariants_trivial_dim3_nmax4.txt", ["invariants", "--group", "trivial", "--dim", "3", "--nmax", "4", "--text"]),
    ("dfinite_catalan_o3_d3.json", ["dfinite", "--series", "catalan-egf", "--max-order", "3", "--max-degree", "3"]),
    ("dfinite_catalan_o3_d3.txt", ["dfinite", "--series", "catalan-egf", "--max-order", "3", "--max-degree", "3", "--text"]),
    ("fourier_d3_r1.json", ["fourier", "--d", "3", "--r", "1"]),
    ("charpoly_d2_at31.json", ["charpoly", "--d", "2", "--at", "[3,1]"]),
    ("charpoly_d3_form.json", ["charpoly", "--d", "3"]),
    ("oracle_empty.json", ["oracle-check", "--suite", "empty"]),
]


@pytest.mark.parametrize("fname,argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(fname, argv):
    code, out, err = run_cli(argv)
    assert code == 0 and err == ""
    assert out == (GOLDEN / fname).read_text()
    code2, out2, _ = run_cli(argv)
    assert code2 == 0 and out2 == out  # byte-identical reruns


def test_spec_example_detring_sigma():
    code, out, _ = run_cli(["detring", "--d", "3", "--r", "1", "--form", "sigma"])
    assert code == 0
    obj = json.loads(out)
    assert obj["result"] == {"terms": {"[]": {"[0]": "1", "[1]": "2", "[2]": "1"}}}
    code, out, _ = run_cli(["detring", "--d", "3", "--r", "1", "--form", "sigma", "--text"])
    assert out == "sigma_2 + 2*sigma_1 + sigma_0\n"


def test_spec_example_invariants():
    code, out, _ = run_cli(["invariants", "--group", "sl2", "--rep", "standard",
                            "--nmax", "6"])
    assert code == 0
    assert json.loads(out)["result"]["dims"] == [1, 0, 1, 0, 2, 0, 5]


def test_spec_example_dfinite_bessel():
    code, out, _ = run_cli(["dfinite", "--series", "catalan-egf",
                            "--max-order", "3", "--max-degree", "3"])
    assert code == 0
    res = json.loads(out)["result"]
    assert res["found"] is True
    assert res["text"] == "t^2*y'' + 3*t*y' - 4*t^2*y"
    assert res["operator"] == [["0", "0", "-4"], ["0", "3"], ["0", "0", "1"]]


def test_result_json_roundtrips():
    from tcaseries.grassmann import detring_formal_character
    from tcaseries.seriesforms import sigma_from_json
    _, out, _ = run_cli(["detring", "--d", "4", "--r", "2"])
    obj = json.loads(out)
    assert sigma_from_json(obj["result"]) == detring_formal_character(4, 2)


def test_enhanced_expansion_matches_gessel():
    _, out_e, _ = run_cli(["enhanced", "--d", "2", "--r", "1", "--truncate", "4"])
    _, out_g, _ = run_cli(["gessel", "--d", "2", "--r", "1", "--truncate", "4"])
    exp = json.loads(out_e)["result"]["expansion"]
    assert exp == json.loads(out_g)["result"]


def test_fourier_hilb_payload():
    payload = json.dumps({"0": ["0", "1"]})
    code, out, _ = run_cli(["fourier", "--d", "2", "--hilb", payload])
    assert code == 0
    assert json.loads(out)["result"] == {"2": ["0", "-1"]}


def test_oracle_suites_pass():
    for suite in ("theta-vs-pushforward", "detring-bruteforce",
                  "gessel-vs-sigma", "enh1-integral", "empty"):
        code, out, _ = run_cli(["oracle-check", "--suite", suite])
        obj = json.loads(out)
        assert code == 0 and obj["result"]["failed"] == 0, suite


def test_oracle_suite_failure_exit_code(monkeypatch):
    monkeypatch.setitem(cli._SUITES, "empty",
                        lambda: [("rigged", False, "expected 1 got 2")])
    code, out, _ = run_cli(["oracle-check", "--suite", "empty", "--text"])
    assert code == 1
    assert "FAIL rigged: expected 1 got 2" in out
    assert "passed 0 failed 1" in out


EXIT_CODE_CASES = [
    (["detring", "--d", "2"], 2),                                  # missing flag
    (["detring", "--d", "2", "--r", "1", "--form", "s"], 2),       # missing truncate
    (["detring", "--d", "2", "--r", "5"], 3),                      # r > d
    (["theta", "--d", "2", "--r", "1", "--alpha", "[1,1]"], 3),    # len(alpha) > r
    (["gessel", "--d", "2", "--r", "0", "--truncate", "4"], 3),    # r < 1
    (["oracle-check", "--suite", "nope"], 2),                      # unknown suite
    (["nosuchcommand"], 2),
    (["detring", "--d", "2", "--r", "1", "--threads", "0"], 2),
    (["detring", "--d", "2", "--r", "1", "--json", "--text"], 2),
    (["invariants", "--group", "trivial", "--nmax", "3"], 2),      # missing --dim
    (["invariants", "--group", "sl2xsl2", "--rep", "standard", "--nmax", "2"], 2),
    (["fourier", "--d", "2"], 2),                                  # neither input
    (["fourier", "--d", "2", "--r", "1", "--hilb", "{}"], 2),      # both inputs
    (["fourier", "--d", "2", "--hilb", "not json"], 2),
    (["fourier", "--d", "2", "--hilb", "{\"3\": [\"1\"]}"], 3),    # layer > d
    (["dfinite", "--series", "bell-egf", "--max-order", "5",
      "--max-degree", "5", "--nmax", "40"], 3),                    # too short
    (["dfinite", "--series", "bell-egf", "--max-order", "5",
      "--max-degree", "5", "--nmax", "60"], 4),                    # honest miss
    (["charpoly", "--d", "2", "--at", "[9,9]", "--tcap", "3"], 3),  # part > cap
]


@pytest.mark.parametrize("argv,expected", EXIT_CODE_CASES,
                         ids=[" ".join(c[0]) for c in EXIT_CODE_CASES])
def test_exit_codes(argv, expected):
    code, _, _ = run_cli(argv)
    assert code == expected


def test_not_found_report_disclaims_proof():
    code, out, _ = run_cli(["dfinite", "--series", "bell-egf", "--max-order", "5",
                            "--max-degree", "5", "--nmax", "60"])
    assert code == 4
    res = json.loads(out)["result"]
    assert res["found"] is False
    assert "not a proof" in res["note"]


def test_threads_flag_accepted():
    code, out, _ = run_cli(["detring", "--d", "2", "--r", "1", "--threads", "4"])
    assert code == 0
    _, base, _ = run_cli(["detring", "--d", "2", "--r", "1"])
    assert out == base


def test_builtin_series_values():
    from fractions import Fraction as F
    cat = cli.builtin_series("catalan-egf", 7)
    assert cat == [F(1), F(0), F(1, 2), F(0), F(1, 12), F(0), F(1, 144)]
    sq = cli.builtin_series("catalan-sq-ogf", 7)
    assert sq == [F(1), F(0), F(1), F(0), F(4), F(0), F(25)]
    bell = cli.builtin_series("bell-egf", 6)
    assert [bell[n] * cli.factorial(n) for n in range(6)] == [1, 1, 2, 5, 15, 52]


def test_every_subcommand_has_golden_coverage():
    covered = {argv[0] for _, argv in GOLDEN_CASES}
    assert covered == set(cli._HANDLERS)
