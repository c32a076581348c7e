import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcluster import seedfile
from qcluster.catalog import builtin_seed
from qcluster.cli import EXIT_BOUND, EXIT_OK, EXIT_VALIDATION, EXIT_VERIFY, main
from qcluster.seed import QuantumSeed


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_VERIFY, EXIT_VALIDATION, EXIT_BOUND}) == 4
    assert EXIT_OK == 0


def test_show_sl2():
    code, out, _ = run("show", "sl2")
    assert code == EXIT_OK
    assert "  a   0\n  b  -1\n  c  -1" in out
    assert "compatible, diagonal (2,)" in out
    assert "a -> b" in out and "frozen (boxed): b, c" in out


def test_show_gr25_machine():
    code, out, _ = run("show", "gr25", "--format", "machine")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["diagonal"] == [2, 2]
    assert data["BtL"][0] == [0, 2, 0, 0, 0, 0, 0]


def test_mutate_sl2():
    code, out, _ = run("mutate", "sl2", "0")
    assert code == EXIT_OK
    assert "a*d = 1 + q*b*c" in out
    assert "q*a^-1*b*c + a^-1" in out


def test_mutate_gr25():
    code, out, _ = run("mutate", "gr25", "1")
    assert "X2*X2' = q^-1*X3*X7 + q*X1*X6" in out
    assert "D14*D35 = q^-1*D13*D45 + q*D15*D34" in out


def test_mutate_twice_returns_to_start():
    code, out, _ = run("mutate", "uqn12minus", "1", "1", "--format", "machine")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["equals_initial"]
    assert data["steps"][1]["identified"] == "D14"


def test_mutate_uqn12_half_integer_relation():
    _, out, _ = run("mutate", "uqn12minus", "0", "1", "2")
    assert "X3*X3' = q^(-1/2)*X2' + q^(1/2)*X4" in out
    assert "q^(-1/2)*D26" in out


@pytest.mark.parametrize("position", ["0", "9"])
def test_mutate_rejects_frozen_and_out_of_range(position):
    code, _, err = run("mutate", "gr25", position)
    assert code == EXIT_VALIDATION
    assert err


def test_enumerate_gr25():
    code, out, _ = run("enumerate", "gr25")
    assert code == EXIT_OK
    assert "vertices: 5" in out
    assert "variables: 10 total, 5 mutable, 5 frozen" in out
    assert "biject with the almost positive roots" in out


def test_enumerate_uqn12_machine(tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run("enumerate", "uqn12minus", "--format", "machine", "--dot", str(dot))
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["n_vertices"] == 14
    assert data["n_undirected_edges"] == 21
    assert len(data["mutable_variables"]) + len(data["frozen_variables"]) == 13
    assert data["almost_positive_roots"]
    assert dot.read_text().startswith("graph exchange_graph")


def test_enumerate_bound_exceeded():
    code, _, err = run("enumerate", "uqn12minus", "--max", "5")
    assert code == EXIT_BOUND
    assert "bound exceeded" in err


@pytest.mark.parametrize("name", ["sl2", "gr25"])
def test_verify_passes(name):
    code, out, _ = run("verify", name)
    assert code == EXIT_OK
    assert out.rstrip().endswith("OK")


def test_verify_gr25_counts_ten_exchanges():
    _, out, _ = run("verify", "gr25", "--format", "machine")
    data = json.loads(out)
    exchanges = [c for c in data["checks"] if c["kind"] == "exchange"]
    assert len(exchanges) == 10 and all(c["ok"] for c in exchanges)


def test_verify_failure_exit_code():
    code, out, _ = run("verify", "uqn2minus")
    assert code == EXIT_VERIFY
    assert "[FAIL] identity: degree-7 form of the mu2 relation, with -q^-1*g11*g13*g22" in out
    assert "flagged" in out


def test_verify_rejects_unknown_and_unrealized():
    assert run("verify", "nonsense")[0] == EXIT_VALIDATION
    assert run("verify", "n2minus")[0] == EXIT_VALIDATION


def test_export_dot(tmp_path):
    code, out, _ = run("export-dot", "gr25", "--what", "quiver")
    assert code == EXIT_OK and out.count("shape=box") == 5
    target = tmp_path / "x.dot"
    run("export-dot", "gr25", "-o", str(target))
    first = target.read_text()
    run("export-dot", "gr25", "-o", str(target))
    assert target.read_text() == first


def test_seed_file_source(tmp_path):
    path = tmp_path / "sl2.seed"
    seedfile.dump(builtin_seed("sl2").seed, path, comment="quantum SL2")
    code, out, _ = run("mutate", str(path), "0")
    assert code == EXIT_OK
    assert "a*a' = 1 + q*b*c" in out


def test_missing_and_malformed_files(tmp_path):
    assert run("show", str(tmp_path / "missing.seed"))[0] == EXIT_VALIDATION
    bad = tmp_path / "bad.seed"
    bad.write_text("names: a b\nmutable: 0\nB: 2x1\n  0\n  1\nL: 2x2\n  0 1\n  1 0\n")
    code, _, err = run("show", str(bad))
    assert code == EXIT_VALIDATION
    assert "skew" in err


def test_incompatible_seed_file(tmp_path):
    bad = tmp_path / "inc.seed"
    bad.write_text("names: a b c\nmutable: 0\nB: 3x1\n  0\n  -1\n  -1\nL: 3x3\n"
                   "  0 1 1\n  -1 0 1\n  -1 -1 0\n")
    code, out, _ = run("show", str(bad))
    assert code == EXIT_VALIDATION
    assert "NOT compatible" in out


@pytest.mark.parametrize(
    "text, line",
    [
        ("names: a\nmutable: x\n", "line 2"),
        ("names: a\nmutable: 0\nB: 1x1\n  0 0\n", "line 4"),
        ("names: a\nnames: b\n", "line 2"),
        ("names: a\nB: 1y1\n", "line 2"),
        ("names: a\nwhat: 1\n", "line 2"),
    ],
)
def test_seed_file_errors_carry_line_numbers(text, line):
    with pytest.raises(seedfile.SeedFileError, match=line):
        seedfile.loads(text)


@pytest.mark.parametrize("name", ["sl2", "gr25", "n2minus", "uqn12minus", "projective(3)"])
def test_seed_file_round_trip(name):
    seed = builtin_seed(name).seed
    back = seedfile.loads(seedfile.dumps(seed, comment="round trip\nsecond line"))
    assert (back.names, back.B, back.L) == (seed.names, seed.B, seed.L)


@given(st.lists(st.integers(0, 2), max_size=8))
def test_seed_file_round_trip_after_mutation(walk):
    seed = builtin_seed("uqn12minus").seed
    plain = QuantumSeed(seed.names, seed.B, seed.L).mutate_sequence(walk)
    back = seedfile.loads(seedfile.dumps(plain), track=False)
    assert back == plain


def test_mutate_gr25_twice_returns_original_seed():
    code, out, _ = run("mutate", "gr25", "1", "1")
    assert code == EXIT_OK
    assert "resulting seed equals the initial seed" in out
