import pytest

from parikh import cli
from parikh.textio import parse_automaton


def run(*argv):
    return cli.run(list(argv))


def test_member_fig1():
    assert run("member", "--automaton", "example:fig1", "--period", "c") == (0, "ACCEPT\n", "")
    assert run("member", "--automaton", "example:fig1", "--stem", "a", "--period", "c")[0] == 1


def test_member_decompose():
    code, out, _ = run("member", "--automaton", "example:anbn-c-limit", "--stem", "aabb", "--period", "c",
                       "--decompose")
    assert code == 0
    assert "limit 2,2" in out.splitlines()


def test_emptiness_with_witness():
    code, out, _ = run("empty", "--automaton", "example:anbn-blocks")
    assert code == 1
    assert out == "NO\nwitness stem=a period=ba\n"


def test_unsupported_condition_is_unknown(tmp_path):
    f = tmp_path / "s.pa"
    f.write_text("pa dim=1 condition=safety\nalphabet a\nstates s\ninitial s\naccepting s\ntrans s a 1 s\n")
    code, out, _ = run("empty", "--automaton", str(f))
    assert code == 2 and out.startswith("UNKNOWN")


def test_universal_and_include():
    code, out, _ = run("universal", "--automaton", "example:anbn-blocks")
    assert code == 1 and "witness" in out
    assert run("include", "--left", "example:anbn-c-limit", "--right", "example:anbn-c-limit")[:2] == (0, "YES\n")


def test_intersect_and_modelcheck():
    assert run("intersect-empty", "--left", "example:anbn-blocks", "--right", "example:inf-a")[0] == 1
    code, out, _ = run("modelcheck", "--system", "example:inf-a", "--spec", "example:anbn-blocks",
                       "--mode", "existential")
    assert code == 0 and out.startswith("YES")


def test_validate():
    code, out, _ = run("validate", "--automaton", "example:fig1")
    assert code == 0 and out.startswith("OK")


def test_transform_writes_file(tmp_path):
    out_file = tmp_path / "c.pa"
    code, out, _ = run("transform", "--op", "sr-complement", "--in", "example:anbn-blocks", "--out", str(out_file),
                       "--report")
    assert code == 0
    assert "states 5 -> 30" in out
    assert parse_automaton(out_file.read_text()).condition == "reachreg"


def test_transform_unknown_op():
    code, _, err = run("transform", "--op", "nope", "--in", "example:fig1")
    assert code == 3 and "unknown op" in err


def test_reduce_partition_and_intexpr():
    code, out, _ = run("reduce", "partition", "--set", "1,2,4", "--decide")
    assert code == 0 and out.rstrip().endswith("YES")
    code, out, _ = run("reduce", "intexpr", "--e1", "3", "--e2", "2", "--kind", "universality", "--decide")
    assert code == 1 and "NO" in out.splitlines()


def test_reduce_tcm(tmp_path):
    m = tmp_path / "loop.tcm"
    m.write_text("ifz 0 1 1\nstop\n")
    prefix = str(tmp_path / "loop-")
    assert run("reduce", "tcm", "--in", str(m), "--out-prefix", prefix)[0] == 0
    for part in ("A1", "A2"):
        code, out, _ = run("member", "--automaton", f"{prefix}{part}.pa", "--period", "1.Z_a")
        assert (code, out) == (0, "ACCEPT\n")


def test_zreach(tmp_path):
    f = tmp_path / "z.zv"
    f.write_text("zvass dim=1 levels=0,1\ntrans p 1 test=0 p\ntrans p 0 test=1 q\n")
    assert run("zreach", "--in", str(f), "--src", "p:0", "--dst", "q:0") == (0, "YES\nstep p 0 test=1 q\n", "")
    code, out, _ = run("zreach", "--in", str(f), "--src", "p:1", "--dst", "q:0", "--max-tests", "2")
    assert code == 2
    assert out == "UNKNOWN\nnote no run with at most 2 zero-tests\n"


@pytest.mark.parametrize("argv", [
    ("member",),
    ("bogus",),
    ("member", "--automaton", "/nonexistent/file.pa", "--period", "a"),
    ("member", "--automaton", "example:nope", "--period", "a"),
    ("member", "--automaton", "example:fig1", "--period", "x"),
    ("empty", "--automaton", "example:fig1", "--search-bound", "-1"),
])
def test_errors_exit_3(argv):
    code, out, err = run(*argv)
    assert code == 3 and out == "" and err.startswith("error:")


def test_incomplete_automaton_hint(tmp_path):
    f = tmp_path / "r.pa"
    f.write_text("pa dim=1 condition=strongreset\nalphabet a b\nstates s\ninitial s\naccepting s\ntrans s a 1 s\n")
    code, _, err = run("transform", "--op", "sr-complement", "--in", str(f))
    assert code == 3 and "--autocomplete" in err
    assert run("transform", "--op", "sr-complement", "--in", str(f), "--autocomplete")[0] == 0


def test_reachability_is_never_autocompleted(tmp_path):
    # a sink would keep earlier hits alive, so completion would change the language
    f = tmp_path / "r.pa"
    f.write_text("pa dim=0 condition=reachability\nalphabet a b\nstates s\ninitial s\naccepting s\ntrans s a () s\n")
    code, _, err = run("transform", "--op", "reach-to-reachreg", "--in", str(f), "--autocomplete")
    assert code == 3 and "refusing" in err and "pass --autocomplete" not in err


def test_main_returns_exit_code(capsys):
    assert cli.main(["member", "--automaton", "example:fig1", "--period", "c"]) == 0
    assert capsys.readouterr().out == "ACCEPT\n"
