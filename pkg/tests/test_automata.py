import random

import pytest

from parikh import automata as au
from parikh import corpus
from parikh import semilinear as sl


def test_run_finite_on_fig1():
    a = corpus.fig1()
    assert au.run_finite(a, "ab")[:2] == ("q0", (1, 1))
    assert au.run_finite(a, "abc")[:2] == ("q1", (1, 1))


def test_run_blocks_on_missing_transition():
    assert au.run_finite(corpus.only("a"), "ab") is None


def test_restriction_size():
    a = corpus.fig1()
    w = au.LassoWord("ab", "c")
    r = au.restrict_to_lasso(a, w)
    assert len(r.states) == len(a.states) * 3
    assert au.is_deterministic(r)


def test_lasso_word_requires_period():
    with pytest.raises(ValueError):
        au.LassoWord("a", "")


def test_lasso_letters():
    w = au.LassoWord("ab", "cd")
    assert w.prefix(7) == tuple("abcdcdc")


def test_corpus_automata_validate():
    for name, build in corpus.EXAMPLES.items():
        assert au.validate(build()) == [], name


def test_validate_reports_problems():
    pa = au.FinitePA(("p",), ("a",), "p", (au.Transition("p", "a", (1,), "q"),), frozenset(), sl.universal_nat(1), 1)
    assert au.validate(pa)


def test_bad_condition():
    with pytest.raises(au.AutomatonError):
        au.make_omega(["p"], "a", "p", [("p", "a", (), "p")], {"p"}, condition="parity", dim=0)


def test_determinism_and_completeness():
    assert au.is_deterministic(corpus.fig1())
    assert au.is_complete(corpus.fig1())
    assert not au.is_complete(corpus.only("a"))
    done = au.complete_with_sink(corpus.only("a"))
    assert au.is_complete(done) and au.is_deterministic(done)
    assert len(done.states) == 2


def test_product_states_and_dimension():
    p = au.product(corpus.fig1(), corpus.balanced(alphabet="abc"))
    assert p.dim == 4
    assert set(p.states) <= set(au.full_product_states(corpus.fig1(), corpus.balanced(alphabet="abc")))


def test_rename_and_canonical_names_preserve_language():
    from parikh.lasso import accepts

    a = corpus.anbn_blocks()
    b = au.rename_states(a, {q: f"x{i}" for i, q in enumerate(a.states)})
    c = au.canonical_names(a)
    rng = random.Random(1)
    for _ in range(30):
        u = "".join(rng.choice("ab") for _ in range(rng.randint(0, 4)))
        v = "".join(rng.choice("ab") for _ in range(rng.randint(1, 4)))
        w = au.LassoWord(u, v)
        assert accepts(a, w) == accepts(b, w) == accepts(c, w)


def test_trim_drops_unreachable():
    a = au.make_omega(["p", "q"], "a", "p", [("p", "a", (), "p"), ("q", "a", (), "q")], {"p"}, dim=0)
    assert au.trim(a).states == ("p",)


def test_replay_checks_run():
    a = corpus.fig1()
    run = au.run_finite(a, "abc")[2]
    assert au.replay(a, run)
    # the second c of "cc" starts in q1, not in the initial state
    assert not au.replay(a, au.run_finite(a, "cc")[2][1:])
