import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parikh import corpus, lasso
from parikh import decisions as D
from parikh import reductions as R
from parikh import semilinear as sl
from parikh.automata import LassoWord, accepts_finite
from parikh.lasso import UnsupportedCondition
from oracles import finite_words, lassos, random_det_pa

seeds = st.integers(0, 10**6)


def test_empty_finite_fig1():
    v = D.empty_finite(corpus.fig1().pa)
    assert v.answer == D.NO
    assert v.witness.word == ("c",)


def test_empty_finite_witness_shortest_for_shifted_constraint():
    # images must be (n+1, n+1): the shortest accepted word has length 3
    a = corpus.fig1().with_constraint(sl.linear_set((1, 1), [(1, 1)]))
    v = D.empty_finite(a.pa)
    assert v.answer == D.NO and len(v.witness.word) == 3
    assert accepts_finite(a.pa, v.witness.word)


def test_anbn_emptiness():
    a = corpus.anbn_blocks()
    v = D.empty_omega(a)
    assert v.answer == D.NO
    assert lasso.accepts(a, v.witness.lasso)
    assert D.empty_omega(a.with_constraint(sl.empty_set(2))).answer == D.YES


def test_emptiness_of_safety_unsupported():
    with pytest.raises(UnsupportedCondition):
        D.empty_omega(corpus.balanced("safety"))


def test_universal_det_finite():
    inst = R.universality_instance(R.parse_intexpr("2"), R.parse_intexpr("1"))
    v = D.universal_det_finite(inst)
    assert v.answer == D.NO
    assert not accepts_finite(inst, v.witness.word)


def test_sr_inclusion():
    a = corpus.anbn_blocks()
    u = corpus.universal_sr()
    assert D.include_det_sr(a, u).answer == D.YES
    v = D.include_det_sr(u, a)
    assert v.answer == D.NO
    w = v.witness.lasso
    assert lasso.accepts(u, w) and not lasso.accepts(a, w)


def test_universal_det_sr():
    assert D.universal_det_sr(corpus.universal_sr()).answer == D.YES
    v = D.universal_det_sr(corpus.anbn_blocks())
    assert v.answer == D.NO
    assert not lasso.accepts(corpus.anbn_blocks(), v.witness.lasso)


def test_buchi_pa_intersection_is_only_bounded():
    v = D.intersect_empty_buchi_pa_bounded(corpus.balanced(), corpus.balanced(ratio=2), 2, 2)
    # along a lasso the a/b ratio settles, so no lasso hits both constraints
    # infinitely often; a bounded search finds nothing and cannot conclude
    assert v.answer == D.UNKNOWN
    assert "≤ 2" in v.bound_note


def test_sr_buchi_intersection():
    v = D.intersect_empty_sr_buchi(corpus.anbn_blocks(), corpus.inf_many())
    assert v.answer == D.NO
    assert lasso.accepts(corpus.anbn_blocks(), v.witness.lasso)
    assert lasso.accepts(corpus.inf_many(), v.witness.lasso)
    assert D.intersect_empty_sr_buchi(corpus.anbn_blocks(), corpus.only("b")).answer == D.YES


def test_limit_decisions():
    a = corpus.anbn_c_limit()
    v = D.universal_det_limit(a)
    assert v.answer == D.NO and not lasso.accepts(a, v.witness.lasso)
    assert D.include_det_limit(a, a).answer == D.YES
    v = D.intersect_empty_limit(a, a)
    assert v.answer == D.NO and lasso.accepts(a, v.witness.lasso)


def test_model_checking_wrappers():
    system = corpus.inf_many()
    assert D.mc_existential(system, corpus.anbn_blocks()).answer == D.YES
    v = D.mc_universal(corpus.universal_sr(), corpus.anbn_blocks())
    assert v.answer == D.NO


def test_verdict_validates_answer():
    with pytest.raises(ValueError):
        D.Verdict("maybe")


def test_find_path_respects_constraint():
    from parikh import presburger as pb
    from parikh.automata import Transition

    ts = [Transition("p", "a", (1, 0), "p"), Transition("p", "b", (0, 1), "q"), Transition("q", "b", (0, 1), "q")]

    def extra(terms, _sel):
        return pb.conj(pb.eq(terms[0], 2), pb.eq(terms[1], 3))

    path = D.find_path(ts, 2, "p", ["q"], extra=extra)
    assert [t.letter for t in path] == ["a", "a", "b", "b", "b"]
    assert D.find_path(ts, 2, "q", ["p"]) is None


# ---- properties


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_empty_finite_matches_enumeration(seed):
    rng = random.Random(seed)
    a = random_det_pa(rng, n_states=rng.randint(1, 3), dim=rng.randint(1, 2)).pa
    v = D.empty_finite(a)
    if v.answer == D.NO:
        assert accepts_finite(a, v.witness.word)
    else:
        assert not any(accepts_finite(a, w) for w in finite_words("ab", 6))


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(["reachability", "buchi", "reachreg", "limit", "strongreset", "weakreset"]))
def test_empty_omega_against_lasso_search(seed, cond):
    rng = random.Random(seed)
    a = random_det_pa(rng, n_states=rng.randint(1, 3), dim=1, condition=cond, allow_inf=cond == "limit")
    v = D.empty_omega(a)
    if v.answer == D.NO:
        assert lasso.accepts(a, v.witness.lasso)
    else:
        assert not any(lasso.accepts(a, w) for w in lassos("ab", 3, 3))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_universal_det_finite_matches_enumeration(seed):
    rng = random.Random(seed)
    a = random_det_pa(rng, n_states=rng.randint(1, 2), dim=1).pa
    v = D.universal_det_finite(a)
    if v.answer == D.NO:
        assert not accepts_finite(a, v.witness.word)
    else:
        assert all(accepts_finite(a, w) for w in finite_words("ab", 6))
