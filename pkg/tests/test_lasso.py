import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parikh import corpus, lasso
from parikh.automata import CONDITIONS, LassoWord
from cases import FIG1_CASES
from oracles import oracle_accepts, random_det_pa, random_lasso


@pytest.mark.parametrize("u,v,expected", FIG1_CASES)
def test_fig1(u, v, expected):
    assert lasso.accepts(corpus.fig1(), LassoWord(u, v)) is expected


def test_anbn_blocks():
    a = corpus.anbn_blocks()
    assert lasso.accepts(a, LassoWord("", "ab"))
    assert lasso.accepts(a, LassoWord("ab", "aabb"))
    assert not lasso.accepts(a, LassoWord("", "aab"))
    assert not lasso.accepts(a, LassoWord("b", "ab"))


def test_anbn_c_limit_vector():
    a = corpus.anbn_c_limit()
    dec = lasso.decompose(a, LassoWord("aabb", "c"))
    assert lasso.limit_vector(dec) == (2, 2)
    assert lasso.accepts(a, LassoWord("aabb", "c"))
    assert not lasso.accepts(a, LassoWord("aab", "c"))


def test_decompose_blocked_run():
    assert lasso.decompose(corpus.only("a"), LassoWord("b", "a")) is None
    assert not lasso.accepts(corpus.only("a"), LassoWord("b", "a"))


def test_nondeterministic_safety_unsupported():
    a = corpus.balanced("safety")
    with pytest.raises(lasso.UnsupportedCondition):
        lasso.accepts_nondet(a, LassoWord("", "ab"), force_emptiness=True)


def test_m_quantifier_helpers():
    from parikh import semilinear as sl

    even = sl.linear_set((0,), [(2,)])
    assert lasso.exists_m(even, (1,), (1,))
    assert not lasso.forall_m(even, (1,), (1,))
    assert lasso.infinitely_often(even, (1,), (1,))
    assert not lasso.eventually_always(even, (1,), (1,))
    assert lasso.eventually_always(even, (0,), (2,))


seeds = st.integers(0, 10**6)
conds = st.sampled_from(CONDITIONS)


def _pair(seed, cond):
    rng = random.Random(seed)
    a = random_det_pa(rng, n_states=rng.randint(1, 3), dim=rng.randint(1, 2), condition=cond,
                      allow_inf=cond == "limit")
    return a, random_lasso(rng, "ab", 4, 4)


@settings(max_examples=200, deadline=None)
@given(seeds, conds)
def test_matches_simulation_oracle(seed, cond):
    a, w = _pair(seed, cond)
    assert lasso.accepts(a, w) == oracle_accepts(a, w)


@settings(max_examples=60, deadline=None)
@given(seeds, conds, st.integers(1, 3))
def test_representation_invariance(seed, cond, k):
    a, w = _pair(seed, cond)
    base = lasso.accepts(a, w)
    assert lasso.accepts(a, LassoWord(w.stem + w.period, w.period)) == base
    assert lasso.accepts(a, LassoWord(w.stem, w.period * k)) == base
    rotated = LassoWord(w.stem + w.period[:1], w.period[1:] + w.period[:1])
    assert lasso.accepts(a, rotated) == base


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(["reachability", "buchi", "reachreg", "limit", "strongreset", "weakreset"]))
def test_emptiness_route_agrees(seed, cond):
    a, w = _pair(seed, cond)
    assert lasso.accepts_nondet(a, w, force_emptiness=True) == lasso.accepts(a, w)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_strong_reset_implies_weak_reset(seed):
    a, w = _pair(seed, "strongreset")
    if lasso.accepts(a, w):
        from parikh.transforms import retag

        assert lasso.accepts(retag(a, "weakreset"), w)
