import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parikh import decisions as D
from parikh import lasso
from parikh import reductions as R
from parikh import semilinear as sl
from parikh.automata import LassoWord, is_complete, is_deterministic
from oracles import all_intexprs, generator_trace, pa_image, subset_sums_split

LOOP = R.parse_tcm("ifz 0 1 1\nstop\n")


def test_parse_and_eval():
    e = R.parse_intexpr("(1|2)+2")
    assert R.intexpr_eval(e) == {3, 4}
    assert R.intexpr_size(e) == 2
    assert R.parse_intexpr("1 + 2 + 3") == R.Plus(R.Plus(R.Const(1), R.Const(2)), R.Const(3))


@pytest.mark.parametrize("bad", ["", "1 +", "(1", "1 2", "a"])
def test_parse_errors(bad):
    with pytest.raises(R.ExpressionSyntaxError):
        R.parse_intexpr(bad)


def test_linear_set_shapes():
    ls = R.intexpr_to_linearset(R.parse_intexpr("3"))
    assert ls.base == (0, 0) and ls.periods == ((3, 1),)
    u = R.intexpr_to_linearset(R.parse_intexpr("1|2"))
    assert u.dim == 4
    assert (0, 1, 0, 1) in u.periods and (0, 0, 1, 1) in u.periods


def test_pa_is_deterministic_and_acyclic():
    pa = R.intexpr_to_pa(R.parse_intexpr("(1|2)+2"))
    assert is_deterministic(pa)
    assert pa_image(pa) == {3, 4}


@pytest.mark.parametrize("e1,e2,included", [("2", "1|2", True), ("3", "1|2", False), ("1+1", "2", True)])
def test_irrelevance_examples(e1, e2, included):
    inst = R.irrelevance_instance(R.parse_intexpr(e1), R.parse_intexpr(e2))
    assert (D.irrelevance_det(inst).answer == D.YES) is included


@pytest.mark.parametrize("e1,e2,included", [("3", "2", False), ("0", "0", True), ("1|2", "2|1", True)])
def test_universality_examples(e1, e2, included):
    inst = R.universality_instance(R.parse_intexpr(e1), R.parse_intexpr(e2))
    assert is_deterministic(inst) and is_complete(inst)
    assert (D.universal_det_finite(inst).answer == D.YES) is included


def test_three_way_equivalence_small():
    for e in all_intexprs(2, 3):
        lang = R.intexpr_eval(e)
        assert generator_trace(e, max(lang) + 3) == lang
        assert pa_image(R.intexpr_to_pa(e)) == lang


@pytest.mark.parametrize("m,split", [([1, 2, 3], True), ([1, 2, 4], False), ([2, 2], True)])
def test_partition_examples(m, split):
    assert R.has_equal_split(m) is split
    assert (D.universal_det_limit(R.partition_to_limit(m)).answer == D.YES) is (not split)


def test_partition_rejects_nonpositive():
    with pytest.raises(ValueError):
        R.partition_to_limit([0, 1])


def test_partition_universality_counterexample_is_a_split():
    m = [1, 2, 3]
    a = R.partition_to_limit(m)
    v = D.universal_det_limit(a)
    assert v.answer == D.NO and not lasso.accepts(a, v.witness.lasso)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_partition_split_matches_brute_force(m):
    assert R.has_equal_split(m) == subset_sums_split(m)


# ---- two-counter machines


def test_tcm_parse_validate():
    with pytest.raises(ValueError):
        R.parse_tcm("inc 0\n")  # no stop
    with pytest.raises(ValueError):
        R.parse_tcm("stop\ninc 0\nstop\n")
    with pytest.raises(ValueError):
        R.parse_tcm("inc 2\nstop\n")
    with pytest.raises(ValueError):
        R.parse_tcm("ifz 0 1 9\nstop\n")
    m = R.parse_tcm("inc 0\ndec 0\nifz 1 1 3\nstop\n")
    assert R.parse_tcm(R.dump_tcm(m)) == m


def test_tcm_run():
    m = R.parse_tcm("inc 0\nstop\n")
    trace, done = R.tcm_run(m, 10)
    assert done
    assert trace == [R.TcmConfiguration(1, 0, 0), R.TcmConfiguration(2, 1, 0)]
    trace, done = R.tcm_run(LOOP, 5)
    assert not done and len(trace) == 6


def test_guarding():
    m = R.parse_tcm("inc 0\ndec 0\nifz 0 4 2\nstop\n")
    assert not R.is_guarded(m)
    g = R.tcm_guard_decrements(m)
    assert R.dump_tcm(g) == "inc 0\nifz 0 4 3\ndec 0\nifz 0 5 2\nstop\n"
    assert R.is_guarded(g)
    # both machines halt with the same counters
    (t1, d1), (t2, d2) = R.tcm_run(m, 50), R.tcm_run(g, 50)
    assert d1 and d2 and (t1[-1].z0, t1[-1].z1) == (t2[-1].z0, t2[-1].z1)


def test_encode_config():
    m = R.parse_tcm("inc 0\nstop\n")
    assert R.tcm_encode_config(R.TcmConfiguration(1, 2, 1), m) == ("1", "a", "a", "b", "I_a")
    with pytest.raises(ValueError):
        R.tcm_encode_config(R.TcmConfiguration(2, 0, 0), m)


def test_pair_correct_on_real_steps():
    m = R.tcm_guard_decrements(R.parse_tcm("inc 0\ninc 1\ndec 0\nifz 0 5 3\nstop\n"))
    trace, done = R.tcm_run(m, 40)
    assert done
    enc = [R.tcm_encode_config(c, m) for c in trace[:-1]]
    for w, w2 in zip(enc, enc[1:]):
        assert R.tcm_pair_correct(w, w2, m)
    assert not R.tcm_pair_correct(enc[1], enc[0], m)


def test_looping_machine_lasso_accepted_by_both():
    a1, a2 = R.tcm_encode_sr_pair(LOOP)
    w = LassoWord((), ("1", "Z_a"))
    assert lasso.accepts(a1, w) and lasso.accepts(a2, w)


def test_encoding_needs_guarded_machine():
    with pytest.raises(ValueError):
        R.tcm_encode_sr_pair(R.parse_tcm("dec 0\nstop\n"))


def test_alphabet():
    m = R.parse_tcm("inc 0\nstop\n")
    assert R.tcm_alphabet(m) == ("a", "b", "1", "2") + R.SIGMA_I
