import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parikh import presburger as pb
from parikh import semilinear as sl

I = sl.INF
VALUES = (0, 1, 2, I)


def test_inf_arithmetic_samples():
    assert sl.ext_add(3, I) == I
    assert sl.ext_mul(0, I) == 0
    assert sl.ext_mul(2, I) == I
    assert sl.ext_sub1(I) == I


def test_units():
    assert sl.make_unit(3, 2) == (0, 1, 0)
    assert sl.make_inf_unit(2, 1) == (I, 0)
    with pytest.raises(Exception):
        sl.make_unit(2, 3)


def test_vector_text_round_trip():
    assert sl.parse_vector("1,inf") == (1, I)
    assert sl.fmt_vector((1, I)) == "1,inf"


def test_linear_membership():
    c = sl.linear_set((1, 0), [(1, 0), (1, 1)])
    assert sl.member((5, 3), c)
    assert not sl.member((2, 3), c)
    part = sl.union(c, sl.linear_set((0, 1), [(0, 1), (1, 1)]))
    assert sl.member((2, 3), part)


def test_concat():
    nat_ones = sl.concat(sl.linear_set((0,), [(1,)]), sl.singleton((1,)))
    assert sl.member((5, 1), nat_ones)
    assert not sl.member((5, 1), sl.concat(sl.universal_nat(1), sl.singleton((0,))))


def test_f_forward_examples():
    assert sl.f_forward(sl.linear((I,))) == sl.linear((0,))
    assert sl.f_forward(sl.linear((2,))) == sl.linear((3,))


def test_complement_inf_example():
    c = sl.complement_inf(sl.singleton((I,)))
    assert sl.member((0,), c)
    assert not sl.member((I,), c)


def test_includes():
    assert sl.includes(sl.linear_set((0, 0), [(1, 1)]), sl.linear_set((0, 0), [(2, 2)]))
    assert not sl.includes(sl.linear_set((0, 0), [(2, 2)]), sl.linear_set((0, 0), [(1, 1)]))


def test_synthesize_generators():
    x = pb.var(sl.val_var(0))
    assert sl.synthesize_generators(pb.divides(2, x), 1) == sl.linear((0,), [(2,)])
    assert sl.synthesize_generators(pb.ge(x, 3), 1) == sl.linear((3,), [(1,)])


def test_render_parse_constraint():
    c = sl.union(sl.linear_set((1, 0), [(1, 1)]), sl.singleton((0, 2)))
    back = sl.parse_constraint(sl.render_constraint(c), 2)
    assert sl.equivalent(c, back)


def test_dimension_mismatch_rejected():
    with pytest.raises(sl.DimensionError):
        sl.union(sl.universal_nat(1), sl.universal_nat(2))


# ---- properties

ext = st.sampled_from(VALUES)


@given(ext, ext, ext)
def test_add_associative_commutative(a, b, c):
    assert sl.ext_add(a, b) == sl.ext_add(b, a)
    assert sl.ext_add(sl.ext_add(a, b), c) == sl.ext_add(a, sl.ext_add(b, c))


@given(ext, ext, ext)
def test_mul_distributes(k, a, b):
    assert sl.ext_mul(k, sl.ext_add(a, b)) == sl.ext_add(sl.ext_mul(k, a), sl.ext_mul(k, b))


def small_linear(d):
    entry = st.sampled_from(VALUES)
    vec = st.tuples(*[entry] * d)
    return st.builds(sl.LinearSet, vec, st.lists(vec, max_size=2).map(tuple))


@st.composite
def generator_sets(draw):
    d = draw(st.integers(1, 2))
    comps = draw(st.lists(small_linear(d), min_size=1, max_size=2))
    return sl.SemiLinearSet(d, tuple(comps))


def grid(d, hi=4):
    return itertools.product(list(range(hi + 1)) + [I], repeat=d)


@settings(max_examples=25, deadline=None)
@given(generator_sets())
def test_f_round_trip(s):
    back = sl.from_generators(sl.f_inverse(sl.f_forward(s)))
    orig = sl.from_generators(s)
    for v in grid(s.dim):
        assert sl.member(v, back) == sl.member(v, orig)


@settings(max_examples=25, deadline=None)
@given(generator_sets())
def test_complement_inf_is_pointwise_negation(s):
    c = sl.from_generators(s)
    neg = sl.complement_inf(c)
    for v in grid(s.dim):
        assert sl.member(v, neg) != sl.member(v, c)


@settings(max_examples=25, deadline=None)
@given(generator_sets(), generator_sets())
def test_union_intersection_pointwise(s1, s2):
    if s1.dim != s2.dim:
        return
    a, b = sl.from_generators(s1), sl.from_generators(s2)
    u, n = sl.union(a, b), sl.intersect(a, b)
    for v in grid(s1.dim, 3):
        assert sl.member(v, u) == (sl.member(v, a) or sl.member(v, b))
        assert sl.member(v, n) == (sl.member(v, a) and sl.member(v, b))


@settings(max_examples=25, deadline=None)
@given(generator_sets())
def test_generator_and_formula_membership_agree(s):
    gens = sl.from_generators(s)
    formula = sl.from_formula(s.dim, sl.to_formula(s))
    for v in grid(s.dim, 3):
        assert sl.member(v, gens) == sl.member(v, formula)
