import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parikh import zvass as Z
from oracles import clamped_bfs, random_zvass_instance

# p --(+1,0)--> p, p --(-1,+1) test 0--> p, p --(0,0) test 1--> q
COUNT = Z.zvass(["p", "q"], 2, [("p", (1, 0), 0, "p"), ("p", (-1, 1), 0, "p"), ("p", (0, 0), 1, "q")])


def test_step_and_fire():
    c = Z.ZConfiguration("p", (0, 0))
    succ = Z.step(COUNT, c)
    assert Z.ZConfiguration("q", (0, 0)) in succ
    assert Z.ZConfiguration("p", (-1, 1)) in succ
    t = COUNT.transitions[2]
    with pytest.raises(Z.ZVassError):
        Z.fire(t, Z.ZConfiguration("p", (1, 0)))


def test_reach_with_test():
    src = Z.ZConfiguration("p", (0, 0))
    r = Z.reach_bounded(COUNT, src, Z.ZConfiguration("q", (0, 3)), 2)
    assert r.reachable
    assert Z.replay(COUNT, src, r.run) == Z.ZConfiguration("q", (0, 3))
    assert any(t.level == 1 for t in r.run)


def test_negative_counters_allowed():
    v = Z.zvass(["p"], 1, [("p", (-1,), 0, "p")])
    r = Z.reach_bounded(v, Z.ZConfiguration("p", (0,)), Z.ZConfiguration("p", (-5,)), 0)
    assert r and len(r.run) == 5


def test_unreachable_has_bound_note():
    # the zero test forbids leaving p with a nonzero first counter
    v = Z.zvass(["p", "q"], 1, [("p", (2,), 0, "p"), ("p", (0,), 1, "q")])
    r = Z.reach_bounded(v, Z.ZConfiguration("p", (1,)), Z.ZConfiguration("q", (3,)), 3)
    assert not r
    assert r.bound_note == "no run with at most 3 zero-tests"


def test_trivial_query():
    c = Z.ZConfiguration("p", (4, 4))
    r = Z.reach_bounded(COUNT, c, c, 0)
    assert r and r.run == []


def test_validation():
    with pytest.raises(Z.ZVassError):
        Z.zvass(["p"], 1, [("p", (1, 1), 0, "p")])
    with pytest.raises(Z.ZVassError):
        Z.zvass(["p"], 1, [("p", (1,), 2, "p")])
    with pytest.raises(Z.ZVassError):
        Z.reach_bounded(COUNT, Z.ZConfiguration("p", (0,)), Z.ZConfiguration("p", (0, 0)), 1)


def test_text_round_trip():
    assert Z.parse(Z.dumps(COUNT)) == COUNT
    assert Z.parse_config("p:1,-2", 2) == Z.ZConfiguration("p", (1, -2))
    with pytest.raises(Z.ZVassError):
        Z.parse_config("p:1", 2)
    with pytest.raises(Z.ZVassError):
        Z.parse("trans p 1 test=0 p\n")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_matches_clamped_bfs(seed):
    v, src, dst = random_zvass_instance(random.Random(seed))
    ok, clamp = clamped_bfs(v, (src.state, src.counters), (dst.state, dst.counters))
    if clamp and not ok:
        return  # the clamp may hide a run
    r = Z.reach_bounded(v, src, dst, 6)
    assert bool(r) == ok
    if r:
        assert Z.replay(v, src, r.run) == dst
