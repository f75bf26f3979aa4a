"""Integer vector addition systems with nested zero-tests.

Counters range over ℤ.  A transition carries a zero-test level ℓ: it may
only fire from a configuration whose first ℓ counters are all zero, and
level 0 means no test.

Reachability is decided exactly for runs that fire at most ``max_tests``
tested transitions.  For a fixed sequence of test levels the search is one
flow query over a layered copy of the system: layer i holds the part of the
run after the i-th test, each layer owns a block of counters, and the zero
tests become equations on prefix sums of the blocks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import presburger as pb
from .automata import Transition
from .decisions import find_path

Vec = Tuple[int, ...]


class ZVassError(ValueError):
    pass


@dataclass(frozen=True)
class ZTransition:
    src: object
    vec: Vec
    level: int
    dst: object

    def __iter__(self):
        # lets oracles and callers unpack (p, vec, level, q)
        return iter((self.src, self.vec, self.level, self.dst))


@dataclass(frozen=True)
class ZVassNZ:
    states: Tuple
    dim: int
    levels: frozenset
    transitions: Tuple[ZTransition, ...]

    def __post_init__(self):
        for t in self.transitions:
            if len(t.vec) != self.dim:
                raise ZVassError(f"vector {t.vec} has wrong dimension (want {self.dim})")
            if t.level not in self.levels:
                raise ZVassError(f"level {t.level} not declared")
            if t.src not in self.states or t.dst not in self.states:
                raise ZVassError(f"transition {t} uses an unknown state")
        for l in self.levels:
            if not 0 <= l <= self.dim:
                raise ZVassError(f"level {l} outside 0..{self.dim}")


@dataclass(frozen=True)
class ZConfiguration:
    state: object
    counters: Vec


@dataclass(frozen=True)
class ReachResult:
    reachable: bool
    run: Optional[List[ZTransition]] = None
    bound_note: Optional[str] = None

    def __bool__(self):
        return self.reachable


def zvass(states: Sequence, dim: int, transitions: Sequence, levels: Optional[Sequence[int]] = None) -> ZVassNZ:
    """Build a system from (p, vec, level, q) tuples; levels default to those used."""
    ts = tuple(ZTransition(p, tuple(int(x) for x in v), int(l), q) for p, v, l, q in transitions)
    lv = frozenset(levels) if levels is not None else frozenset({0} | {t.level for t in ts})
    return ZVassNZ(tuple(states), dim, lv, ts)


def enabled(t: ZTransition, c: ZConfiguration) -> bool:
    return t.src == c.state and all(x == 0 for x in c.counters[:t.level])


def fire(t: ZTransition, c: ZConfiguration) -> ZConfiguration:
    if not enabled(t, c):
        raise ZVassError(f"{t} is not enabled in {c}")
    return ZConfiguration(t.dst, tuple(x + y for x, y in zip(c.counters, t.vec)))


def step(v: ZVassNZ, c: ZConfiguration) -> set:
    """All one-step successors of ``c``."""
    if len(c.counters) != v.dim:
        raise ZVassError("configuration has wrong dimension")
    return {fire(t, c) for t in v.transitions if enabled(t, c)}


def replay(v: ZVassNZ, src: ZConfiguration, run: Sequence[ZTransition]) -> ZConfiguration:
    c = src
    for t in run:
        c = fire(t, c)
    return c


def _layered_query(v: ZVassNZ, src: ZConfiguration, dst: ZConfiguration, levels: Sequence[int]):
    """A run whose j-th tested transition has level ``levels[j]``, or None.

    Layer j holds the part of the run after the j-th test and owns counter
    block j; the tested transition itself is booked to the block it enters.
    The value of counter i just before test j is then src plus blocks 0..j-1.
    """
    d = v.dim
    n = len(levels)
    width = d * (n + 1)
    layered: List[Transition] = []
    for idx, t in enumerate(v.transitions):
        for layer in range(n + 1):
            if t.level == 0:
                nl = layer
            elif layer < n and levels[layer] == t.level:
                nl = layer + 1
            else:
                continue
            vec = [0] * width
            vec[d * nl:d * (nl + 1)] = t.vec
            layered.append(Transition((t.src, layer), idx, tuple(vec), (t.dst, nl)))

    def extra(terms, _sel):
        parts = []
        for i in range(d):
            total = sum((terms[d * l + i] for l in range(n + 1)), pb.const(0))
            parts.append(pb.eq(total, dst.counters[i] - src.counters[i]))
        for j, lvl in enumerate(levels):
            for i in range(lvl):
                prefix = sum((terms[d * l + i] for l in range(j + 1)), pb.const(src.counters[i]))
                parts.append(pb.eq(prefix, 0))
        return pb.conj(*parts)

    path = find_path(layered, width, (src.state, 0), [(dst.state, n)], extra=extra)
    return None if path is None else [v.transitions[t.letter] for t in path]


def reach_bounded(v: ZVassNZ, src: ZConfiguration, dst: ZConfiguration, max_tests: int) -> ReachResult:
    """Is ``dst`` reachable from ``src`` by a run firing at most ``max_tests`` tests?

    Tests of level 0 are free.  Candidate sequences of test levels are tried
    shortest first; with the levels fixed every zero test is a plain
    equation, so each try is one conjunctive flow query.  A positive answer
    carries a run that replays exactly; a negative one says which bound it
    was established for.
    """
    if max_tests < 0:
        raise ZVassError("max_tests must be non-negative")
    d = v.dim
    if len(src.counters) != d or len(dst.counters) != d:
        raise ZVassError("configuration has wrong dimension")
    test_levels = sorted({t.level for t in v.transitions if t.level >= 1})
    K = max_tests if test_levels else 0
    if src == dst:
        return ReachResult(True, [])
    for n in range(K + 1):
        for levels in itertools.product(test_levels, repeat=n):
            run = _layered_query(v, src, dst, levels)
            if run is None:
                continue
            end = replay(v, src, run)
            if end != dst:
                raise AssertionError(f"bounded reachability produced a bad run ending in {end}")
            return ReachResult(True, run)
    return ReachResult(False, bound_note=f"no run with at most {K} zero-tests")


# ---------------------------------------------------------------- text format


def _vec(s: str) -> Vec:
    s = s.strip()
    if s in ("", "()"):
        return ()
    return tuple(int(x) for x in s.strip("()").split(","))


def parse(text: str) -> ZVassNZ:
    """Read ``zvass dim=<d> levels=<l,..>`` followed by ``trans p <v> test=<l> q`` lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("zvass"):
        raise ZVassError("missing 'zvass' header")
    head = dict(kv.split("=", 1) for kv in lines[0].split()[1:])
    try:
        dim = int(head["dim"])
    except (KeyError, ValueError):
        raise ZVassError("header needs dim=<d>") from None
    levels = [int(x) for x in head.get("levels", "0").split(",") if x]
    states: List = []
    ts = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "states":
            states.extend(p for p in parts[1:] if p not in states)
            continue
        if parts[0] != "trans" or len(parts) != 5 or not parts[3].startswith("test="):
            raise ZVassError(f"cannot parse line {ln!r}")
        try:
            p, vec, lvl, q = parts[1], _vec(parts[2]), int(parts[3][5:]), parts[4]
        except ValueError:
            raise ZVassError(f"bad number in {ln!r}") from None
        for s in (p, q):
            if s not in states:
                states.append(s)
        ts.append((p, vec, lvl, q))
    return zvass(states, dim, ts, levels)


def dumps(v: ZVassNZ) -> str:
    out = [f"zvass dim={v.dim} levels={','.join(str(l) for l in sorted(v.levels))}",
           "states " + " ".join(str(s) for s in v.states)]
    for t in v.transitions:
        vec = ",".join(str(x) for x in t.vec) or "()"
        out.append(f"trans {t.src} {vec} test={t.level} {t.dst}")
    return "\n".join(out) + "\n"


def parse_config(s: str, dim: int) -> ZConfiguration:
    """``p:1,-2`` → ZConfiguration('p', (1, -2))."""
    if ":" not in s:
        raise ZVassError(f"configuration {s!r} should look like state:v1,..,vd")
    p, vec = s.rsplit(":", 1)
    c = _vec(vec)
    if len(c) != dim:
        raise ZVassError(f"configuration {s!r} has dimension {len(c)}, want {dim}")
    return ZConfiguration(p, c)
