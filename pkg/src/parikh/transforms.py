"""Translations between acceptance conditions and closure constructions.

Each function takes automata and returns a new automaton; inputs are never
modified.  :func:`report` summarizes a translation for the CLI.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Sequence

from . import presburger as pb
from . import semilinear as sl
from .automata import (
    AutomatonError,
    FinitePA,
    MullerAutomaton,
    OmegaPA,
    Transition,
    check,
    complete_with_sink,
    fresh_state,
    is_complete,
    is_deterministic,
    pad_dimension,
    product,
    union_fresh_initial,
)
from .semilinear import INF, ConstraintSet


@dataclass(frozen=True)
class TransformReport:
    tag: str
    input_states: int
    output_states: int
    input_dim: int
    output_dim: int

    @property
    def dim_delta(self) -> int:
        return self.output_dim - self.input_dim

    def lines(self) -> List[str]:
        return [
            f"construction {self.tag}",
            f"states {self.input_states} -> {self.output_states}",
            f"dimension {self.input_dim} -> {self.output_dim} (delta {self.dim_delta:+d})",
        ]


def report(tag: str, before, after) -> TransformReport:
    n_in = len(before.states)
    d_in = getattr(before, "dim", 0)
    return TransformReport(tag, n_in, len(after.states), d_in, after.dim)


def _require_det(a, what: str) -> None:
    if not is_deterministic(a):
        raise AutomatonError(f"{what} needs a deterministic automaton")


def _omega(states, a_like, initial, trans, acc, c, cond, dim) -> OmegaPA:
    pa = FinitePA(tuple(states), a_like.alphabet, initial, tuple(trans), frozenset(acc), c, dim)
    out = OmegaPA(pa, cond)
    check(out)
    return out


# ---------------------------------------------------------------- Muller and limit


def muller_to_det_limit(m: MullerAutomaton) -> OmegaPA:
    """One counter per state, bumped on entry; ∞ marks the recurring states."""
    seen = set()
    for p, a, q in m.transitions:
        if (p, a) in seen:
            raise AutomatonError("muller_to_det_limit needs a deterministic Muller automaton")
        seen.add((p, a))
    n = len(m.states)
    idx = {q: i for i, q in enumerate(m.states)}
    trans = [Transition(p, a, sl.make_unit(n, idx[q] + 1), q) for p, a, q in m.transitions]
    comps = []
    for fam in m.table:
        base = tuple(INF if q in fam else 0 for q in m.states)
        periods = tuple(sl.make_unit(n, idx[q] + 1) for q in m.states if q not in fam)
        comps.append(sl.LinearSet(base, periods))
    c = sl.from_generators(sl.SemiLinearSet(n, tuple(comps)))
    pa = FinitePA(tuple(m.states), tuple(m.alphabet), m.initial, tuple(trans), frozenset(m.states), c, n)
    out = OmegaPA(pa, "limit")
    check(out)
    return out


def muller_accepts(m: MullerAutomaton, stem, period) -> bool:
    """Muller acceptance of stem·period^ω by inspecting the recurring states."""
    delta = {(p, a): q for p, a, q in m.transitions}
    q = m.initial
    for l in stem:
        if (q, l) not in delta:
            return False
        q = delta[(q, l)]
    firsts = {}
    blocks = []
    while q not in firsts:
        firsts[q] = len(blocks)
        visited = []
        for l in period:
            if (q, l) not in delta:
                return False
            q = delta[(q, l)]
            visited.append(q)
        blocks.append(visited)
    recurring = frozenset(itertools.chain.from_iterable(blocks[firsts[q]:]))
    return recurring in set(m.table)


def limit_all_states_accepting(a: OmegaPA) -> OmegaPA:
    """Move acceptance into one extra counter that must diverge."""
    _require_det(a, "limit_all_states_accepting")
    pa = a.pa
    trans = [Transition(t.src, t.letter, t.vec + ((1,) if t.dst in pa.accepting else (0,)), t.dst)
             for t in pa.transitions]
    c = sl.concat(pa.constraint, sl.singleton((INF,)))
    return _omega(pa.states, pa, pa.initial, trans, pa.states, c, "limit", pa.dim + 1)


def _normalized_limit(a: OmegaPA) -> OmegaPA:
    if a.condition != "limit":
        raise AutomatonError("expected a limit automaton")
    _require_det(a, "limit closure")
    if not is_complete(a):
        a = complete_with_sink(a)
    return limit_all_states_accepting(a)


def limit_union(a1: OmegaPA, a2: OmegaPA) -> OmegaPA:
    n1, n2 = _normalized_limit(a1), _normalized_limit(a2)
    return product(n1, n2, "union-flags", "limit")


def limit_intersection(a1: OmegaPA, a2: OmegaPA) -> OmegaPA:
    n1, n2 = _normalized_limit(a1), _normalized_limit(a2)
    return product(n1, n2, "both", "limit")


def limit_complement(a: OmegaPA) -> OmegaPA:
    n = _normalized_limit(a)
    return n.with_constraint(sl.complement_inf(n.constraint))


# ---------------------------------------------------------------- reachability and resets


def det_reach_to_reachreg(a: OmegaPA) -> OmegaPA:
    """Track visits and exits per state so the constraint can see the current state."""
    _require_det(a, "det_reach_to_reachreg")
    if not is_complete(a):
        raise AutomatonError("reachability automata must be complete")
    pa = a.pa
    d, n = pa.dim, len(pa.states)
    idx = pa.index
    trans = []
    for t in pa.transitions:
        extra = [0] * (2 * n)
        extra[2 * idx[t.dst]] += 1  # visit of the target
        extra[2 * idx[t.src] + 1] += 1  # exit of the source
        trans.append(Transition(t.src, t.letter, t.vec + tuple(extra), t.dst))

    def visits(q):
        return pb.var(sl.val_var(d + 2 * idx[q]))

    def exits(q):
        return pb.var(sl.val_var(d + 2 * idx[q] + 1))

    def current(q):
        if q == pa.initial:
            return pb.conj(*(pb.eq(visits(p), exits(p)) for p in pa.states))
        return pb.eq(visits(q) - exits(q), 1)

    sel = pb.conj(sl.domain_formula(d + 2 * n, extended=False),
                  pb.disj(*(current(q) for q in pa.states if q in pa.accepting)))
    c = sl.intersect(sl.concat(pa.constraint, sl.universal_nat(2 * n)), sl.from_formula(d + 2 * n, sel))
    return _omega(pa.states, pa, pa.initial, trans, pa.states, c, "reachreg", d + 2 * n)


def reachreg_to_weakreset(a: OmegaPA) -> OmegaPA:
    """Fresh initial state; a flag counter marks the first reset segment."""
    _require_det(a, "reachreg_to_weakreset")
    pa = a.pa
    init = fresh_state(pa.states, "init")
    trans = [Transition(t.src, t.letter, t.vec + (0,), t.dst) for t in pa.transitions]
    trans += [Transition(init, t.letter, t.vec + (1,), t.dst) for t in pa.out.get(pa.initial, ())]
    c = sl.union(sl.concat(pa.constraint, sl.singleton((1,))),
                 sl.concat(sl.universal_nat(pa.dim), sl.singleton((0,))))
    return _omega((init,) + pa.states, pa, init, trans, pa.accepting, c, "weakreset", pa.dim + 1)


def strongreset_to_weakreset(a: OmegaPA) -> OmegaPA:
    """Count accepting visits per segment and demand exactly one."""
    _require_det(a, "strongreset_to_weakreset")
    pa = a.pa
    trans = [Transition(t.src, t.letter, t.vec + ((1,) if t.dst in pa.accepting else (0,)), t.dst)
             for t in pa.transitions]
    c = sl.concat(pa.constraint, sl.singleton((1,)))
    return _omega(pa.states, pa, pa.initial, trans, pa.accepting, c, "weakreset", pa.dim + 1)


def buchi_linear_to_weakreset(a: OmegaPA) -> OmegaPA:
    """Büchi with C(b, P) as weak reset with C(0, P).

    Counter values are remembered in the state up to b; once a component
    passes b its label drops by the overshoot exactly once, so the emitted
    total is max(ρ - b, 0).  Hits are then the saturated accepting states.
    """
    _require_det(a, "buchi_linear_to_weakreset")
    pa = a.pa
    g = pa.constraint.gens
    if g is None or len(g.components) != 1:
        raise AutomatonError("buchi_linear_to_weakreset needs a single linear set in generator form")
    lin = g.components[0]
    b = lin.base
    if any(sl.is_inf(x) for x in b) or any(sl.is_inf(x) for p in lin.periods for x in p):
        raise AutomatonError("∞ entries are not allowed here")
    c0 = sl.linear_set((0,) * pa.dim, lin.periods)
    if not any(b):
        return _omega(pa.states, pa, pa.initial, pa.transitions, pa.accepting, c0, "weakreset", pa.dim)
    levels = list(itertools.product(*(range(x + 1) for x in b)))
    states = [(q, s) for q in pa.states for s in levels]
    trans = []
    for t in pa.transitions:
        for s in levels:
            ns, out = [], []
            for j, v in enumerate(t.vec):
                if s[j] < b[j]:
                    total = s[j] + v
                    ns.append(min(total, b[j]))
                    out.append(max(total - b[j], 0))
                else:
                    ns.append(b[j])
                    out.append(v)
            trans.append(Transition((t.src, s), t.letter, tuple(out), (t.dst, tuple(ns))))
    acc = [(q, tuple(b)) for q in pa.states if q in pa.accepting]
    init = (pa.initial, tuple(0 for _ in b))
    return _omega(states, pa, init, trans, acc, c0, "weakreset", pa.dim)


# ---------------------------------------------------------------- finite PA as ω-PA


def finite_pa_to_reach_omega(u: FinitePA) -> OmegaPA:
    """U·Σ^ω, read off the same automaton with the reachability condition."""
    if not is_deterministic(u):
        raise AutomatonError("finite_pa_to_reach_omega needs a deterministic PA")
    if not is_complete(u):
        raise AutomatonError("reachability automata must be complete")
    return OmegaPA(u, "reachability")


def finite_pa_to_det_buchi(p: FinitePA) -> OmegaPA:
    """Words with infinitely many prefixes in the finite language of ``p``."""
    if not is_deterministic(p):
        raise AutomatonError("finite_pa_to_det_buchi needs a deterministic PA")
    return OmegaPA(p, "buchi")


# ---------------------------------------------------------------- complements


def underlying_buchi(a: OmegaPA) -> OmegaPA:
    """Forget labels and constraint."""
    pa = a.pa
    trans = [Transition(t.src, t.letter, (), t.dst) for t in pa.transitions]
    return _omega(pa.states, pa, pa.initial, trans, pa.accepting, sl.universal_nat(0), "buchi", 0)


def complement_det_buchi(b: OmegaPA) -> OmegaPA:
    """Two copies; the second one avoids F forever and is entirely accepting."""
    _require_det(b, "complement_det_buchi")
    if b.dim != 0:
        raise AutomatonError("complement_det_buchi expects a dimension-0 automaton")
    if not is_complete(b):
        b = complete_with_sink(b)
    pa = b.pa
    F = pa.accepting
    states = [(0, q) for q in pa.states] + [(1, q) for q in pa.states if q not in F]
    trans = []
    for t in pa.transitions:
        trans.append(Transition((0, t.src), t.letter, (), (0, t.dst)))
        if t.dst not in F:
            trans.append(Transition((0, t.src), t.letter, (), (1, t.dst)))
            if t.src not in F:
                trans.append(Transition((1, t.src), t.letter, (), (1, t.dst)))
    acc = [s for s in states if s[0] == 1]
    return _omega(states, pa, (0, pa.initial), trans, acc, sl.universal_nat(0), "buchi", 0)


def violation_automaton(a: OmegaPA, p, q) -> OmegaPA:
    """Reachability PA for "a reset segment from p to q leaves C".

    A zero-labeled copy of ``a`` tracks the run up to a reset in p, then a
    labeled copy follows the segment while avoiding accepting states until q,
    which carries a trivial self-loop.  When p is the initial state and not
    accepting, only the opening segment (from position 0) is considered.
    """
    pa = a.pa
    F = pa.accepting
    d = pa.dim
    zero = (0,) * d
    opening_only = p == pa.initial and p not in F
    states = [("c", s) for s in pa.states] + [("s", s) for s in pa.states]
    trans = []
    if not opening_only:
        trans += [Transition(("c", t.src), t.letter, zero, ("c", t.dst)) for t in pa.transitions]
    trans += [Transition(("c", p), t.letter, t.vec, ("s", t.dst)) for t in pa.out.get(p, ())]
    trans += [Transition(("s", t.src), t.letter, t.vec, ("s", t.dst)) for t in pa.transitions if t.src not in F]
    trans += [Transition(("s", q), l, zero, ("s", q)) for l in pa.alphabet]
    c_bar = sl.complement(pa.constraint)
    return _omega(states, pa, ("c", pa.initial), trans, [("s", q)], c_bar, "reachability", d)


def violation_sources(a: OmegaPA) -> List:
    """Reset anchors: the initial state (position 0) and the accepting states."""
    pa = a.pa
    out = [pa.initial] + [s for s in pa.states if s in pa.accepting and s != pa.initial]
    return out


def sr_complement(a: OmegaPA) -> OmegaPA:
    """Reach-reg PA for the complement of a deterministic strong reset PA."""
    _require_det(a, "sr_complement")
    if not is_complete(a):
        raise AutomatonError("sr_complement needs a complete automaton")
    pa = a.pa
    d = pa.dim
    b_bar = complement_det_buchi(underlying_buchi(a))
    parts = [pad_dimension(b_bar, d, sl.universal_nat(d)).retag("reachreg")]
    F = [s for s in pa.states if s in pa.accepting]
    for p in violation_sources(a):
        for q in F:
            parts.append(violation_automaton(a, p, q).retag("reachreg"))
    out = union_fresh_initial(parts)
    check(out)
    return out


# ---------------------------------------------------------------- retags


def retag(a: OmegaPA, condition: str) -> OmegaPA:
    return a.retag(condition)


OPS = {
    "muller-to-limit": muller_to_det_limit,
    "reach-to-reachreg": det_reach_to_reachreg,
    "reachreg-to-weakreset": reachreg_to_weakreset,
    "strongreset-to-weakreset": strongreset_to_weakreset,
    "limit-normalize": limit_all_states_accepting,
    "limit-complement": limit_complement,
    "buchi-complement": complement_det_buchi,
    "sr-complement": sr_complement,
    "buchi-linear-to-weakreset": buchi_linear_to_weakreset,
    "finite-to-reach": finite_pa_to_reach_omega,
    "finite-to-buchi": finite_pa_to_det_buchi,
}

BINARY_OPS = {
    "limit-union": limit_union,
    "limit-intersection": limit_intersection,
}
