"""Parikh automata on finite and infinite words.

States and letters are arbitrary hashable values (strings when read from a
file; tuples when built by products).  Transition labels are tuples of
naturals of length ``dim``; dimension 0 is allowed and models plain Büchi,
safety and Kripke structures.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import semilinear as sl
from .semilinear import ConstraintSet

CONDITIONS = (
    "safety",
    "reachability",
    "buchi",
    "cobuchi",
    "reachreg",
    "limit",
    "strongreset",
    "weakreset",
)

State = Hashable
Letter = str
Word = Tuple[Letter, ...]


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class Transition:
    src: State
    letter: Letter
    vec: Tuple[int, ...]
    dst: State


@dataclass(frozen=True)
class FinitePA:
    states: Tuple[State, ...]
    alphabet: Tuple[Letter, ...]
    initial: State
    transitions: Tuple[Transition, ...]
    accepting: frozenset
    constraint: ConstraintSet
    dim: int

    @cached_property
    def out(self) -> Dict[State, List[Transition]]:
        d: Dict[State, List[Transition]] = defaultdict(list)
        for t in self.transitions:
            d[t.src].append(t)
        return d

    @cached_property
    def delta(self) -> Dict[Tuple[State, Letter], List[Transition]]:
        d: Dict[Tuple[State, Letter], List[Transition]] = defaultdict(list)
        for t in self.transitions:
            d[(t.src, t.letter)].append(t)
        return d

    @cached_property
    def index(self) -> Dict[State, int]:
        return {q: i for i, q in enumerate(self.states)}

    def step(self, q: State, a: Letter) -> Optional[Transition]:
        ts = self.delta.get((q, a))
        return ts[0] if ts else None

    @property
    def size(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class OmegaPA:
    pa: FinitePA
    condition: str

    def __post_init__(self):
        if self.condition not in CONDITIONS:
            raise AutomatonError(f"unknown acceptance condition {self.condition!r}")

    # pass-throughs keep call sites short
    @property
    def states(self):
        return self.pa.states

    @property
    def alphabet(self):
        return self.pa.alphabet

    @property
    def initial(self):
        return self.pa.initial

    @property
    def transitions(self):
        return self.pa.transitions

    @property
    def accepting(self):
        return self.pa.accepting

    @property
    def constraint(self):
        return self.pa.constraint

    @property
    def dim(self):
        return self.pa.dim

    @property
    def size(self) -> int:
        return self.pa.size

    def step(self, q, a):
        return self.pa.step(q, a)

    def retag(self, condition: str) -> "OmegaPA":
        return OmegaPA(self.pa, condition)

    def with_constraint(self, c: ConstraintSet) -> "OmegaPA":
        return OmegaPA(replace(self.pa, constraint=c), self.condition)


@dataclass(frozen=True)
class MullerAutomaton:
    states: Tuple[State, ...]
    alphabet: Tuple[Letter, ...]
    initial: State
    transitions: Tuple[Tuple[State, Letter, State], ...]
    table: Tuple[frozenset, ...]


@dataclass(frozen=True)
class LassoWord:
    stem: Word
    period: Word

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("the period of a lasso word must be nonempty")

    def letter(self, i: int) -> Letter:
        if i < len(self.stem):
            return self.stem[i]
        return self.period[(i - len(self.stem)) % len(self.period)]

    def prefix(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))


@dataclass(frozen=True)
class Witness:
    kind: str  # "finite" or "lasso"
    word: Optional[Word] = None
    lasso: Optional[LassoWord] = None
    run: Optional[Tuple[Transition, ...]] = field(default=None, compare=False)


# ---------------------------------------------------------------- builders


def make_pa(states, alphabet, initial, transitions, accepting, constraint=None, dim=None) -> FinitePA:
    """Convenience constructor; transitions are (p, a, vec, q) tuples."""
    ts = tuple(t if isinstance(t, Transition) else Transition(t[0], t[1], tuple(t[2]), t[3]) for t in transitions)
    if dim is None:
        dim = len(ts[0].vec) if ts else (constraint.dim if constraint is not None else 0)
    if constraint is None:
        constraint = sl.universal_nat(dim)
    return FinitePA(tuple(states), tuple(alphabet), initial, ts, frozenset(accepting), constraint, dim)


def make_omega(states, alphabet, initial, transitions, accepting, constraint=None, condition="buchi", dim=None) -> OmegaPA:
    return OmegaPA(make_pa(states, alphabet, initial, transitions, accepting, constraint, dim), condition)


def buchi_automaton(states, alphabet, initial, transitions, accepting) -> OmegaPA:
    """A dimension-0 PA with condition buchi; transitions are (p, a, q)."""
    ts = [Transition(p, a, (), q) for p, a, q in transitions]
    return make_omega(states, alphabet, initial, ts, accepting, sl.universal_nat(0), "buchi", dim=0)


def safety_automaton(states, alphabet, initial, transitions) -> OmegaPA:
    """All states accepting; read as a Kripke structure when used as a system."""
    return buchi_automaton(states, alphabet, initial, transitions, states)


kripke = safety_automaton


# ---------------------------------------------------------------- predicates


def _pa(a) -> FinitePA:
    return a.pa if isinstance(a, OmegaPA) else a


def validate(a) -> List[str]:
    """Violations of the type invariants; an empty list means ok."""
    if isinstance(a, MullerAutomaton):
        errs = []
        qs = set(a.states)
        if a.initial not in qs:
            errs.append(f"initial state {a.initial!r} not in Q")
        for p, l, q in a.transitions:
            if p not in qs or q not in qs:
                errs.append(f"transition {p!r} -{l}-> {q!r} has an unknown endpoint")
            if l not in a.alphabet:
                errs.append(f"transition letter {l!r} not in the alphabet")
        for f in a.table:
            if not f <= qs:
                errs.append("an accepting set mentions unknown states")
        return errs
    pa = _pa(a)
    errs = []
    qs = set(pa.states)
    if len(qs) != len(pa.states):
        errs.append("duplicate states")
    if pa.initial not in qs:
        errs.append(f"initial state {pa.initial!r} not in Q")
    if not pa.accepting <= qs:
        errs.append("accepting states not in Q")
    sigma = set(pa.alphabet)
    for t in pa.transitions:
        if t.src not in qs or t.dst not in qs:
            errs.append(f"transition {t.src!r} -{t.letter}-> {t.dst!r} has an unknown endpoint")
        if t.letter not in sigma:
            errs.append(f"transition letter {t.letter!r} not in the alphabet")
        if len(t.vec) != pa.dim:
            errs.append(f"transition {t.src!r} -{t.letter}-> {t.dst!r} has a vector of dimension {len(t.vec)}, expected {pa.dim}")
        elif any((not isinstance(x, int)) or x < 0 for x in t.vec):
            errs.append(f"transition {t.src!r} -{t.letter}-> {t.dst!r} has a non-natural entry")
    if pa.constraint.dim != pa.dim:
        errs.append(f"constraint dimension {pa.constraint.dim} differs from {pa.dim}")
    if isinstance(a, OmegaPA) and a.condition != "limit" and pa.constraint.gens is not None and pa.constraint.gens.has_inf():
        errs.append("∞ entries in the constraint are only meaningful for limit automata")
    return errs


def check(a) -> None:
    errs = validate(a)
    if errs:
        raise AutomatonError("; ".join(errs))


def is_deterministic(a) -> bool:
    if isinstance(a, MullerAutomaton):
        seen = set()
        for p, l, _ in a.transitions:
            if (p, l) in seen:
                return False
            seen.add((p, l))
        return True
    return all(len(ts) <= 1 for ts in _pa(a).delta.values())


def is_complete(a) -> bool:
    if isinstance(a, MullerAutomaton):
        have = {(p, l) for p, l, _ in a.transitions}
        return all((p, l) in have for p in a.states for l in a.alphabet)
    pa = _pa(a)
    return all(pa.delta.get((q, l)) for q in pa.states for l in pa.alphabet)


def fresh_state(existing: Iterable[State], hint: str = "sink") -> State:
    taken = set(existing)
    if hint not in taken:
        return hint
    i = 1
    while f"{hint}{i}" in taken:
        i += 1
    return f"{hint}{i}"


def complete_with_sink(a):
    """Add a non-accepting absorbing sink for missing (state, letter) pairs."""
    if isinstance(a, OmegaPA) and a.condition in ("safety", "reachability"):
        raise AutomatonError(
            f"refusing to complete a {a.condition} automaton: incompleteness is part of its "
            "meaning there, so inputs must already be complete"
        )
    pa = _pa(a)
    if is_complete(pa):
        return a
    sink = fresh_state(pa.states)
    zero = (0,) * pa.dim
    extra = []
    for q in pa.states:
        for l in pa.alphabet:
            if not pa.delta.get((q, l)):
                extra.append(Transition(q, l, zero, sink))
    for l in pa.alphabet:
        extra.append(Transition(sink, l, zero, sink))
    out = replace(pa, states=pa.states + (sink,), transitions=pa.transitions + tuple(extra))
    _drop_caches(out)
    return OmegaPA(out, a.condition) if isinstance(a, OmegaPA) else out


def _drop_caches(pa: FinitePA) -> None:
    for k in ("out", "delta", "index"):
        pa.__dict__.pop(k, None)


def reachable_states(a) -> List[State]:
    pa = _pa(a)
    seen = {pa.initial}
    order = [pa.initial]
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for t in pa.out.get(q, ()):
            if t.dst not in seen:
                seen.add(t.dst)
                order.append(t.dst)
    return order


# ---------------------------------------------------------------- constructions


ACCEPT_MODES = ("left", "right", "both", "union-flags")


def product(a1, a2, accept_mode: str = "both", condition: Optional[str] = None):
    """Synchronous product; labels are concatenated (a1's coordinates first)."""
    if accept_mode not in ACCEPT_MODES:
        raise AutomatonError(f"unknown accept mode {accept_mode!r}")
    p1, p2 = _pa(a1), _pa(a2)
    if set(p1.alphabet) != set(p2.alphabet):
        raise AutomatonError("alphabet mismatch in product")
    if condition is None:
        condition = a1.condition if isinstance(a1, OmegaPA) else None
    ext = condition == "limit"
    u1 = sl.universal_ext(p1.dim) if ext else sl.universal_nat(p1.dim)
    u2 = sl.universal_ext(p2.dim) if ext else sl.universal_nat(p2.dim)
    states = []
    init = (p1.initial, p2.initial)
    seen = {init}
    order = [init]
    trans = []
    i = 0
    while i < len(order):
        q1, q2 = order[i]
        i += 1
        for l in p1.alphabet:
            for t1 in p1.delta.get((q1, l), ()):
                for t2 in p2.delta.get((q2, l), ()):
                    dst = (t1.dst, t2.dst)
                    trans.append(Transition((q1, q2), l, t1.vec + t2.vec, dst))
                    if dst not in seen:
                        seen.add(dst)
                        order.append(dst)
    states = order
    F1, F2 = p1.accepting, p2.accepting
    if accept_mode == "left":
        acc = [q for q in states if q[0] in F1]
        c = sl.concat(p1.constraint, u2)
    elif accept_mode == "right":
        acc = [q for q in states if q[1] in F2]
        c = sl.concat(u1, p2.constraint)
    elif accept_mode == "both":
        acc = [q for q in states if q[0] in F1 and q[1] in F2]
        c = sl.concat(p1.constraint, p2.constraint)
    else:
        acc = [q for q in states if q[0] in F1 or q[1] in F2]
        c = sl.union(sl.concat(p1.constraint, u2), sl.concat(u1, p2.constraint))
    pa = FinitePA(tuple(states), p1.alphabet, init, tuple(trans), frozenset(acc), c, p1.dim + p2.dim)
    return OmegaPA(pa, condition) if condition is not None else pa


def full_product_states(a1, a2) -> List[Tuple[State, State]]:
    p1, p2 = _pa(a1), _pa(a2)
    return [(x, y) for x in p1.states for y in p2.states]


def segment_automaton(a, p: State, q: State, forbid_intermediate_accepting: bool = True,
                      constraint: Optional[ConstraintSet] = None) -> FinitePA:
    """Finite runs from p to q; the fresh initial state copies p's moves.

    With ``forbid_intermediate_accepting`` the transitions leaving accepting
    states are removed, so a run reaches an accepting state only at its end.
    """
    pa = _pa(a)
    if p not in pa.index or q not in pa.index:
        raise AutomatonError(f"unknown states {p!r}, {q!r}")
    start = ("seg-init",)
    while start in pa.index:
        start = start + ("'",)
    if forbid_intermediate_accepting:
        kept = tuple(t for t in pa.transitions if t.src not in pa.accepting)
    else:
        kept = pa.transitions
    extra = tuple(Transition(start, t.letter, t.vec, t.dst) for t in pa.out.get(p, ()))
    return FinitePA(
        (start,) + pa.states,
        pa.alphabet,
        start,
        extra + kept,
        frozenset([q]),
        pa.constraint if constraint is None else constraint,
        pa.dim,
    )


def union_fresh_initial(automata: Sequence[OmegaPA]) -> OmegaPA:
    """Disjoint union joined by a fresh initial state.

    When the constraints differ, one marker coordinate per input records the
    chosen branch (set to 1 on the first transition) and the constraint is
    ``⋃ C_i · {e_i}``; this is only sound for conditions that never reset.
    """
    if not automata:
        raise AutomatonError("union of no automata")
    cond = automata[0].condition
    dim = automata[0].dim
    sigma = automata[0].alphabet
    for a in automata:
        if a.condition != cond:
            raise AutomatonError("union of automata with mixed conditions")
        if a.dim != dim:
            raise AutomatonError("union of automata with different dimensions")
        if set(a.alphabet) != set(sigma):
            raise AutomatonError("alphabet mismatch in union")
    same = all(a.constraint == automata[0].constraint for a in automata)
    if not same and cond in ("strongreset", "weakreset"):
        raise AutomatonError("reset automata with different constraints cannot share one union constraint")
    k = 0 if same else len(automata)
    init = ("u-init",)
    states = [init]
    trans = []
    acc = []
    for i, a in enumerate(automata):
        mark = tuple(1 if j == i else 0 for j in range(k))
        zero = (0,) * k
        for q in a.states:
            states.append((i, q))
        acc.extend((i, q) for q in a.accepting)
        for t in a.transitions:
            trans.append(Transition((i, t.src), t.letter, t.vec + zero, (i, t.dst)))
        for t in a.pa.out.get(a.initial, ()):
            trans.append(Transition(init, t.letter, t.vec + mark, (i, t.dst)))
    if same:
        c = automata[0].constraint
    else:
        c = None
        for i, a in enumerate(automata):
            mark = tuple(1 if j == i else 0 for j in range(k))
            part = sl.concat(a.constraint, sl.singleton(mark))
            c = part if c is None else sl.union(c, part)
    pa = FinitePA(tuple(states), sigma, init, tuple(trans), frozenset(acc), c, dim + k)
    return OmegaPA(pa, cond)


def run_finite(a, w: Sequence[Letter]) -> Optional[Tuple[State, Tuple[int, ...], Tuple[Transition, ...]]]:
    """(end state, Parikh image, transitions) of the unique run, or None."""
    pa = _pa(a)
    if not is_deterministic(pa):
        raise AutomatonError("run_finite needs a deterministic automaton")
    q = pa.initial
    rho = [0] * pa.dim
    run = []
    for l in w:
        t = pa.step(q, l)
        if t is None:
            return None
        run.append(t)
        for j, x in enumerate(t.vec):
            rho[j] += x
        q = t.dst
    return q, tuple(rho), tuple(run)


def accepts_finite(a: FinitePA, w: Sequence[Letter]) -> bool:
    """Finite-word acceptance; works for nondeterministic automata too."""
    pa = _pa(a)
    configs = {(pa.initial, (0,) * pa.dim)}
    for l in w:
        nxt = set()
        for q, v in configs:
            for t in pa.delta.get((q, l), ()):
                nxt.add((t.dst, tuple(x + y for x, y in zip(v, t.vec))))
        configs = nxt
    return any(q in pa.accepting and sl.member(v, pa.constraint) for q, v in configs)


def replay(a, run: Sequence[Transition]) -> bool:
    """Does the transition list form a path from the initial state?"""
    pa = _pa(a)
    q = pa.initial
    have = set(pa.transitions)
    for t in run:
        if t.src != q or t not in have:
            return False
        q = t.dst
    return True


def restrict_to_lasso(a: OmegaPA, w: LassoWord) -> OmegaPA:
    """Product with the deterministic lasso structure of ``w``."""
    n = len(w.stem) + len(w.period)
    word = w.stem + w.period
    pa = a.pa
    states = tuple((q, i) for q in pa.states for i in range(n))
    trans = []
    for q in pa.states:
        for i in range(n):
            j = i + 1 if i + 1 < n else len(w.stem)
            for t in pa.delta.get((q, word[i]), ()):
                trans.append(Transition((q, i), t.letter, t.vec, (t.dst, j)))
    acc = frozenset((q, i) for q in pa.accepting for i in range(n))
    out = FinitePA(states, pa.alphabet, (pa.initial, 0), tuple(trans), acc, pa.constraint, pa.dim)
    return OmegaPA(out, a.condition)


def rename_states(a, names: Dict[State, State]):
    pa = _pa(a)
    out = FinitePA(
        tuple(names[q] for q in pa.states),
        pa.alphabet,
        names[pa.initial],
        tuple(Transition(names[t.src], t.letter, t.vec, names[t.dst]) for t in pa.transitions),
        frozenset(names[q] for q in pa.accepting),
        pa.constraint,
        pa.dim,
    )
    return OmegaPA(out, a.condition) if isinstance(a, OmegaPA) else out


def canonical_names(a):
    """Rename states to s0, s1, ... in their stored order (for text output)."""
    pa = _pa(a)
    if all(isinstance(q, str) for q in pa.states):
        return a
    return rename_states(a, {q: f"s{i}" for i, q in enumerate(pa.states)})


def trim(a):
    """Drop states unreachable from the initial state."""
    pa = _pa(a)
    keep = set(reachable_states(pa))
    out = FinitePA(
        tuple(q for q in pa.states if q in keep),
        pa.alphabet,
        pa.initial,
        tuple(t for t in pa.transitions if t.src in keep),
        frozenset(q for q in pa.accepting if q in keep),
        pa.constraint,
        pa.dim,
    )
    return OmegaPA(out, a.condition) if isinstance(a, OmegaPA) else out


def pad_dimension(a, extra: int, constraint: ConstraintSet):
    """Append ``extra`` zero coordinates to every label and swap the constraint."""
    pa = _pa(a)
    z = (0,) * extra
    out = FinitePA(
        pa.states,
        pa.alphabet,
        pa.initial,
        tuple(Transition(t.src, t.letter, t.vec + z, t.dst) for t in pa.transitions),
        pa.accepting,
        constraint,
        pa.dim + extra,
    )
    return OmegaPA(out, a.condition) if isinstance(a, OmegaPA) else out
