"""Membership of ultimately periodic words u·v^ω in deterministic ω-PA.

The run on u·v^ω is split into a stem and a cycle made of whole v-blocks.
Positions in the cycle repeat with a fixed phase, and the counter image at
phase φ of the m-th traversal is ``a_φ + m·δ``.  Every condition then
reduces to finitely many membership tests and closed Presburger sentences
over the single variable m.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import presburger as pb
from . import semilinear as sl
from .automata import AutomatonError, LassoWord, OmegaPA, Transition, is_deterministic
from .semilinear import INF, ConstraintSet


class UnsupportedCondition(AutomatonError):
    pass


@dataclass(frozen=True)
class LassoDecomposition:
    stem: Tuple[Transition, ...]
    cycle: Tuple[Transition, ...]
    # images[i] = image after i transitions, for i in 0..len(stem)+len(cycle)
    images: Tuple[Tuple[int, ...], ...]
    delta: Tuple[int, ...]
    initial: object

    @property
    def stem_len(self) -> int:
        return len(self.stem)

    @property
    def cycle_len(self) -> int:
        return len(self.cycle)

    def state(self, i: int):
        """State after i transitions (i may exceed the first traversal)."""
        if i == 0:
            return self.initial
        s, L = self.stem_len, self.cycle_len
        if i <= s:
            return self.stem[i - 1].dst
        return self.cycle[(i - s - 1) % L].dst

    def cycle_states(self) -> List:
        return [t.dst for t in self.cycle]


def decompose(a: OmegaPA, w: LassoWord) -> Optional[LassoDecomposition]:
    """Stem/cycle split of the run; None when the run blocks."""
    if not is_deterministic(a):
        raise AutomatonError("lasso decomposition needs a deterministic automaton")
    pa = a.pa
    q = pa.initial
    trans: List[Transition] = []
    for l in w.stem:
        t = pa.step(q, l)
        if t is None:
            return None
        trans.append(t)
        q = t.dst
    block_start = {q: 0}
    blocks = 0
    while True:
        for l in w.period:
            t = pa.step(q, l)
            if t is None:
                return None
            trans.append(t)
            q = t.dst
        blocks += 1
        if q in block_start:
            first = block_start[q]
            break
        block_start[q] = blocks
    s = len(w.stem) + first * len(w.period)
    stem, cycle = tuple(trans[:s]), tuple(trans[s:])
    images = [(0,) * pa.dim]
    for t in trans:
        images.append(tuple(x + y for x, y in zip(images[-1], t.vec)))
    delta = tuple(x - y for x, y in zip(images[-1], images[s]))
    return LassoDecomposition(stem, cycle, tuple(images), delta, pa.initial)


def limit_vector(dec: LassoDecomposition):
    """∞ where a cycle transition is nonzero, else the finite total."""
    dim = len(dec.delta)
    out = []
    for j in range(dim):
        if any(t.vec[j] for t in dec.cycle):
            out.append(INF)
        else:
            out.append(dec.images[dec.stem_len][j])
    return tuple(out)


# ---------------------------------------------------------------- progression queries

_SHORTCUT = 8  # concrete values of m tried before building a sentence


def _prog(base: Sequence[int], delta: Sequence[int], m: int) -> Tuple[int, ...]:
    return tuple(b + m * d for b, d in zip(base, delta))


def _prog_formula(c: ConstraintSet, base, delta, m: pb.Term) -> pb.Formula:
    terms = [pb.const(b) + m * d for b, d in zip(base, delta)]
    return sl.formula_on(c, terms)


def exists_m(c: ConstraintSet, base, delta, m_min: int = 0) -> bool:
    """∃ m ≥ m_min: base + m·delta ∈ C."""
    if not any(delta):
        return sl.member(tuple(base), c)
    for m in range(m_min, m_min + _SHORTCUT):
        if sl.member(_prog(base, delta, m), c):
            return True
    x = pb.fresh("_m")
    return pb.decide(pb.exists(x, pb.conj(pb.ge(x, m_min), _prog_formula(c, base, delta, pb.var(x)))))


def forall_m(c: ConstraintSet, base, delta) -> bool:
    """∀ m ≥ 0: base + m·delta ∈ C."""
    if not any(delta):
        return sl.member(tuple(base), c)
    for m in range(_SHORTCUT):
        if not sl.member(_prog(base, delta, m), c):
            return False
    x = pb.fresh("_m")
    return pb.decide(pb.forall(x, _prog_formula(c, base, delta, pb.var(x))))


def infinitely_often(c: ConstraintSet, base, delta) -> bool:
    """∀ M ∃ m > M: base + m·delta ∈ C."""
    if not any(delta):
        return sl.member(tuple(base), c)
    big, x = pb.fresh("_M"), pb.fresh("_m")
    body = pb.exists(x, pb.conj(pb.gt(x, big), _prog_formula(c, base, delta, pb.var(x))))
    return pb.decide(pb.forall(big, body))


def eventually_always(c: ConstraintSet, base, delta) -> bool:
    """∃ M ∀ m > M: base + m·delta ∈ C."""
    if not any(delta):
        return sl.member(tuple(base), c)
    big, x = pb.fresh("_M"), pb.fresh("_m")
    body = pb.forall(x, pb.disj(pb.le(x, big), _prog_formula(c, base, delta, pb.var(x))))
    return pb.decide(pb.exists(big, body))


# ---------------------------------------------------------------- acceptance


def accepts(a: OmegaPA, w: LassoWord) -> bool:
    """Exact membership of u·v^ω for a deterministic automaton."""
    if a.condition != "limit" and a.constraint.gens is not None and a.constraint.gens.has_inf():
        raise AutomatonError("∞ entries in the constraint of a non-limit automaton")
    dec = decompose(a, w)
    if dec is None:
        return False
    return _decide(a, dec)


def _decide(a: OmegaPA, dec: LassoDecomposition) -> bool:
    F, C = a.accepting, a.constraint
    S, L = dec.stem_len, dec.cycle_len
    img = dec.images
    stem_acc = [i for i in range(1, S + 1) if dec.state(i) in F]
    phases = [phi for phi in range(1, L + 1) if dec.state(S + phi) in F]
    cond = a.condition

    def reach_hit() -> bool:
        if any(sl.member(img[i], C) for i in stem_acc):
            return True
        return any(exists_m(C, img[S + phi], dec.delta) for phi in phases)

    if cond == "reachability":
        return reach_hit()
    if cond == "reachreg":
        return bool(phases) and reach_hit()
    if cond == "safety":
        if dec.initial not in F or not sl.member(img[0], C):
            return False
        if len(stem_acc) != S or len(phases) != L:
            return False
        if not all(sl.member(img[i], C) for i in range(1, S + 1)):
            return False
        return all(forall_m(C, img[S + phi], dec.delta) for phi in range(1, L + 1))
    if cond == "buchi":
        return any(infinitely_often(C, img[S + phi], dec.delta) for phi in phases)
    if cond == "cobuchi":
        if len(phases) != L:
            return False
        return all(eventually_always(C, img[S + phi], dec.delta) for phi in phases)
    if cond == "limit":
        return bool(phases) and sl.member(limit_vector(dec), C)
    if cond == "strongreset":
        return _strong_reset(C, dec, stem_acc, phases)
    if cond == "weakreset":
        return _weak_reset(C, dec, stem_acc, phases)
    raise UnsupportedCondition(cond)


def _diff(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _strong_reset(C, dec, stem_acc, phases) -> bool:
    if not phases:
        return False
    S = dec.stem_len
    img = dec.images
    # positions of the first traversal, then one more phase to close the wrap
    positions = [0] + stem_acc + [S + phi for phi in phases]
    for k0, k1 in zip(positions, positions[1:]):
        if not sl.member(_diff(img[k1], img[k0]), C):
            return False
    first, last = phases[0], phases[-1]
    wrap = tuple(x + d - y for x, d, y in zip(img[S + first], dec.delta, img[S + last]))
    return sl.member(wrap, C)


def _weak_reset(C, dec, stem_acc, phases) -> bool:
    if not phases:
        return False
    S = dec.stem_len
    img = dec.images
    delta = dec.delta
    stem_nodes = [0] + stem_acc
    succ = {("s", k): [] for k in stem_nodes}
    succ.update({("c", phi): [] for phi in phases})
    for i, k in enumerate(stem_nodes):
        for k2 in stem_nodes[i + 1:]:
            if sl.member(_diff(img[k2], img[k]), C):
                succ[("s", k)].append(("s", k2))
        for phi in phases:
            if exists_m(C, _diff(img[S + phi], img[k]), delta):
                succ[("s", k)].append(("c", phi))
    for phi in phases:
        for psi in phases:
            m_min = 1 if psi <= phi else 0
            if exists_m(C, _diff(img[S + psi], img[S + phi]), delta, m_min):
                succ[("c", phi)].append(("c", psi))
    # cycle phases reachable from position 0
    seen = {("s", 0)}
    stack = [("s", 0)]
    while stack:
        n = stack.pop()
        for m in succ[n]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    live = [n for n in seen if n[0] == "c"]
    # does some reachable phase lie on a cycle of phase nodes?
    for start in live:
        todo = list(succ[start])
        visited = set()
        while todo:
            n = todo.pop()
            if n == start:
                return True
            if n in visited:
                continue
            visited.add(n)
            todo.extend(succ[n])
    return False


def accepts_nondet(a: OmegaPA, w: LassoWord, force_emptiness: bool = False) -> bool:
    """Membership for possibly nondeterministic automata via emptiness.

    Deterministic inputs go through :func:`accepts` unless ``force_emptiness``
    is set, which is how the two routes are cross-checked.
    """
    if a.condition in ("safety", "cobuchi"):
        raise UnsupportedCondition(
            f"nondeterministic {a.condition} membership is not supported"
        )
    if is_deterministic(a) and not force_emptiness:
        return accepts(a, w)
    from .automata import restrict_to_lasso
    from .decisions import empty_omega

    verdict = empty_omega(restrict_to_lasso(a, w), want_witness=False)
    return verdict.answer == "no"
