"""Emptiness, universality, inclusion and model checking.

Most procedures bottom out in :func:`find_path`, which looks for a run
between two sets of states whose Parikh image satisfies a formula.  The run
is found through its transition multiplicities: flow conservation plus the
image constraint go to the Presburger engine, and connectivity of the flow
support is enforced lazily by adding one cut lemma per disconnected answer.
The multiplicities are then turned back into a concrete run with an Euler
walk.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import lasso as lasso_mod
from . import presburger as pb
from . import semilinear as sl
from .automata import (
    AutomatonError,
    FinitePA,
    LassoWord,
    OmegaPA,
    Transition,
    Witness,
    is_complete,
    is_deterministic,
    segment_automaton,
)
from .lasso import UnsupportedCondition
from .semilinear import ConstraintSet

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Verdict:
    answer: str
    witness: Optional[Witness] = None
    bound_note: Optional[str] = None

    def __post_init__(self):
        if self.answer not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict {self.answer!r}")


def _pa(a) -> FinitePA:
    return a.pa if isinstance(a, OmegaPA) else a


# ---------------------------------------------------------------- graphs


def _successors(transitions: Iterable[Transition]) -> Dict:
    succ: Dict = {}
    for t in transitions:
        succ.setdefault(t.src, []).append(t)
    return succ


def _reach_from(transitions, sources) -> set:
    succ = _successors(transitions)
    seen = set(sources)
    todo = list(sources)
    while todo:
        q = todo.pop()
        for t in succ.get(q, ()):
            if t.dst not in seen:
                seen.add(t.dst)
                todo.append(t.dst)
    return seen


def _reach_to(transitions, targets) -> set:
    pred: Dict = {}
    for t in transitions:
        pred.setdefault(t.dst, []).append(t.src)
    seen = set(targets)
    todo = list(targets)
    while todo:
        q = todo.pop()
        for p in pred.get(q, ()):
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def shortest_path(transitions, src, goals, nonempty: bool = False) -> Optional[List[Transition]]:
    """BFS path in transition order; ``nonempty`` forbids the empty path."""
    goals = set(goals)
    if src in goals and not nonempty:
        return []
    succ = _successors(transitions)
    prev: Dict = {}
    todo = deque()
    for t in succ.get(src, ()):
        if t.dst not in prev:
            prev[t.dst] = t
            todo.append(t.dst)
    while todo:
        q = todo.popleft()
        if q in goals:
            path = []
            while True:
                t = prev[q]
                path.append(t)
                q = t.src
                if q == src:
                    break
            return path[::-1]
        for t in succ.get(q, ()):
            if t.dst not in prev:
                prev[t.dst] = t
                todo.append(t.dst)
    return None


def sccs(states: Sequence, transitions: Sequence[Transition]) -> List[List]:
    """Strongly connected components (iterative Tarjan), in discovery order."""
    succ: Dict = {}
    for t in transitions:
        succ.setdefault(t.src, []).append(t.dst)
    index: Dict = {}
    low: Dict = {}
    on_stack = set()
    stack: List = []
    out: List[List] = []
    counter = 0
    for root in states:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def _cyclic_states(states, transitions) -> set:
    """States lying on some cycle."""
    out = set()
    for comp in sccs(states, transitions):
        cs = set(comp)
        if any(t.src in cs and t.dst in cs for t in transitions):
            out |= cs
    return out


def cycle_through(transitions, q, allowed=None) -> Optional[List[Transition]]:
    """Shortest nonempty cycle from q back to q inside ``allowed`` states."""
    ts = [t for t in transitions if allowed is None or (t.src in allowed and t.dst in allowed)]
    return shortest_path(ts, q, [q], nonempty=True)


def _word(run: Sequence[Transition]) -> Tuple:
    return tuple(t.letter for t in run)


# ---------------------------------------------------------------- flow search


ImageConstraint = Callable[[List[pb.Term]], pb.Formula]


def in_set(c: ConstraintSet, infs: Optional[Sequence[int]] = None) -> ImageConstraint:
    """Image constraint "image ∈ C", optionally with ∞ flags fixed."""
    return lambda terms: sl.formula_on(c, terms, infs)


def _image_terms(ts: Sequence[Transition], xs: Sequence[str], dim: int) -> List[pb.Term]:
    terms = []
    for j in range(dim):
        coeffs: Dict[str, int] = {}
        for t, x in zip(ts, xs):
            if t.vec[j]:
                coeffs[x] = coeffs.get(x, 0) + t.vec[j]
        terms.append(pb.Term.of(coeffs, 0))
    return terms


def find_path(
    transitions: Sequence[Transition],
    dim: int,
    source,
    targets: Sequence,
    image: Optional[ImageConstraint] = None,
    nonempty: bool = False,
    extra: Optional[Callable[[List[pb.Term], Dict], pb.Formula]] = None,
) -> Optional[List[Transition]]:
    """A run from ``source`` to one of ``targets`` whose image satisfies ``image``.

    ``extra`` receives the image terms and the target-selector terms (1/0
    indicators per target) and may add further constraints; layered searches
    use it to relate the image to the chosen target.  Returns the
    run as a transition list or None when no such run exists.
    """
    targets = list(dict.fromkeys(targets))
    if not targets:
        return None
    fwd = _reach_from(transitions, [source])
    live_targets = [q for q in targets if q in fwd]
    if not live_targets:
        return None
    bwd = _reach_to(transitions, live_targets)
    ts = [t for t in transitions if t.src in fwd and t.dst in bwd and t.src in bwd]
    ts = list(dict.fromkeys(ts))
    states = sorted({source, *live_targets, *(t.src for t in ts), *(t.dst for t in ts)}, key=repr)
    xs = [f"_x{i}" for i in range(len(ts))]
    sel = {q: f"_t{i}" for i, q in enumerate(live_targets)}
    parts: List[pb.Formula] = []
    if len(live_targets) == 1:
        fixed = {live_targets[0]: 1}
        sel_terms = {q: pb.const(v) for q, v in fixed.items()}
    else:
        sel_terms = {q: pb.var(v) for q, v in sel.items()}
        parts.append(pb.eq(sum((pb.var(v) for v in sel.values()), pb.const(0)), 1))
    for q in states:
        flow = pb.const(0)
        for t, x in zip(ts, xs):
            if t.dst == q:
                flow = flow + pb.var(x)
            if t.src == q:
                flow = flow - pb.var(x)
        rhs = sel_terms.get(q, pb.const(0)) - (1 if q == source else 0)
        parts.append(pb.eq(flow, rhs))
    if nonempty:
        parts.append(pb.ge(sum((pb.var(x) for x in xs), pb.const(0)), 1))
    terms = _image_terms(ts, xs, dim)
    if image is not None:
        parts.append(image(terms))
    if extra is not None:
        parts.append(extra(terms, {q: sel_terms.get(q, pb.const(0)) for q in targets}))
    lemmas: List[pb.Formula] = []
    while True:
        model = pb.sat_witness(pb.conj(*parts, *lemmas))
        if model is None:
            return None
        counts = {t: model[x] for t, x in zip(ts, xs) if model.get(x, 0) > 0}
        if len(live_targets) == 1:
            target = live_targets[0]
        else:
            target = next(q for q in live_targets if model[sel[q]] == 1)
        support = list(counts)
        reached = _reach_from(support, [source])
        stray = {t.src for t in support if t.src not in reached} | {t.dst for t in support if t.dst not in reached}
        if not stray:
            return _euler(counts, source, target)
        inner = pb.const(0)
        entering = pb.const(0)
        for t, x in zip(ts, xs):
            if t.src in stray:
                inner = inner + pb.var(x)
            elif t.dst in stray:
                entering = entering + pb.var(x)
        lemmas.append(pb.disj(pb.eq(inner, 0), pb.ge(entering, 1)))


def _euler(counts: Dict[Transition, int], source, target) -> List[Transition]:
    """Euler walk from source to target using each transition its multiplicity."""
    order = {t: i for i, t in enumerate(counts)}
    left = dict(counts)
    succ: Dict = {}
    for t in sorted(counts, key=order.get):
        succ.setdefault(t.src, []).append(t)
    ptr = {q: 0 for q in succ}

    def next_edge(q):
        lst = succ.get(q, [])
        while ptr.get(q, 0) < len(lst):
            t = lst[ptr[q]]
            if left[t] > 0:
                left[t] -= 1
                return t
            ptr[q] += 1
        return None

    # Hierholzer on the multigraph; the path variant works because the
    # degree imbalance is exactly source → target.
    stack: List[Tuple[object, Optional[Transition]]] = [(source, None)]
    path: List[Transition] = []
    while stack:
        q, via = stack[-1]
        t = next_edge(q)
        if t is None:
            stack.pop()
            if via is not None:
                path.append(via)
        else:
            stack.append((t.dst, t))
    path.reverse()
    if sum(counts.values()) != len(path):
        raise AssertionError("flow support was not Eulerian")
    if path and (path[0].src != source or path[-1].dst != target):
        raise AssertionError("Euler walk has wrong endpoints")
    return path


# ---------------------------------------------------------------- witnesses


def _lasso_witness(stem_run: Sequence[Transition], cycle_run: Sequence[Transition]) -> Witness:
    if not cycle_run:
        raise AssertionError("empty cycle in lasso witness")
    return Witness("lasso", lasso=LassoWord(_word(stem_run), _word(cycle_run)),
                   run=tuple(stem_run) + tuple(cycle_run))


def _nonempty(witness: Witness, note: Optional[str] = None) -> Verdict:
    return Verdict(NO, witness, note)


def _relabel(run: Sequence[Transition], src) -> List[Transition]:
    """Replace the source of the first transition (fresh start states)."""
    if not run:
        return []
    t = run[0]
    return [Transition(src, t.letter, t.vec, t.dst)] + list(run[1:])


# ---------------------------------------------------------------- emptiness


def empty_finite(a, want_witness: bool = True) -> Verdict:
    """Is the finite-word language of ``a`` empty?"""
    pa = _pa(a)
    targets = [q for q in pa.states if q in pa.accepting]
    run = find_path(pa.transitions, pa.dim, pa.initial, targets, in_set(pa.constraint))
    if run is None:
        return Verdict(YES)
    return _nonempty(Witness("finite", word=_word(run), run=tuple(run)))


def _tail_to_cycle(pa: FinitePA, start, goal_states) -> Optional[Tuple[List[Transition], List[Transition]]]:
    """Path from ``start`` to a goal state on a cycle, and that cycle."""
    path = shortest_path(pa.transitions, start, goal_states)
    if path is None:
        return None
    end = path[-1].dst if path else start
    cyc = cycle_through(pa.transitions, end)
    return path, cyc


def _cycle_goals(pa: FinitePA, accepting_only: bool) -> set:
    cyc = _cyclic_states(pa.states, pa.transitions)
    # a goal must have a cycle through itself; restrict to accepting ones if asked
    return {q for q in cyc if (q in pa.accepting or not accepting_only)}


def _empty_reach(pa: FinitePA, regular: bool) -> Verdict:
    goals = _cycle_goals(pa, accepting_only=regular)
    if not goals:
        return Verdict(YES)
    good = _reach_to(pa.transitions, goals)
    targets = [q for q in pa.states if q in pa.accepting and q in good]
    run = find_path(pa.transitions, pa.dim, pa.initial, targets, in_set(pa.constraint), nonempty=True)
    if run is None:
        return Verdict(YES)
    path, cyc = _tail_to_cycle(pa, run[-1].dst, goals)
    return _nonempty(_lasso_witness(run + path, cyc))


def _generators(c: ConstraintSet):
    if c.gens is not None:
        return c.gens
    return sl.synthesize_generators(sl.to_formula(c), c.dim)


def _empty_buchi(pa: FinitePA) -> Verdict:
    gens = _generators(pa.constraint)
    if gens is None:
        return Verdict(UNKNOWN, bound_note="constraint has no generator form; Büchi emptiness needs one")
    cyc = _cyclic_states(pa.states, pa.transitions)
    for f in pa.states:
        if f not in pa.accepting or f not in cyc:
            continue
        for comp in gens.components:
            lin = sl.from_generators(sl.SemiLinearSet(pa.dim, (comp,)))
            prefix = find_path(pa.transitions, pa.dim, pa.initial, [f], in_set(lin))
            if prefix is None:
                continue
            span = sl.linear_set((0,) * pa.dim, comp.periods)
            loop = find_path(pa.transitions, pa.dim, f, [f], in_set(span), nonempty=True)
            if loop is not None:
                return _nonempty(_lasso_witness(prefix, loop))
    return Verdict(YES)


def _covering_walk(transitions: Sequence[Transition], start) -> List[Transition]:
    """Closed walk from ``start`` using every transition at least once."""
    walk: List[Transition] = []
    cur = start
    for t in transitions:
        if t in walk:
            continue
        hop = shortest_path(transitions, cur, [t.src])
        walk += hop + [t]
        cur = t.dst
    walk += shortest_path(transitions, cur, [start])
    return walk


def _empty_limit(pa: FinitePA) -> Verdict:
    d = pa.dim
    live = set(_reach_from(pa.transitions, [pa.initial]))
    base = [t for t in pa.transitions if t.src in live]
    subsets = sorted((c for r in range(d + 1) for c in itertools.combinations(range(d), r)),
                     key=lambda c: (len(c), c))
    for D in subsets:
        ts = [t for t in base if all(t.vec[j] == 0 or j in D for j in range(d))]
        for comp in sccs([q for q in pa.states if q in live], ts):
            cs = set(comp)
            inner = [t for t in ts if t.src in cs and t.dst in cs]
            if not inner or not (cs & pa.accepting):
                continue
            actual = tuple(j for j in range(d) if any(t.vec[j] for t in inner))
            if actual != D:
                continue
            infs = [1 if j in D else 0 for j in range(d)]
            order = [q for q in pa.states if q in cs]
            prefix = find_path(pa.transitions, d, pa.initial, order, in_set(pa.constraint, infs))
            if prefix is None:
                continue
            end = prefix[-1].dst if prefix else pa.initial
            return _nonempty(_lasso_witness(prefix, _covering_walk(inner, end)))
    return Verdict(YES)


@dataclass
class _ResetGraph:
    """Reset positions as nodes; an edge carries one segment run."""

    pa: FinitePA
    strong: bool
    constraint: ConstraintSet

    def __post_init__(self):
        self.edges: Dict = {}
        self.targets = [q for q in self.pa.states if q in self.pa.accepting]

    def segment(self, p, q) -> Optional[List[Transition]]:
        key = (p, q)
        if key not in self.edges:
            seg = segment_automaton(self.pa, p, q, self.strong, self.constraint)
            run = find_path(seg.transitions, seg.dim, seg.initial, [q], in_set(self.constraint), nonempty=True)
            self.edges[key] = None if run is None else _relabel(run, p)
        return self.edges[key]

    def succ(self, p) -> List:
        return [q for q in self.targets if self.segment(p, q) is not None]

    def explore(self, start) -> List:
        order, seen = [start], {start}
        i = 0
        while i < len(order):
            for q in self.succ(order[i]):
                if q not in seen:
                    seen.add(q)
                    order.append(q)
            i += 1
        return order

    def node_path(self, src, goal, nonempty=False) -> Optional[List]:
        """Node sequence src..goal along discovered edges (BFS)."""
        if src == goal and not nonempty:
            return [src]
        prev = {}
        todo = deque([src])
        while todo:
            n = todo.popleft()
            for m in self.succ(n):
                if m not in prev:
                    prev[m] = n
                    if m == goal:
                        seq = [m]
                        while True:
                            k = prev[seq[-1]]
                            seq.append(k)
                            if k == src:
                                break
                        return seq[::-1]
                    todo.append(m)
        return None

    def run_along(self, nodes: Sequence) -> List[Transition]:
        out: List[Transition] = []
        for a, b in zip(nodes, nodes[1:]):
            out += self.segment(a, b)
        return out

    def lasso_from(self, start) -> Optional[Tuple[List[Transition], List[Transition]]]:
        """Stem and cycle runs for a reachable accepting node on a cycle."""
        reach = self.explore(start)
        for f in reach:
            if f not in self.pa.accepting:
                continue
            loop = self.node_path(f, f, nonempty=True)
            if loop is None:
                continue
            stem = self.node_path(start, f)
            return self.run_along(stem), self.run_along(loop)
        return None


def _empty_reset(pa: FinitePA, strong: bool) -> Verdict:
    g = _ResetGraph(pa, strong, pa.constraint)
    found = g.lasso_from(pa.initial)
    if found is None:
        return Verdict(YES)
    return _nonempty(_lasso_witness(*found))


def empty_omega(a: OmegaPA, want_witness: bool = True) -> Verdict:
    """Emptiness of the ω-language; NO comes with a lasso witness."""
    pa = a.pa
    cond = a.condition
    if cond in ("safety", "cobuchi"):
        raise UnsupportedCondition(f"emptiness of {cond} PA is undecidable and not offered")
    if cond == "reachability":
        return _empty_reach(pa, regular=False)
    if cond == "reachreg":
        return _empty_reach(pa, regular=True)
    if cond == "buchi":
        return _empty_buchi(pa)
    if cond == "limit":
        return _empty_limit(pa)
    if cond == "strongreset":
        return _empty_reset(pa, strong=True)
    if cond == "weakreset":
        return _empty_reset(pa, strong=False)
    raise UnsupportedCondition(cond)


# ---------------------------------------------------------------- membership helpers


def member(a: OmegaPA, w: LassoWord) -> bool:
    """Exact membership, deterministic or not (where decidable)."""
    if is_deterministic(a):
        return lasso_mod.accepts(a, w)
    return lasso_mod.accepts_nondet(a, w)


def lasso_search(alphabet: Sequence, max_stem: int, max_period: int):
    """Lassos ordered by total length, then period length, then letters."""
    for total in range(1, max_stem + max_period + 1):
        for plen in range(1, min(total, max_period) + 1):
            slen = total - plen
            if slen > max_stem:
                continue
            for u in itertools.product(alphabet, repeat=slen):
                for v in itertools.product(alphabet, repeat=plen):
                    yield LassoWord(u, v)


# ---------------------------------------------------------------- finite universality / irrelevance


def universal_det_finite(a) -> Verdict:
    """Does the deterministic complete PA accept every finite word?"""
    pa = _pa(a)
    if not is_deterministic(pa) or not is_complete(pa):
        raise AutomatonError("universal_det_finite needs a deterministic complete PA")
    bad_state = [q for q in pa.states if q not in pa.accepting]
    path = shortest_path(pa.transitions, pa.initial, bad_state)
    if path is not None:
        return _nonempty(Witness("finite", word=_word(path), run=tuple(path)))
    run = find_path(pa.transitions, pa.dim, pa.initial, list(pa.states), in_set(sl.complement(pa.constraint)))
    if run is None:
        return Verdict(YES)
    return _nonempty(Witness("finite", word=_word(run), run=tuple(run)))


def irrelevance_det(a) -> Verdict:
    """Is every accepting run's image inside C?"""
    pa = _pa(a)
    if not is_deterministic(pa):
        raise AutomatonError("irrelevance_det needs a deterministic PA")
    targets = [q for q in pa.states if q in pa.accepting]
    run = find_path(pa.transitions, pa.dim, pa.initial, targets, in_set(sl.complement(pa.constraint)))
    if run is None:
        return Verdict(YES)
    return _nonempty(Witness("finite", word=_word(run), run=tuple(run)))


# ---------------------------------------------------------------- limit


def _strip_run(v: Verdict) -> Verdict:
    """Keep only the word: the run belongs to an auxiliary automaton."""
    if v.witness is None:
        return v
    w = v.witness
    return Verdict(v.answer, Witness(w.kind, word=w.word, lasso=w.lasso), v.bound_note)


def _require_det_limit(*auts) -> None:
    for a in auts:
        if a.condition != "limit" or not is_deterministic(a):
            raise AutomatonError("expected a deterministic limit PA")


def universal_det_limit(a: OmegaPA) -> Verdict:
    from .transforms import limit_complement

    _require_det_limit(a)
    return _strip_run(empty_omega(limit_complement(a)))


def include_det_limit(a1: OmegaPA, a2: OmegaPA) -> Verdict:
    from .transforms import limit_complement, limit_intersection

    _require_det_limit(a1, a2)
    return _strip_run(empty_omega(limit_intersection(a1, limit_complement(a2))))


def intersect_empty_limit(a1: OmegaPA, a2: OmegaPA) -> Verdict:
    from .transforms import limit_intersection

    _require_det_limit(a1, a2)
    return _strip_run(empty_omega(limit_intersection(a1, a2)))


# ---------------------------------------------------------------- strong reset


def _require_det_sr(a: OmegaPA) -> None:
    if a.condition != "strongreset" or not is_deterministic(a):
        raise AutomatonError("expected a deterministic strong reset PA")


def universal_det_sr(a: OmegaPA) -> Verdict:
    """Universality via the two ways a strong reset PA can reject."""
    from .transforms import complement_det_buchi, underlying_buchi, violation_automaton, violation_sources

    _require_det_sr(a)
    if not is_complete(a):
        raise AutomatonError("universal_det_sr needs a complete automaton")
    v = empty_omega(complement_det_buchi(underlying_buchi(a)))
    if v.answer == NO:
        return _strip_run(v)
    for p in violation_sources(a):
        for q in a.states:
            if q not in a.accepting:
                continue
            v = empty_omega(violation_automaton(a, p, q))
            if v.answer == NO:
                return _strip_run(v)
    return Verdict(YES)


def _product_pairs(a1: FinitePA, a2: FinitePA):
    """Reachable pairs and synchronous transitions (vectors of both sides)."""
    init = (a1.initial, a2.initial)
    order, seen = [init], {init}
    trans = []
    i = 0
    while i < len(order):
        q1, q2 = order[i]
        i += 1
        for l in a1.alphabet:
            for t1 in a1.delta.get((q1, l), ()):
                for t2 in a2.delta.get((q2, l), ()):
                    dst = (t1.dst, t2.dst)
                    trans.append((t1, t2, dst))
                    if dst not in seen:
                        seen.add(dst)
                        order.append(dst)
    return order, trans


def intersect_empty_sr_buchi(a1: OmegaPA, b: OmegaPA) -> Verdict:
    """Is SR(a1) ∩ L(b) empty?  b is a dimension-0 Büchi automaton.

    Nodes are product states at reset positions of a1.  A segment is flagged
    when b visits an accepting state inside it; the intersection is nonempty
    iff a flagged segment lies on a cycle of reachable nodes.
    """
    _require_det_sr(a1)
    if b.dim != 0:
        raise AutomatonError("the Büchi side must have dimension 0")
    p1, p2 = a1.pa, b.pa
    if set(p1.alphabet) != set(p2.alphabet):
        raise AutomatonError("alphabet mismatch")
    F1, F2 = p1.accepting, p2.accepting
    pairs, ptrans = _product_pairs(p1, p2)
    inner = []
    for t1, t2, dst in ptrans:
        src = (t1.src, t2.src)
        if t1.src in F1:
            continue
        for flag in (0, 1):
            nflag = 1 if (flag or dst[1] in F2) else 0
            inner.append(Transition(src + (flag,), t1.letter, t1.vec, dst + (nflag,)))
    by_src: Dict = {}
    for t1, t2, dst in ptrans:
        by_src.setdefault((t1.src, t2.src), []).append((t1, dst))
    cache: Dict = {}

    def seg(u, v, flagged: bool):
        key = (u, v, flagged)
        if key not in cache:
            start = ("seg-start",)
            first = [Transition(start, t1.letter, t1.vec, dst + (1 if dst[1] in F2 else 0,))
                     for t1, dst in by_src.get(u, ())]
            goals = [v + (1,)] if flagged else [v + (0,), v + (1,)]
            run = find_path(first + inner, p1.dim, start, goals, in_set(p1.constraint), nonempty=True)
            cache[key] = None if run is None else _relabel(run, u + (0,))
        return cache[key]

    nodes = [q for q in pairs if q[0] in F1]
    init = pairs[0]

    def succ(u):
        return [v for v in nodes if seg(u, v, False) is not None]

    order, seen = [init], {init}
    i = 0
    while i < len(order):
        for v in succ(order[i]):
            if v not in seen:
                seen.add(v)
                order.append(v)
        i += 1

    def node_path(src, goal):
        if src == goal:
            return [src]
        prev = {src: None}
        todo = deque([src])
        while todo:
            n = todo.popleft()
            for m in succ(n):
                if m not in prev:
                    prev[m] = n
                    if m == goal:
                        seq = [m]
                        while prev[seq[-1]] is not None:
                            seq.append(prev[seq[-1]])
                        return seq[::-1]
                    todo.append(m)
        return None

    def runs(seq):
        out = []
        for x, y in zip(seq, seq[1:]):
            out += seg(x, y, False)
        return out

    for u in order:
        if u not in nodes:
            continue
        for v in succ(u):
            if seg(u, v, True) is None:
                continue
            back = node_path(v, u)
            if back is None:
                continue
            stem = runs(node_path(init, u))
            cyc = seg(u, v, True) + runs(back)
            w = LassoWord(tuple(t.letter for t in stem), tuple(t.letter for t in cyc))
            return _nonempty(Witness("lasso", lasso=w))
    return Verdict(YES)


SEGMENT_CAP = 2  # the layered query grows steeply with K; pass max_segments for more


def default_segments(a1: OmegaPA, a2: OmegaPA) -> int:
    """Segment bound used when the caller gives none.

    Pumping suggests |Q1|·|Q2| plus the number of constraint components, but
    that is far beyond what the layered query can finish, so it is capped.
    """
    g = a2.constraint.gens
    comps = len(g.components) if g is not None else 1
    return min(len(a1.states) * len(a2.states) + comps + 2, SEGMENT_CAP)


def _good_sr_nodes(pa: FinitePA) -> set:
    """Reset nodes from which a strong reset continuation exists."""
    g = _ResetGraph(pa, True, pa.constraint)
    nodes = [q for q in pa.states if q in pa.accepting]
    ok = set()
    for n in nodes:
        if g.lasso_from(n) is not None:
            ok.add(n)
    return ok


def intersect_empty_sr_reach(a1: OmegaPA, a2: OmegaPA, max_segments: Optional[int] = None) -> Verdict:
    """Is SR(a1) ∩ R(a2) empty, looking at runs with at most K resets before the hit?

    The search runs over a layered product: the layer counts completed reset
    segments of a1, each layer owning its own copy of a1's counters, and a
    flag records whether a2's hit has happened (a2's counters stop there).
    """
    _require_det_sr(a1)
    K = default_segments(a1, a2) if max_segments is None else max_segments
    note = f"exact up to {K} reset segments before the hit"
    p1, p2 = a1.pa, a2.pa
    if set(p1.alphabet) != set(p2.alphabet):
        raise AutomatonError("alphabet mismatch")
    d1, d2 = p1.dim, p2.dim
    F1, F2 = p1.accepting, p2.accepting
    pairs, ptrans = _product_pairs(p1, p2)
    # continuation check on the product, with a1's constraint only
    prod_trans = tuple(Transition((t1.src, t2.src), t1.letter, t1.vec, dst) for t1, t2, dst in ptrans)
    prod = FinitePA(tuple(pairs), p1.alphabet, pairs[0], prod_trans,
                    frozenset(q for q in pairs if q[0] in F1), p1.constraint, d1)
    good = _good_sr_nodes(prod)
    if not good:
        return Verdict(YES, bound_note=note)
    dim = d1 * K + d2
    layered = []
    for t1, t2, dst in ptrans:
        src = (t1.src, t2.src)
        for layer in range(K):
            nl = layer + 1 if dst[0] in F1 else layer
            for h in (0, 1):
                vec = [0] * dim
                vec[d1 * layer:d1 * (layer + 1)] = t1.vec
                if h == 0:
                    vec[d1 * K:] = t2.vec
                hs = (0, 1) if (h == 0 and dst[1] in F2) else (h,)
                for nh in hs:
                    layered.append(Transition((src, layer, h), t1.letter, tuple(vec), (dst, nl, nh)))
    targets = [(n, l, 1) for l in range(1, K + 1) for n in pairs if n in good]

    def extra(terms, sel):
        parts = [sl.formula_on(p2.constraint, terms[d1 * K:])]
        for l in range(K):
            done = pb.const(0)
            for (n, lt, _h), s in sel.items():
                if lt <= l:
                    done = done + s
            block = terms[d1 * l:d1 * (l + 1)]
            parts.append(pb.disj(pb.ge(done, 1), sl.formula_on(p1.constraint, block)))
        return pb.conj(*parts)

    run = find_path(layered, dim, (pairs[0], 0, 0), targets, extra=extra)
    if run is None:
        return Verdict(YES, bound_note=note)
    end = run[-1].dst[0]
    g = _ResetGraph(prod, True, p1.constraint)
    stem2, cyc = g.lasso_from(end)
    letters = tuple(t.letter for t in run) + _word(stem2)
    return _nonempty(Witness("lasso", lasso=LassoWord(letters, _word(cyc))), note)


def include_det_sr(a1: OmegaPA, a2: OmegaPA, max_segments: Optional[int] = None) -> Verdict:
    """SR(a1) ⊆ SR(a2)?  The violation branch is bounded by ``max_segments``."""
    from .transforms import complement_det_buchi, underlying_buchi, violation_automaton, violation_sources

    _require_det_sr(a1)
    _require_det_sr(a2)
    v = intersect_empty_sr_buchi(a1, complement_det_buchi(underlying_buchi(a2)))
    if v.answer == NO:
        return v
    K = None
    for p in violation_sources(a2):
        for q in a2.states:
            if q not in a2.accepting:
                continue
            aut = violation_automaton(a2, p, q)
            if empty_omega(aut, want_witness=False).answer == YES:
                continue  # exact, and much cheaper than the layered search
            v = intersect_empty_sr_reach(a1, aut, max_segments)
            K = v.bound_note
            if v.answer == NO:
                return v
    return Verdict(YES, bound_note=K)


# ---------------------------------------------------------------- bounded searches


def intersect_empty_buchi_pa_bounded(a1: OmegaPA, a2: OmegaPA, max_stem: int = 4, max_period: int = 4) -> Verdict:
    """Semi-decision: finds a common lasso or answers unknown."""
    note = f"lasso search up to |u| ≤ {max_stem}, |v| ≤ {max_period}"
    for w in lasso_search(a1.alphabet, max_stem, max_period):
        if member(a1, w) and member(a2, w):
            return _nonempty(Witness("lasso", lasso=w), note)
    return Verdict(UNKNOWN, bound_note=note)


def universal_refute_bounded(a: OmegaPA, max_stem: int = 4, max_period: int = 4) -> Verdict:
    """Searches for a rejected lasso; never answers yes."""
    note = f"lasso search up to |u| ≤ {max_stem}, |v| ≤ {max_period}"
    for w in lasso_search(a.alphabet, max_stem, max_period):
        if not member(a, w):
            return _nonempty(Witness("lasso", lasso=w), note)
    return Verdict(UNKNOWN, bound_note=note)


# ---------------------------------------------------------------- model checking


def is_kripke(a: OmegaPA) -> bool:
    return a.dim == 0 and set(a.accepting) == set(a.states) and a.condition in ("buchi", "safety")


def mc_existential(system: OmegaPA, spec: OmegaPA, max_stem: int = 4, max_period: int = 4) -> Verdict:
    """Does some behaviour of ``system`` satisfy ``spec``?  YES carries it."""
    from .automata import product

    def found(v: Verdict) -> Verdict:
        if v.answer == NO:
            return Verdict(YES, _strip_run(v).witness, v.bound_note)
        if v.answer == YES:
            return Verdict(NO, None, v.bound_note)
        return v

    if is_kripke(system) and spec.condition not in ("safety", "cobuchi"):
        return found(empty_omega(product(system, spec, "right", spec.condition)))
    if system.condition == spec.condition == "limit" and is_deterministic(system) and is_deterministic(spec):
        return found(intersect_empty_limit(system, spec))
    if spec.condition == "strongreset" and is_deterministic(spec) and system.dim == 0 and system.condition == "buchi":
        return found(intersect_empty_sr_buchi(spec, system))
    v = intersect_empty_buchi_pa_bounded(system, spec, max_stem, max_period)
    return found(v)


def mc_universal(system: OmegaPA, spec: OmegaPA, max_segments: Optional[int] = None,
                 max_stem: int = 4, max_period: int = 4) -> Verdict:
    """Do all behaviours of ``system`` satisfy ``spec``?  NO carries a counterexample."""
    from .automata import product
    from .transforms import complement_det_buchi, limit_complement, underlying_buchi, violation_automaton, violation_sources

    kripke = is_kripke(system)
    if spec.condition == "limit" and is_deterministic(spec):
        if kripke:
            return _strip_run(empty_omega(product(system, limit_complement(spec), "right", "limit")))
        if system.condition == "limit" and is_deterministic(system):
            return include_det_limit(system, spec)
    if spec.condition == "strongreset" and is_deterministic(spec) and is_complete(spec):
        if kripke:
            b_bar = complement_det_buchi(underlying_buchi(spec))
            v = empty_omega(product(system, b_bar, "right", "buchi"))
            if v.answer == NO:
                return _strip_run(v)
            for p in violation_sources(spec):
                for q in spec.states:
                    if q in spec.accepting:
                        v = empty_omega(product(system, violation_automaton(spec, p, q), "right", "reachability"))
                        if v.answer == NO:
                            return _strip_run(v)
            return Verdict(YES)
        if system.condition == "strongreset" and is_deterministic(system):
            return include_det_sr(system, spec, max_segments)
    # undecidable or unsupported cells: refute by search only
    note = f"bounded refutation only; lasso search up to |u| ≤ {max_stem}, |v| ≤ {max_period}"
    for w in lasso_search(system.alphabet, max_stem, max_period):
        if member(system, w) and not member(spec, w):
            return Verdict(NO, Witness("lasso", lasso=w), note)
    return Verdict(UNKNOWN, bound_note=note)
