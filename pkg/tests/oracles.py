"""Brute-force reference implementations used only by the tests.

Nothing here calls into the lasso engine or the decision procedures; the
membership oracle simulates the run for a long window and argues from the
recorded, eventually periodic data.
"""

from __future__ import annotations

import itertools
from typing import List, Optional, Sequence

from parikh import semilinear as sl
from parikh.automata import LassoWord, OmegaPA


def simulate(a: OmegaPA, w: LassoWord, steps: int):
    """States p_0..p_n, images ρ_0..ρ_n and labels v_1..v_n, or None if blocked."""
    q = a.initial
    states = [q]
    images = [(0,) * a.dim]
    labels = []
    for i in range(steps):
        ts = a.pa.delta.get((q, w.letter(i)), [])
        if not ts:
            return None
        t = ts[0]
        q = t.dst
        states.append(q)
        labels.append(t.vec)
        images.append(tuple(x + y for x, y in zip(images[-1], t.vec)))
    return states, images, labels


FAR = 120  # traversals skipped before judging "eventually" behaviour
WIDTH = 12  # traversals inspected there; a multiple of every modulus in use


def oracle_accepts(a: OmegaPA, w: LassoWord) -> bool:
    """Reference membership by simulation plus arithmetic extrapolation.

    The run is simulated for |u| + |v|·(2|Q|+16) steps, the state cycle is
    read off the block boundaries, and positions beyond the window are
    extrapolated as image(start + m·P + r) = image(start + r) + m·δ.  Tail
    properties are judged FAR traversals out, where every constraint of the
    test corpus has become periodic with a period dividing WIDTH.
    """
    u, v = len(w.stem), len(w.period)
    steps = u + v * (2 * len(a.states) + 16)
    sim = simulate(a, w, steps)
    if sim is None:
        return False
    states, images, labels = sim
    first_seen = {}
    start = period = None
    for b in range(u, steps + 1, v):
        if states[b] in first_seen:
            start, period = first_seen[states[b]], b - first_seen[states[b]]
            break
        first_seen[states[b]] = b
    assert start is not None
    delta = tuple(x - y for x, y in zip(images[start + period], images[start]))

    def state(i):
        return states[i] if i <= start else states[start + (i - start) % period]

    def image(i):
        if i <= start:
            return images[i]
        m, r = divmod(i - start, period)
        return tuple(x + m * d for x, d in zip(images[start + r], delta))

    F, C = a.accepting, a.constraint

    def acc(i):
        return state(i) in F

    def hit(i):
        return acc(i) and sl.member(image(i), C)

    horizon = start + (FAR + WIDTH) * period
    far = range(start + FAR * period + 1, horizon + 1)
    cycle_acc = any(acc(i) for i in range(start + 1, start + period + 1))
    cond = a.condition
    if cond == "reachability":
        return any(hit(i) for i in range(1, horizon + 1))
    if cond == "safety":
        return all(hit(i) for i in range(horizon + 1))
    if cond == "buchi":
        return any(hit(i) for i in far)
    if cond == "cobuchi":
        return all(hit(i) for i in far)
    if cond == "reachreg":
        return cycle_acc and any(hit(i) for i in range(1, horizon + 1))
    if cond == "limit":
        if not cycle_acc:
            return False
        moving = [any(labels[i][j] for i in range(start, start + period)) for j in range(a.dim)]
        lim = tuple(sl.INF if moving[j] else images[start][j] for j in range(a.dim))
        return sl.member(lim, C)

    def seg_ok(k0, k1):
        return sl.member(tuple(x - y for x, y in zip(image(k1), image(k0))), C)

    if cond == "strongreset":
        if not cycle_acc:
            return False
        # gaps repeat after the stem, so two traversals cover every segment
        end = start + 2 * period
        ks = [0] + [i for i in range(1, end + 1) if acc(i)]
        return all(seg_ok(k0, k1) for k0, k1 in zip(ks, ks[1:]))
    if cond == "weakreset":
        end = start + 30 * period
        resets = [k for k in range(1, end + 1) if acc(k)]
        reach = {0}
        for k in resets:
            if any(seg_ok(j, k) for j in reach):
                reach.add(k)
        # a reachable reset in the cycle region that chains to a later copy of
        # itself repeats forever, since the segments repeat
        for k1 in sorted(reach):
            if k1 <= start or k1 > start + 20 * period:
                continue
            fwd = {k1}
            for k in resets:
                if k > k1 and any(seg_ok(j, k) for j in fwd):
                    fwd.add(k)
            if any(k > k1 and (k - k1) % period == 0 for k in fwd):
                return True
        return False
    raise ValueError(cond)


def lassos(alphabet: Sequence[str], max_stem: int, max_period: int):
    """All lassos in shortlex order of (|u|+|v|, u, v)."""
    for total in range(1, max_stem + max_period + 1):
        for pl in range(1, min(total, max_period) + 1):
            sl_ = total - pl
            if sl_ > max_stem:
                continue
            for u in itertools.product(alphabet, repeat=sl_):
                for v in itertools.product(alphabet, repeat=pl):
                    yield LassoWord(u, v)


def random_lasso(rng, alphabet, max_stem=6, max_period=6) -> LassoWord:
    u = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_stem)))
    v = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_period)))
    return LassoWord(u, v)


def subset_sums_split(m: Sequence[int]) -> bool:
    """Does the multiset split into two parts of equal sum?"""
    total = sum(m)
    if total % 2:
        return False
    for r in range(len(m) + 1):
        for idx in itertools.combinations(range(len(m)), r):
            if 2 * sum(m[i] for i in idx) == total:
                return True
    return False


def finite_words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def clamped_bfs(vass, src, dst, lo=-8, hi=8):
    """Reachability in a ZVassNZ with counters confined to [lo, hi].

    Returns (reachable, clamp_hit)."""
    from collections import deque

    start = (src[0], tuple(src[1]))
    goal = (dst[0], tuple(dst[1]))
    seen = {start}
    todo = deque([start])
    clamp = False
    while todo:
        q, c = todo.popleft()
        if (q, c) == goal:
            return True, clamp
        for (p, vec, level, r) in vass.transitions:
            if p != q or any(c[i] != 0 for i in range(level)):
                continue
            nc = tuple(x + y for x, y in zip(c, vec))
            if any(x < lo or x > hi for x in nc):
                clamp = True
                continue
            if (r, nc) not in seen:
                seen.add((r, nc))
                todo.append((r, nc))
    return False, clamp


def random_constraint(rng, dim, allow_inf=False):
    from parikh import presburger as pb

    def vecr(hi):
        vals = [rng.randint(0, hi) for _ in range(dim)]
        if allow_inf and rng.random() < 0.3:
            vals[rng.randrange(dim)] = sl.INF
        return tuple(vals)

    kind = rng.randrange(3)
    if kind == 0 or dim == 0:
        comps = []
        for _ in range(rng.randint(1, 2)):
            comps.append(sl.LinearSet(vecr(2), tuple(vecr(2) for _ in range(rng.randint(0, 2)))))
        return sl.from_generators(sl.SemiLinearSet(dim, tuple(comps)))
    if kind == 1:
        # a single linear relation between the first two value coordinates
        j = rng.randrange(dim)
        k = rng.randrange(dim)
        t = pb.var(sl.val_var(j)) * rng.randint(1, 2) - pb.var(sl.val_var(k)) * rng.randint(0, 2)
        body = pb.eq(t, rng.randint(-1, 1)) if rng.random() < 0.5 else pb.le(t, rng.randint(-1, 2))
        return sl.from_formula(dim, pb.conj(sl.domain_formula(dim, allow_inf), body))
    m = rng.randint(2, 3)
    return sl.from_formula(dim, pb.conj(sl.domain_formula(dim, allow_inf),
                                        pb.divides(m, pb.var(sl.val_var(0)) + rng.randint(0, 2))))


def random_det_pa(rng, n_states=3, alphabet="ab", dim=2, condition="buchi", allow_inf=False, complete=True):
    from parikh.automata import make_omega

    states = [f"p{i}" for i in range(n_states)]
    ts = []
    for p in states:
        for l in alphabet:
            if not complete and rng.random() < 0.15:
                continue
            vec_ = tuple(rng.choice((0, 0, 1, 2)) for _ in range(dim))
            ts.append((p, l, vec_, rng.choice(states)))
    acc = {q for q in states if rng.random() < 0.5}
    c = random_constraint(rng, dim, allow_inf)
    return make_omega(states, alphabet, states[0], ts, acc, c, condition, dim=dim)


# ---- Presburger sentence family with a provable enumeration bound
#
# x and y are relativized to x <= bx, y <= by with bx, by <= 6.  z is
# unrestricted but only meets atoms z ~ w + c with w in {x, y, 0} and
# c <= 5, so every threshold z is compared against is at most 11: all z >= 12
# satisfy the same atoms as z = 12.  Enumerating 0..ENUM_BOUND is therefore
# exact for every sentence of the family.

ENUM_BOUND = 12


def _atom_xy(rng):
    """(formula, python predicate) over bounded variables x, y."""
    from parikh import presburger as pb

    x, y = pb.var("x"), pb.var("y")
    kind = rng.randrange(4)
    c = rng.randint(0, 6)
    if kind == 0:
        return pb.le(x + y, c), lambda e: e["x"] + e["y"] <= c
    if kind == 1:
        return pb.le(x, y + c), lambda e: e["x"] <= e["y"] + c
    if kind == 2:
        return pb.eq(x, y + c), lambda e: e["x"] == e["y"] + c
    return pb.divides(2, x + y), lambda e: (e["x"] + e["y"]) % 2 == 0


def _atom_z(rng):
    from parikh import presburger as pb

    z = pb.var("z")
    w = rng.choice(("x", "y", None))
    c = rng.randint(0, 5)
    t = (pb.var(w) if w else pb.const(0)) + c

    def rhs(e):
        return (e[w] if w else 0) + c

    kind = rng.randrange(3)
    if kind == 0:
        return pb.le(z, t), lambda e: e["z"] <= rhs(e)
    if kind == 1:
        return pb.eq(z, t), lambda e: e["z"] == rhs(e)
    return pb.ge(z, t), lambda e: e["z"] >= rhs(e)


def _body(rng, depth=2):
    from parikh import presburger as pb

    if depth == 0 or rng.random() < 0.3:
        return (_atom_z if rng.random() < 0.5 else _atom_xy)(rng)
    (f1, p1), (f2, p2) = _body(rng, depth - 1), _body(rng, depth - 1)
    op = rng.randrange(3)
    if op == 0:
        return pb.conj(f1, f2), lambda e: p1(e) and p2(e)
    if op == 1:
        return pb.disj(f1, f2), lambda e: p1(e) or p2(e)
    return pb.conj(f1, pb.neg(f2)), lambda e: p1(e) and not p2(e)


def random_sentence(rng):
    """A sentence of the family plus its enumeration ground truth."""
    from parikh import presburger as pb

    order = ["x", "y", "z"]
    rng.shuffle(order)
    quants = [rng.choice("EA") for _ in order]
    bounds = {"x": rng.randint(0, 6), "y": rng.randint(0, 6)}
    body, pred = _body(rng)
    f = body
    for v, q in reversed(list(zip(order, quants))):
        if v in bounds:
            guard = pb.le(pb.var(v), bounds[v])
            f = pb.exists([v], pb.conj(guard, f)) if q == "E" else pb.forall([v], pb.implies(guard, f))
        else:
            f = pb.exists([v], f) if q == "E" else pb.forall([v], f)

    def truth(i, env):
        if i == len(order):
            return pred(env)
        v, q = order[i], quants[i]
        hi = bounds.get(v, ENUM_BOUND)
        vals = (truth(i + 1, {**env, v: n}) for n in range(hi + 1))
        return any(vals) if q == "E" else all(vals)

    return f, truth(0, {})


def muller_oracle(m, w: LassoWord) -> bool:
    """Muller acceptance: the set of states on the eventual cycle is in the table."""
    delta = {(p, a): q for p, a, q in m.transitions}
    q = m.initial
    for x in w.stem:
        q = delta.get((q, x))
        if q is None:
            return False
    seen = {}
    trail = []
    while q not in seen:
        seen[q] = len(trail)
        trail.append(q)
        for x in w.period:
            q = delta.get((q, x))
            if q is None:
                return False
    # the block-boundary state q recurs; collect every state of the loop
    states = set()
    r = q
    while True:
        for x in w.period:
            r = delta[(r, x)]
            states.add(r)
        if r == q:
            break
    return frozenset(states) in set(m.table)


# ---- integer expressions


def all_intexprs(max_ops: int, max_const: int):
    """Every expression with at most max_ops operators, constants 0..max_const."""
    from parikh.reductions import Const, Plus, Union_

    memo = {0: [Const(n) for n in range(max_const + 1)]}
    for k in range(1, max_ops + 1):
        out = []
        for left_ops in range(k):
            for l in memo[left_ops]:
                for r in memo[k - 1 - left_ops]:
                    out.append(Plus(l, r))
                    out.append(Union_(l, r))
        memo[k] = out
    for k in range(max_ops + 1):
        yield from memo[k]


def generator_trace(e, hi: int) -> frozenset:
    """{n <= hi : (n, 1, ..., 1) lies in the linear set built for e}."""
    from parikh import semilinear as sl
    from parikh.reductions import intexpr_dim, intexpr_to_linearset

    ls = intexpr_to_linearset(e)
    d = intexpr_dim(e)
    c = sl.from_generators(sl.SemiLinearSet(1 + d, (ls,)))
    return frozenset(n for n in range(hi + 1) if sl.member((n,) + (1,) * d, c))


def pa_image(pa) -> frozenset:
    """Images of all accepting runs of an acyclic dimension-1 PA."""
    out = set()
    todo = [(pa.initial, 0)]
    seen = set()
    while todo:
        q, n = todo.pop()
        if (q, n) in seen:
            continue
        seen.add((q, n))
        if q in pa.accepting:
            out.add(n)
        for t in pa.out.get(q, ()):
            todo.append((t.dst, n + t.vec[0]))
    return frozenset(out)


def random_zvass_instance(rng):
    """(system, src, dst) with |Q| <= 4, d <= 2 and labels in [-2, 2]."""
    from parikh.zvass import ZConfiguration, zvass

    nq, d = rng.randint(1, 4), rng.randint(1, 2)
    Q = [f"q{i}" for i in range(nq)]
    ts = []
    for _ in range(rng.randint(1, 6)):
        level = rng.choice([0, 0, 1] + ([2] if d == 2 else []))
        ts.append((rng.choice(Q), tuple(rng.randint(-2, 2) for _ in range(d)), level, rng.choice(Q)))
    src = ZConfiguration(Q[0], tuple(rng.randint(-2, 2) for _ in range(d)))
    dst = ZConfiguration(rng.choice(Q), tuple(rng.randint(-3, 3) for _ in range(d)))
    return zvass(Q, d, ts), src, dst


def common_lasso_search(a1: OmegaPA, a2: OmegaPA, max_stem: int, max_period: int, dead=("sink",)):
    """First lasso (shortlex over |u|+|v|) accepted by both strong reset PA, or None.

    Both automata must be deterministic and complete.  A prefix is cut as soon
    as either run enters a dead state or closes a reset segment whose image
    leaves the constraint; no extension of such a prefix can be accepted, so
    the cut loses nothing.  Surviving candidates are judged by lasso.accepts.
    """
    from parikh.lasso import accepts

    autos = (a1, a2)
    delta = [{(t.src, t.letter): t for t in a.pa.transitions} for a in autos]
    letters = a1.alphabet
    dead = set(dead)
    seen_member = [{}, {}]

    def ok(i, img):
        cache = seen_member[i]
        if img not in cache:
            cache[img] = sl.member(img, autos[i].constraint)
        return cache[img]

    def advance(cfg, x):
        out = []
        for i, (q, img) in enumerate(cfg):
            t = delta[i][(q, x)]
            if t.dst in dead:
                return None
            img = tuple(p + r for p, r in zip(img, t.vec))
            if t.dst in autos[i].accepting:
                if not ok(i, img):
                    return None
                img = (0,) * len(img)
            out.append((t.dst, img))
        return tuple(out)

    def extend(cfg, n):
        """All (word, cfg) pairs reachable by surviving words of length exactly n."""
        layer = [((), cfg)]
        for _ in range(n):
            nxt = []
            for w, c in layer:
                for x in letters:
                    c2 = advance(c, x)
                    if c2 is not None:
                        nxt.append((w + (x,), c2))
            layer = nxt
        return layer

    start = tuple((a.initial, (0,) * a.dim) for a in autos)
    stems = {0: [((), start)]}
    for n in range(1, max_stem + 1):
        stems[n] = [(w + (x,), c2) for w, c in stems[n - 1] for x in letters
                    for c2 in [advance(c, x)] if c2 is not None]
    for total in range(1, max_stem + max_period + 1):
        for pl in range(1, min(total, max_period) + 1):
            su = total - pl
            if su > max_stem:
                continue
            for u, cfg in stems[su]:
                for v, _ in extend(cfg, pl):
                    w = LassoWord(u, v)
                    if accepts(a1, w) and accepts(a2, w):
                        return w
    return None
