"""Vectors over N ∪ {∞} and semi-linear sets.

A :class:`ConstraintSet` is stored either by generators (a union of linear
sets ``C(b, P)``) or as a Presburger formula over two variables per
component: a flag ``inf_j`` (1 iff the entry is ∞) and a value ``val_j``
(the finite entry, forced to 0 when the flag is set).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import presburger as pb

INF = float("inf")

ExtValue = Union[int, float]  # a natural or INF
ExtVector = Tuple[ExtValue, ...]


class DimensionError(ValueError):
    pass


# ---------------------------------------------------------------- arithmetic


def is_inf(a: ExtValue) -> bool:
    return a == INF


def check_value(a: ExtValue) -> ExtValue:
    if a == INF:
        return INF
    if not isinstance(a, int) or isinstance(a, bool) or a < 0:
        raise ValueError(f"not an extended natural: {a!r}")
    return a


def ext_add(a: ExtValue, b: ExtValue) -> ExtValue:
    if a == INF or b == INF:
        return INF
    return a + b


def ext_mul(k: ExtValue, a: ExtValue) -> ExtValue:
    # 0 annihilates ∞ from either side
    if k == 0 or a == 0:
        return 0
    if k == INF or a == INF:
        return INF
    return k * a


def ext_sub1(a: ExtValue) -> ExtValue:
    """``a - 1`` with ``∞ - 1 = ∞``; a must be positive."""
    return INF if a == INF else a - 1


def vec(*entries: ExtValue) -> ExtVector:
    return tuple(check_value(e) for e in entries)


def vadd(u: Sequence[ExtValue], v: Sequence[ExtValue]) -> ExtVector:
    if len(u) != len(v):
        raise DimensionError(f"dimension mismatch {len(u)} vs {len(v)}")
    return tuple(ext_add(a, b) for a, b in zip(u, v))


def vscale(k: ExtValue, v: Sequence[ExtValue]) -> ExtVector:
    return tuple(ext_mul(k, a) for a in v)


def zeros(d: int) -> ExtVector:
    return (0,) * d


def ones(d: int) -> ExtVector:
    return (1,) * d


def make_unit(d: int, i: int) -> ExtVector:
    """e_i (1-based index)."""
    if not 1 <= i <= d:
        raise IndexError(f"unit index {i} outside 1..{d}")
    return tuple(1 if j == i - 1 else 0 for j in range(d))


def make_inf_unit(d: int, i: int) -> ExtVector:
    """i_i: ∞ at position i (1-based), 0 elsewhere."""
    if not 1 <= i <= d:
        raise IndexError(f"unit index {i} outside 1..{d}")
    return tuple(INF if j == i - 1 else 0 for j in range(d))


def fmt_value(a: ExtValue) -> str:
    return "inf" if a == INF else str(a)


def fmt_vector(v: Sequence[ExtValue]) -> str:
    return ",".join(fmt_value(a) for a in v)


def parse_vector(text: str) -> ExtVector:
    text = text.strip()
    if text in ("", "()"):
        return ()
    text = text.strip("()")
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("inf", "∞"):
            out.append(INF)
        else:
            out.append(check_value(int(tok)))
    return tuple(out)


# ---------------------------------------------------------------- linear sets


@dataclass(frozen=True)
class LinearSet:
    """C(b, P) = { b + z1 p1 + ... + zl pl }."""

    base: ExtVector
    periods: Tuple[ExtVector, ...] = ()

    def __post_init__(self):
        d = len(self.base)
        uniq: List[ExtVector] = []
        for p in self.periods:
            if len(p) != d:
                raise DimensionError("period dimension differs from base")
            p = tuple(p)
            if p not in uniq:
                uniq.append(p)
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "periods", tuple(uniq))

    @property
    def dim(self) -> int:
        return len(self.base)

    def __contains__(self, v) -> bool:
        return _linear_member(self, tuple(v))


@dataclass(frozen=True)
class SemiLinearSet:
    dim: int
    components: Tuple[LinearSet, ...] = ()

    def __post_init__(self):
        comps = tuple(self.components)
        for c in comps:
            if c.dim != self.dim:
                raise DimensionError("component dimension mismatch")
        object.__setattr__(self, "components", comps)

    def __contains__(self, v) -> bool:
        v = tuple(v)
        if len(v) != self.dim:
            raise DimensionError("dimension mismatch")
        return any(_linear_member(c, v) for c in self.components)

    def has_inf(self) -> bool:
        return any(INF in c.base or any(INF in p for p in c.periods) for c in self.components)


def linear(base: Sequence[ExtValue], periods: Iterable[Sequence[ExtValue]] = ()) -> SemiLinearSet:
    ls = LinearSet(tuple(base), tuple(tuple(p) for p in periods))
    return SemiLinearSet(ls.dim, (ls,))


@lru_cache(maxsize=200_000)
def _linear_member(ls: LinearSet, v: ExtVector) -> bool:
    d = ls.dim
    if len(v) != d:
        raise DimensionError("dimension mismatch")
    b = ls.base
    inf_periods = [p for p in ls.periods if INF in p]
    fin_periods = [p for p in ls.periods if INF not in p]
    target_inf = {j for j in range(d) if v[j] == INF}
    base_inf = {j for j in range(d) if b[j] == INF}
    if not base_inf <= target_inf:
        return False
    # which ∞-carrying periods get a coefficient >= 1
    for r in range(len(inf_periods) + 1):
        for used in itertools.combinations(inf_periods, r):
            infs = set(base_inf)
            for p in used:
                infs |= {j for j in range(d) if p[j] == INF}
            if infs != target_inf:
                continue
            keep = [j for j in range(d) if j not in infs]
            target = []
            ok = True
            for j in keep:
                t = v[j] - b[j] - sum(p[j] for p in used)
                if t < 0:
                    ok = False
                    break
                target.append(t)
            if not ok:
                continue
            gens = [tuple(p[j] for j in keep) for p in fin_periods + list(used)]
            if _nat_combination(tuple(target), tuple(gens)):
                return True
    return False


@lru_cache(maxsize=200_000)
def _nat_combination(target: Tuple[int, ...], gens: Tuple[Tuple[int, ...], ...]) -> bool:
    """Is target a N-combination of gens?  Depth-first with per-coordinate bounds."""
    gens = tuple(sorted({g for g in gens if any(g)}, reverse=True))
    if not any(target):
        return True
    if not gens:
        return False
    # coordinates that no generator can touch must already be 0
    for j, t in enumerate(target):
        if t and all(g[j] == 0 for g in gens):
            return False
    g, rest = gens[0], gens[1:]
    bound = min(t // gj for t, gj in zip(target, g) if gj)
    for z in range(bound, -1, -1):
        nt = tuple(t - z * gj for t, gj in zip(target, g))
        if _nat_combination(nt, rest):
            return True
    return False


# ---------------------------------------------------------------- constraint sets


def inf_var(j: int) -> str:
    return f"inf_{j + 1}"


def val_var(j: int) -> str:
    return f"val_{j + 1}"


@dataclass(frozen=True)
class ConstraintSet:
    """A set of ExtVectors of dimension ``dim`` in one of two forms."""

    dim: int
    gens: Optional[SemiLinearSet] = None
    formula: Optional[pb.Formula] = None
    # Boolean structure over generator sets, kept only to answer membership
    # without the decision engine; the formula stays authoritative.
    shape: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if (self.gens is None) == (self.formula is None):
            raise ValueError("exactly one representation must be given")
        if self.gens is not None and self.gens.dim != self.dim:
            raise DimensionError("generator dimension mismatch")
        if self.formula is not None:
            allowed = {inf_var(j) for j in range(self.dim)} | {val_var(j) for j in range(self.dim)}
            extra = pb.free_vars(self.formula) - allowed
            if extra:
                raise ValueError(f"formula mentions non-designated variables {sorted(extra)}; "
                                 f"coordinates are val_1..val_{self.dim} and inf_1..inf_{self.dim}")

    @property
    def is_generators(self) -> bool:
        return self.gens is not None

    def __contains__(self, v) -> bool:
        return member(tuple(v), self)

    def has_inf(self) -> bool:
        if self.gens is not None:
            return self.gens.has_inf()
        return True


def from_generators(s: SemiLinearSet) -> ConstraintSet:
    return ConstraintSet(s.dim, gens=s)


def from_formula(d: int, f: pb.Formula) -> ConstraintSet:
    return ConstraintSet(d, formula=f)


def linear_set(base, periods=()) -> ConstraintSet:
    return from_generators(linear(base, periods))


def empty_set(d: int) -> ConstraintSet:
    return ConstraintSet(d, gens=SemiLinearSet(d, ()))


def universal_nat(d: int) -> ConstraintSet:
    """N^d."""
    return linear_set(zeros(d), [make_unit(d, i) for i in range(1, d + 1)])


def universal_ext(d: int) -> ConstraintSet:
    """(N ∪ {∞})^d."""
    return linear_set(
        zeros(d),
        [make_unit(d, i) for i in range(1, d + 1)] + [make_inf_unit(d, i) for i in range(1, d + 1)],
    )


def encode(v: Sequence[ExtValue]) -> Dict[str, int]:
    a: Dict[str, int] = {}
    for j, x in enumerate(v):
        if x == INF:
            a[inf_var(j)] = 1
            a[val_var(j)] = 0
        else:
            a[inf_var(j)] = 0
            a[val_var(j)] = int(x)
    return a


def member(v: Sequence[ExtValue], s: ConstraintSet) -> bool:
    v = tuple(v)
    if len(v) != s.dim:
        raise DimensionError(f"vector of dimension {len(v)} vs set of dimension {s.dim}")
    if s.gens is not None:
        return v in s.gens
    if s.shape is not None:
        return _shape_member(s.shape, v)
    return _formula_member(s.formula, v)


def _shape_of(s: ConstraintSet) -> tuple:
    if s.gens is not None:
        return ("gens", s.gens)
    if s.shape is not None:
        return s.shape
    return ("formula", s.formula)


def _shape_member(shape: tuple, v: ExtVector) -> bool:
    tag = shape[0]
    if tag == "gens":
        return v in shape[1]
    if tag == "formula":
        return _formula_member(shape[1], v)
    if tag == "not":
        return not _shape_member(shape[1], v)
    if tag == "and":
        return _shape_member(shape[1], v) and _shape_member(shape[2], v)
    if tag == "or":
        return _shape_member(shape[1], v) or _shape_member(shape[2], v)
    if tag == "concat":
        k = shape[3]
        return _shape_member(shape[1], v[:k]) and _shape_member(shape[2], v[k:])
    raise AssertionError(tag)


@lru_cache(maxsize=100_000)
def _formula_member(f: pb.Formula, v: ExtVector) -> bool:
    return pb.evaluate(f, encode(v))


def to_formula(s: Union[SemiLinearSet, ConstraintSet]) -> pb.Formula:
    """Formula over inf_j / val_j describing the set."""
    if isinstance(s, ConstraintSet):
        if s.formula is not None:
            return s.formula
        s = s.gens
    return pb.disj(*[_linear_formula(c) for c in s.components])


def _linear_formula(c: LinearSet) -> pb.Formula:
    d = c.dim
    zs = [pb.fresh("_z") for _ in c.periods]
    parts = []
    for j in range(d):
        fi, fv = pb.var(inf_var(j)), pb.var(val_var(j))
        if c.base[j] == INF:
            parts.append(pb.conj(pb.eq(fi, 1), pb.eq(fv, 0)))
            continue
        total = pb.const(int(c.base[j]))
        infs = []
        for z, p in zip(zs, c.periods):
            if p[j] == INF:
                infs.append(z)
            elif p[j]:
                total = total + pb.var(z) * int(p[j])
        finite = pb.conj(pb.eq(fi, 0), pb.eq(fv, total), *[pb.eq(z, 0) for z in infs])
        if infs:
            infinite = pb.conj(pb.eq(fi, 1), pb.eq(fv, 0), pb.ge(sum((pb.var(z) for z in infs), pb.const(0)), 1))
            parts.append(pb.disj(finite, infinite))
        else:
            parts.append(finite)
    return pb.exists(zs, pb.conj(*parts))


def domain_formula(d: int, extended: bool = True) -> pb.Formula:
    """Well-formed encodings: flags in {0,1}, value 0 under a set flag."""
    parts = []
    for j in range(d):
        fi, fv = pb.var(inf_var(j)), pb.var(val_var(j))
        if extended:
            parts.append(pb.le(fi, 1))
            parts.append(pb.disj(pb.eq(fi, 0), pb.eq(fv, 0)))
        else:
            parts.append(pb.eq(fi, 0))
    return pb.conj(*parts)


def formula_on(s: ConstraintSet, vals: Sequence, infs: Optional[Sequence] = None) -> pb.Formula:
    """Membership of the vector (terms ``vals``, flags ``infs``) as a formula.

    ``infs`` defaults to all-finite.  Entries may be ints or presburger Terms.
    """
    d = s.dim
    if len(vals) != d:
        raise DimensionError("dimension mismatch")
    if infs is None:
        infs = [0] * d
    if s.gens is not None and all(isinstance(x, int) for x in infs):
        return _gens_formula_on(s.gens, [pb.Term.lift(x) for x in vals], list(infs))
    sub = {}
    for j in range(d):
        sub[inf_var(j)] = pb.Term.lift(infs[j])
        sub[val_var(j)] = pb.Term.lift(vals[j]) if not infs[j] else pb.const(0)
    return pb.substitute(to_formula(s), sub)


def _gens_formula_on(g: SemiLinearSet, vals: List[pb.Term], infs: List[int]) -> pb.Formula:
    out = []
    for c in g.components:
        ok = True
        for j in range(g.dim):
            if c.base[j] == INF and not infs[j]:
                ok = False
        if not ok:
            continue
        usable = []
        forced = []
        for p in c.periods:
            if any(p[j] == INF and not infs[j] for j in range(g.dim)):
                continue  # would create an ∞ where a finite value is required
            usable.append(p)
        zs = [pb.fresh("_z") for _ in usable]
        parts = []
        for j in range(g.dim):
            if infs[j]:
                if c.base[j] == INF:
                    continue
                carriers = [z for z, p in zip(zs, usable) if p[j] == INF]
                if not carriers:
                    ok = False
                    break
                parts.append(pb.ge(sum((pb.var(z) for z in carriers), pb.const(0)), 1))
            else:
                total = pb.const(int(c.base[j]))
                for z, p in zip(zs, usable):
                    if p[j]:
                        total = total + pb.var(z) * int(p[j])
                parts.append(pb.eq(vals[j], total))
        if not ok:
            continue
        out.append(pb.exists(zs, pb.conj(*parts)))
    return pb.disj(*out)


# ---------------------------------------------------------------- Boolean algebra


def _check_dims(a: ConstraintSet, b: ConstraintSet) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch {a.dim} vs {b.dim}")


def union(a: ConstraintSet, b: ConstraintSet) -> ConstraintSet:
    _check_dims(a, b)
    if a.gens is not None and b.gens is not None:
        return from_generators(SemiLinearSet(a.dim, a.gens.components + b.gens.components))
    return ConstraintSet(a.dim, formula=pb.disj(to_formula(a), to_formula(b)),
                         shape=("or", _shape_of(a), _shape_of(b)))


def intersect(a: ConstraintSet, b: ConstraintSet) -> ConstraintSet:
    _check_dims(a, b)
    return ConstraintSet(a.dim, formula=pb.conj(to_formula(a), to_formula(b)),
                         shape=("and", _shape_of(a), _shape_of(b)))


def complement(s: ConstraintSet) -> ConstraintSet:
    """Pointwise negation of membership over every ExtVector."""
    sh = _shape_of(s)
    if sh[0] == "not":
        inner = sh[1]
        if inner[0] == "gens":
            return from_generators(inner[1])
        return ConstraintSet(s.dim, formula=pb.neg(to_formula(s)), shape=inner)
    return ConstraintSet(s.dim, formula=pb.neg(to_formula(s)), shape=("not", sh))


def complement_inf(s: ConstraintSet) -> ConstraintSet:
    """Complement within (N ∪ {∞})^d."""
    return complement(s)


def _shift_formula(f: pb.Formula, offset: int, d: int) -> pb.Formula:
    sub = {}
    for j in range(d):
        sub[inf_var(j)] = pb.var(inf_var(j + offset))
        sub[val_var(j)] = pb.var(val_var(j + offset))
    # rename via temporaries to avoid collisions between overlapping names
    tmp = {k: pb.var(f"_sh{k}") for k in sub}
    g = pb.substitute(f, tmp)
    return pb.substitute(g, {f"_sh{k}": v for k, v in sub.items()})


def concat(a: ConstraintSet, b: ConstraintSet) -> ConstraintSet:
    """{u·v | u ∈ a, v ∈ b}."""
    d = a.dim + b.dim
    if a.gens is not None and b.gens is not None:
        comps = []
        za, zb = zeros(a.dim), zeros(b.dim)
        for ca in a.gens.components:
            for cb in b.gens.components:
                periods = [p + zb for p in ca.periods] + [za + p for p in cb.periods]
                comps.append(LinearSet(ca.base + cb.base, tuple(periods)))
        return from_generators(SemiLinearSet(d, tuple(comps)))
    return ConstraintSet(d, formula=pb.conj(to_formula(a), _shift_formula(to_formula(b), a.dim, b.dim)),
                         shape=("concat", _shape_of(a), _shape_of(b), a.dim))


def singleton(v: Sequence[ExtValue]) -> ConstraintSet:
    return linear_set(tuple(v), ())


# ---------------------------------------------------------------- decisions


def is_empty(s: ConstraintSet, extended: bool = True) -> bool:
    if s.gens is not None:
        if extended:
            return not s.gens.components
        return not any(INF not in c.base for c in s.gens.components)
    vs = [inf_var(j) for j in range(s.dim)] + [val_var(j) for j in range(s.dim)]
    return not pb.decide(pb.exists(vs, pb.conj(domain_formula(s.dim, extended), to_formula(s))))


def is_universal(s: ConstraintSet, extended: bool = True) -> bool:
    return is_empty(complement(s), extended)


def includes(big: ConstraintSet, small: ConstraintSet, extended: bool = True) -> bool:
    """small ⊆ big."""
    _check_dims(big, small)
    return is_empty(intersect(small, complement(big)), extended)


def equivalent(a: ConstraintSet, b: ConstraintSet, extended: bool = True) -> bool:
    return includes(a, b, extended) and includes(b, a, extended)


# ---------------------------------------------------------------- the bijection f(∞)=0, f(i)=i+1


def _zero_on(v: Sequence[ExtValue], D) -> ExtVector:
    return tuple(0 if j in D else v[j] for j in range(len(v)))


def _subsets(seq):
    for r in range(len(seq) + 1):
        yield from itertools.combinations(seq, r)


def f_forward(s: SemiLinearSet) -> SemiLinearSet:
    """Image under f applied pointwise; the result has no ∞ entries."""
    d = s.dim
    comps: List[LinearSet] = []
    for c in s.components:
        dinf = frozenset(j for j in range(d) if c.base[j] == INF)
        rest = [j for j in range(d) if j not in dinf]
        for extra in _subsets(rest):
            D = dinf | frozenset(extra)
            for sub in _subsets(c.periods):
                if not _compatible(sub, D, dinf, d):
                    continue
                base = _zero_on(c.base, D)
                base = tuple(b + (0 if j in D else 1) for j, b in enumerate(base))
                for p in sub:
                    base = vadd(base, _zero_on(p, D))
                comps.append(LinearSet(base, tuple(_zero_on(p, D) for p in sub)))
    return SemiLinearSet(d, tuple(comps))


def _compatible(sub, D, dinf, d) -> bool:
    for i in D - dinf:
        if not any(p[i] == INF for p in sub):
            return False
    for i in range(d):
        if i not in D and any(p[i] == INF for p in sub):
            return False
    return True


def f_inverse(s: SemiLinearSet) -> SemiLinearSet:
    """Preimage under f; entries equal to 0 become ∞, others drop by one."""
    d = s.dim
    comps: List[LinearSet] = []
    for c in s.components:
        if INF in c.base or any(INF in p for p in c.periods):
            raise ValueError("f_inverse expects a set over N^d")
        d0 = [j for j in range(d) if c.base[j] == 0]
        for D in _subsets(d0):
            D = frozenset(D)
            for sub in _subsets(c.periods):
                if not _safe(sub, D, d0):
                    continue
                base = [INF if j in D else c.base[j] for j in range(d)]
                for p in sub:
                    base = list(vadd(base, p))
                base = tuple(ext_sub1(x) for x in base)
                comps.append(LinearSet(base, tuple(sub)))
    return SemiLinearSet(d, tuple(comps))


def _safe(sub, D, d0) -> bool:
    # Only coordinates where the base is 0 need a witness period: elsewhere
    # the entry is positive already and cannot map back to ∞.
    for i in range(len(sub[0]) if sub else 0):
        if i in D and any(p[i] != 0 for p in sub):
            return False
    for i in d0:
        if i not in D and not any(p[i] != 0 for p in sub):
            return False
    return True


def f_value(a: ExtValue) -> int:
    return 0 if a == INF else a + 1


def f_inverse_value(n: int) -> ExtValue:
    return INF if n == 0 else n - 1


# ---------------------------------------------------------------- synthesis


def synthesize_generators(f: pb.Formula, d: int, search_bound: int = 12) -> Optional[SemiLinearSet]:
    """Best-effort generator form of a formula over finite vectors.

    Returns None when no candidate survives the exact equivalence check.
    """
    cs = from_formula(d, f)
    grid = [v for v in itertools.product(range(search_bound + 1), repeat=d) if member(v, cs)]
    if not grid:
        cand = SemiLinearSet(d, ())
        return cand if _verify(cs, cand) else None
    pts = set(grid)

    def inside(v):
        return all(x <= search_bound for x in v)

    # periods: minimal nonzero directions that keep the sampled set closed
    small = [p for p in itertools.product(range(search_bound // 2 + 1), repeat=d) if any(p)]
    small.sort(key=lambda p: (sum(p), p))
    periods: List[Tuple[int, ...]] = []
    for p in small:
        if periods and _nat_combination(p, tuple(periods)):
            continue
        shifted = [tuple(a + b for a, b in zip(g, p)) for g in grid]
        if all(h in pts for h in shifted if inside(h)):
            periods.append(p)
    bases: List[Tuple[int, ...]] = []
    for g in sorted(grid, key=lambda v: (sum(v), v)):
        if any(_covered(g, b, periods) for b in bases):
            continue
        bases.append(g)
    cand = SemiLinearSet(d, tuple(LinearSet(b, tuple(periods)) for b in bases))
    return cand if _verify(cs, cand) else None


def _covered(v, b, periods) -> bool:
    diff = tuple(x - y for x, y in zip(v, b))
    if any(x < 0 for x in diff):
        return False
    return _nat_combination(diff, tuple(periods))


def _verify(cs: ConstraintSet, cand: SemiLinearSet) -> bool:
    try:
        return equivalent(cs, from_generators(cand), extended=False)
    except pb.ResourceLimit:
        return False


# ---------------------------------------------------------------- text


def render_constraint(s: ConstraintSet) -> List[str]:
    if s.gens is not None:
        lines = ["semilinear"]
        for c in s.gens.components:
            lines.append(f"linear base={fmt_vector(c.base)} periods=" + ";".join(fmt_vector(p) for p in c.periods))
        return lines
    return ["formula " + pb.to_text(s.formula)]


def parse_constraint(lines: Sequence[str], d: int) -> ConstraintSet:
    """Parse a constraint block (``semilinear`` + ``linear`` lines, or ``formula``)."""
    lines = [l.strip() for l in lines if l.strip()]
    if not lines:
        raise ValueError("missing constraint block")
    head = lines[0]
    if head.startswith("formula"):
        text = " ".join([head[len("formula"):]] + lines[1:])
        return from_formula(d, pb.parse_formula(text))
    if head != "semilinear" and not head.startswith("linear"):
        raise ValueError(f"unknown constraint block start {head!r}")
    body = lines[1:] if head == "semilinear" else lines
    comps = []
    for line in body:
        comps.append(_parse_linear(line, d))
    return from_generators(SemiLinearSet(d, tuple(comps)))


def _parse_linear(line: str, d: int) -> LinearSet:
    if not line.startswith("linear"):
        raise ValueError(f"expected 'linear', got {line!r}")
    fields = {}
    for part in line[len("linear"):].split():
        if "=" not in part:
            raise ValueError(f"bad field {part!r}")
        k, v = part.split("=", 1)
        fields[k] = v
    if "base" not in fields:
        fields["base"] = ""
    base = parse_vector(fields["base"])
    periods = [parse_vector(p) for p in fields.get("periods", "").split(";") if p.strip()] if d else []
    if d == 0:
        base = ()
    if len(base) != d or any(len(p) != d for p in periods):
        raise DimensionError(f"linear set of wrong dimension in {line!r}")
    return LinearSet(base, tuple(periods))
