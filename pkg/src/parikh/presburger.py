"""Linear arithmetic over the naturals with divisibility.

Formulas are immutable trees.  Every quantifier ranges over N; internally a
quantified variable is an integer variable with the guard ``x >= 0`` and
elimination runs over Z with Cooper's method.  Conjunctions of literals are
solved by a depth-first search that picks the cheapest elimination step
(substitution from an equality, exact shadow for unit coefficients, Cooper
test points otherwise) and can therefore also produce models.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

Assignment = Dict[str, int]


class PresburgerError(Exception):
    """Malformed formula, unbound variable or non-sentence input."""


class ResourceLimit(PresburgerError):
    """The engine gave up; never returned as a wrong answer."""


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Term:
    """Integer affine term ``const + sum(c * x)``; zero coefficients are dropped."""

    const: int = 0
    coeffs: Tuple[Tuple[str, int], ...] = ()

    @staticmethod
    def of(coeffs: Mapping[str, int], const: int = 0) -> "Term":
        return Term(const, tuple(sorted((v, c) for v, c in coeffs.items() if c)))

    @staticmethod
    def lift(x) -> "Term":
        if isinstance(x, Term):
            return x
        if isinstance(x, int):
            return Term(x)
        if isinstance(x, str):
            return Term(0, ((x, 1),))
        raise TypeError(f"cannot build a term from {x!r}")

    def as_dict(self) -> Dict[str, int]:
        return dict(self.coeffs)

    def coeff(self, x: str) -> int:
        for v, c in self.coeffs:
            if v == x:
                return c
        return 0

    def variables(self) -> set:
        return {v for v, _ in self.coeffs}

    def __add__(self, other) -> "Term":
        other = Term.lift(other)
        d = self.as_dict()
        for v, c in other.coeffs:
            d[v] = d.get(v, 0) + c
        return Term.of(d, self.const + other.const)

    __radd__ = __add__

    def __neg__(self) -> "Term":
        return Term(-self.const, tuple((v, -c) for v, c in self.coeffs))

    def __sub__(self, other) -> "Term":
        return self + (-Term.lift(other))

    def __rsub__(self, other) -> "Term":
        return Term.lift(other) + (-self)

    def __mul__(self, k: int) -> "Term":
        if not isinstance(k, int):
            raise TypeError("terms can only be scaled by integer constants")
        if k == 0:
            return Term(0)
        return Term(self.const * k, tuple((v, c * k) for v, c in self.coeffs))

    __rmul__ = __mul__

    def substitute(self, sub: Mapping[str, "Term"]) -> "Term":
        out = Term(self.const)
        d: Dict[str, int] = {}
        for v, c in self.coeffs:
            if v in sub:
                out = out + sub[v] * c
            else:
                d[v] = d.get(v, 0) + c
        return out + Term.of(d)

    def evaluate(self, a: Mapping[str, int]) -> int:
        total = self.const
        for v, c in self.coeffs:
            if v not in a:
                raise PresburgerError(f"unbound variable {v}")
            total += c * a[v]
        return total

    def __str__(self) -> str:
        parts: List[str] = []
        for v, c in self.coeffs:
            mag = abs(c)
            body = v if mag == 1 else f"{mag}*{v}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        if self.const or not parts:
            if not parts:
                parts.append(str(self.const))
            else:
                parts.append(f"+ {self.const}" if self.const > 0 else f"- {-self.const}")
        return " ".join(parts)


def var(name: str) -> Term:
    return Term(0, ((name, 1),))


def const(k: int) -> Term:
    return Term(k)


# ---------------------------------------------------------------- formulas


class Formula:
    """Base class; use the builder functions below rather than the nodes."""

    def __and__(self, other: "Formula") -> "Formula":
        return conj(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return disj(self, other)

    def __invert__(self) -> "Formula":
        return neg(self)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, eq=True)
class Bool(Formula):
    value: bool


@dataclass(frozen=True, eq=True)
class Le(Formula):
    """``term <= 0``."""

    term: Term


@dataclass(frozen=True, eq=True)
class Eq(Formula):
    """``term = 0``."""

    term: Term


@dataclass(frozen=True, eq=True)
class Div(Formula):
    """``k | term`` with ``k >= 2``."""

    k: int
    term: Term


@dataclass(frozen=True, eq=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, eq=True)
class And(Formula):
    args: Tuple[Formula, ...]


@dataclass(frozen=True, eq=True)
class Or(Formula):
    args: Tuple[Formula, ...]


@dataclass(frozen=True, eq=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, eq=True)
class Forall(Formula):
    var: str
    body: Formula


TRUE = Bool(True)
FALSE = Bool(False)


def le(a, b) -> Formula:
    return Le(Term.lift(a) - Term.lift(b))


def lt(a, b) -> Formula:
    return Le(Term.lift(a) - Term.lift(b) + 1)


def ge(a, b) -> Formula:
    return le(b, a)


def gt(a, b) -> Formula:
    return lt(b, a)


def eq(a, b) -> Formula:
    return Eq(Term.lift(a) - Term.lift(b))


def ne(a, b) -> Formula:
    return Not(eq(a, b))


def divides(k: int, t) -> Formula:
    if k <= 0:
        raise PresburgerError("divisibility modulus must be positive")
    if k == 1:
        return TRUE
    return Div(k, Term.lift(t))


def conj(*args: Formula) -> Formula:
    flat: List[Formula] = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        elif a == TRUE:
            continue
        elif a == FALSE:
            return FALSE
        else:
            flat.append(a)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(*args: Formula) -> Formula:
    flat: List[Formula] = []
    for a in args:
        if isinstance(a, Or):
            flat.extend(a.args)
        elif a == FALSE:
            continue
        elif a == TRUE:
            return TRUE
        else:
            flat.append(a)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def neg(f: Formula) -> Formula:
    if isinstance(f, Bool):
        return Bool(not f.value)
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def implies(a: Formula, b: Formula) -> Formula:
    return disj(neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return conj(implies(a, b), implies(b, a))


def exists(names, body: Formula) -> Formula:
    if isinstance(names, str):
        names = [names]
    for n in reversed(list(names)):
        body = Exists(n, body)
    return body


def forall(names, body: Formula) -> Formula:
    if isinstance(names, str):
        names = [names]
    for n in reversed(list(names)):
        body = Forall(n, body)
    return body


def free_vars(f: Formula) -> set:
    if isinstance(f, Bool):
        return set()
    if isinstance(f, (Le, Eq, Div)):
        return f.term.variables()
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (And, Or)):
        out: set = set()
        for a in f.args:
            out |= free_vars(a)
        return out
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f)


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.arg)
    if isinstance(f, (And, Or)):
        return all(is_quantifier_free(a) for a in f.args)
    return True


_fresh = itertools.count()


def fresh(prefix: str = "_v") -> str:
    return f"{prefix}{next(_fresh)}"


def substitute(f: Formula, sub: Mapping[str, Term]) -> Formula:
    """Capture-avoiding substitution of terms for free variables."""
    if not sub:
        return f
    if isinstance(f, Bool):
        return f
    if isinstance(f, Le):
        return Le(f.term.substitute(sub))
    if isinstance(f, Eq):
        return Eq(f.term.substitute(sub))
    if isinstance(f, Div):
        return Div(f.k, f.term.substitute(sub))
    if isinstance(f, Not):
        return Not(substitute(f.arg, sub))
    if isinstance(f, And):
        return And(tuple(substitute(a, sub) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute(a, sub) for a in f.args))
    if isinstance(f, (Exists, Forall)):
        inner = {k: v for k, v in sub.items() if k != f.var}
        if not inner:
            return f
        clash = any(f.var in t.variables() for t in inner.values())
        x, body = f.var, f.body
        if clash:
            y = fresh("_r")
            body = substitute(body, {x: var(y)})
            x = y
        return type(f)(x, substitute(body, inner))
    raise TypeError(f)


def assign(f: Formula, a: Mapping[str, int]) -> Formula:
    return substitute(f, {k: Term(v) for k, v in a.items()})


# ---------------------------------------------------------------- literals
#
# A literal is a tuple (kind, k, coeffs, const) with kind in
# "le" (t <= 0), "eq" (t = 0), "dv" (k | t), "nd" (not k | t).
# coeffs is a sorted tuple of (var, coeff) pairs.

_LE, _EQ, _DV, _ND = "le", "eq", "dv", "nd"


def _gcd_all(vals: Iterable[int]) -> int:
    g = 0
    for v in vals:
        g = math.gcd(g, v)
    return g


def _mk(kind: str, k: int, coeffs: Dict[str, int], c: int):
    """Normalize a literal; returns True, False or a literal tuple."""
    items = tuple(sorted((v, a) for v, a in coeffs.items() if a))
    if kind == _LE:
        if not items:
            return c <= 0
        g = _gcd_all(abs(a) for _, a in items)
        if g > 1:
            items = tuple((v, a // g) for v, a in items)
            c = -((-c) // g)
        return (_LE, 0, items, c)
    if kind == _EQ:
        if not items:
            return c == 0
        g = _gcd_all(abs(a) for _, a in items)
        if c % g:
            return False
        if g > 1:
            items = tuple((v, a // g) for v, a in items)
            c //= g
        if items[0][1] < 0:
            items = tuple((v, -a) for v, a in items)
            c = -c
        return (_EQ, 0, items, c)
    # divisibility; coefficients use the residue of least magnitude
    items = tuple((v, _sym(a, k)) for v, a in items)
    items = tuple((v, a) for v, a in items if a)
    c %= k
    if not items:
        holds = c == 0
        return holds if kind == _DV else not holds
    g = _gcd_all([k] + [a for _, a in items])
    if c % g:
        return kind == _ND
    if g > 1:
        k //= g
        items = tuple((v, a // g) for v, a in items)
        c //= g
        if k == 1:
            return kind == _DV
    return (kind, k, items, c)


def _sym(a: int, k: int) -> int:
    r = a % k
    return r - k if 2 * r > k else r


def _lit_term(lit) -> Term:
    return Term(lit[3], lit[2])


def _lit_coeff(lit, x: str) -> int:
    for v, a in lit[2]:
        if v == x:
            return a
    return 0


def _lit_subst(lit, x: str, coeffs: Dict[str, int], c: int, scale: int = 1):
    """Substitute x := (coeffs + c) / scale, where the literal's x-coefficient
    is divisible by ``scale``."""
    kind, k, items, lc = lit
    d: Dict[str, int] = {}
    a = 0
    for v, b in items:
        if v == x:
            a = b
        else:
            d[v] = b
    if a == 0:
        return lit
    f = a // scale
    for v, b in coeffs.items():
        d[v] = d.get(v, 0) + f * b
    return _mk(kind, k, d, lc + f * c)


def _lit_eval(lit, a: Mapping[str, int]) -> bool:
    kind, k, items, c = lit
    t = c + sum(b * a.get(v, 0) for v, b in items)
    if kind == _LE:
        return t <= 0
    if kind == _EQ:
        return t == 0
    if kind == _DV:
        return t % k == 0
    return t % k != 0


def _lit_formula(lit) -> Formula:
    kind, k, items, c = lit
    t = Term(c, items)
    if kind == _LE:
        return Le(t)
    if kind == _EQ:
        return Eq(t)
    if kind == _DV:
        return Div(k, t)
    return Not(Div(k, t))


def _lit_negate(lit) -> List[list]:
    """Negation as a disjunction of conjunctions of literals."""
    kind, k, items, c = lit
    d = dict(items)
    if kind == _LE:
        return [[_mk(_LE, 0, {v: -a for v, a in d.items()}, -c + 1)]]
    if kind == _EQ:
        return [[_mk(_LE, 0, d, c + 1)], [_mk(_LE, 0, {v: -a for v, a in d.items()}, -c + 1)]]
    return [[(_ND if kind == _DV else _DV, k, items, c)]]


def _atom_lit(f: Formula):
    if isinstance(f, Le):
        return _mk(_LE, 0, f.term.as_dict(), f.term.const)
    if isinstance(f, Eq):
        return _mk(_EQ, 0, f.term.as_dict(), f.term.const)
    if isinstance(f, Div):
        return _mk(_DV, f.k, f.term.as_dict(), f.term.const)
    raise TypeError(f)


# ---------------------------------------------------------------- NNF / DNF
#
# Internal NNF nodes: ("lit", lit) | ("and", [..]) | ("or", [..]) | ("ex", var, node)
# Universal quantifiers never survive NNF: they are eliminated on the spot.


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def tick(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise ResourceLimit("presburger step budget exhausted")


DEFAULT_BUDGET = 5_000_000


def _nnf(f: Formula, positive: bool, budget: _Budget):
    if isinstance(f, Bool):
        return ("const", f.value == positive)
    if isinstance(f, (Le, Eq, Div)):
        lit = _atom_lit(f)
        if positive:
            return ("const", lit) if isinstance(lit, bool) else ("lit", lit)
        if isinstance(lit, bool):
            return ("const", not lit)
        alts = _lit_negate(lit)
        return _mk_or([_mk_and([_lit_node(l) for l in conj_]) for conj_ in alts])
    if isinstance(f, Not):
        return _nnf(f.arg, not positive, budget)
    if isinstance(f, (And, Or)):
        kids = [_nnf(a, positive, budget) for a in f.args]
        is_and = isinstance(f, And) == positive
        return _mk_and(kids) if is_and else _mk_or(kids)
    if isinstance(f, (Exists, Forall)):
        existential = isinstance(f, Exists) == positive
        if existential:
            y = fresh("_e")
            body = substitute(f.body, {f.var: var(y)})
            inner = _nnf(body, positive, budget)
            return ("ex", y, _mk_and([inner, ("lit", _guard(y))]))
        # forall y. G  ==  not exists y. not G: eliminate exactly
        y = fresh("_a")
        body = substitute(f.body, {f.var: var(y)})
        negated = _nnf(body, not positive, budget)
        proj = _project_node(_mk_and([negated, ("lit", _guard(y))]), [y], budget)
        # proj is a list of conjunctions; negate it
        return _negate_dnf(proj)
    raise TypeError(f)


def _guard(x: str):
    return (_LE, 0, ((x, -1),), 0)


def _lit_node(lit):
    if isinstance(lit, bool):
        return ("const", lit)
    return ("lit", lit)


def _mk_and(kids):
    out = []
    for k in kids:
        if k[0] == "const":
            if not k[1]:
                return ("const", False)
            continue
        if k[0] == "and":
            out.extend(k[1])
        else:
            out.append(k)
    if not out:
        return ("const", True)
    if len(out) == 1:
        return out[0]
    return ("and", out)


def _mk_or(kids):
    out = []
    for k in kids:
        if k[0] == "const":
            if k[1]:
                return ("const", True)
            continue
        if k[0] == "or":
            out.extend(k[1])
        else:
            out.append(k)
    if not out:
        return ("const", False)
    if len(out) == 1:
        return out[0]
    return ("or", out)


def _negate_dnf(dnf: List[list]):
    # not (C1 or C2 ...) = and_i (or_{l in Ci} not l)
    clauses = []
    for conj_ in dnf:
        alts = []
        for lit in conj_:
            for nc in _lit_negate(lit):
                alts.append(_mk_and([_lit_node(l) for l in nc]))
        clauses.append(_mk_or(alts))
    return _mk_and(clauses)


def _iter_dnf(node, budget: _Budget) -> Iterator[Tuple[list, list]]:
    """Lazily enumerate (literals, existential variables) conjunctions."""
    # work list approach: a stack of pending nodes
    def rec(pending: list, lits: list, exvars: list):
        budget.tick()
        while pending:
            n = pending[-1]
            pending = pending[:-1]
            tag = n[0]
            if tag == "const":
                if not n[1]:
                    return
                continue
            if tag == "lit":
                lits = lits + [n[1]]
                continue
            if tag == "and":
                pending = pending + list(reversed(n[1]))
                continue
            if tag == "ex":
                exvars = exvars + [n[1]]
                pending = pending + [n[2]]
                continue
            if tag == "or":
                if _quick_contradiction(lits):
                    return
                for alt in n[1]:
                    yield from rec(pending + [alt], lits, exvars)
                return
            raise TypeError(tag)
        if not _quick_contradiction(lits):
            yield lits, exvars

    yield from rec([node], [], [])


def _quick_contradiction(lits: list) -> bool:
    bounds: Dict[tuple, int] = {}
    eqs: Dict[tuple, int] = {}
    for lit in lits:
        kind, _, items, c = lit
        if kind == _LE:
            if items in bounds and bounds[items] >= c:
                continue
            bounds[items] = c
            negk = tuple((v, -a) for v, a in items)
            if negk in bounds and bounds[negk] + c > 0:
                return True
        elif kind == _EQ:
            if items in eqs and eqs[items] != c:
                return True
            eqs[items] = c
    for items, c in eqs.items():
        # t = 0 with t = items + c; check against bounds items + b <= 0 => -c + b <= 0
        if items in bounds and bounds[items] - c > 0:
            return True
        negk = tuple((v, -a) for v, a in items)
        if negk in bounds and bounds[negk] + c > 0:
            return True
    return False


# ---------------------------------------------------------------- conjunction solver


def _simplify(lits: list):
    """Dedupe and tighten; returns list or None when contradictory."""
    seen = set()
    bounds: Dict[tuple, int] = {}
    eqs: Dict[tuple, int] = {}
    rest = []
    for lit in lits:
        if lit is True:
            continue
        if lit is False:
            return None
        kind, k, items, c = lit
        if kind == _LE:
            if items in bounds:
                if c > bounds[items]:
                    bounds[items] = c
            else:
                bounds[items] = c
        elif kind == _EQ:
            if items in eqs and eqs[items] != c:
                return None
            eqs[items] = c
        else:
            if lit not in seen:
                seen.add(lit)
                rest.append(lit)
    out = []
    for items, c in bounds.items():
        negk = tuple((v, -a) for v, a in items)
        if negk in bounds:
            if bounds[negk] + c > 0:
                return None
            if bounds[negk] + c == 0 and items > negk:
                # a pair t <= 0 and -t <= 0 is the equality t = 0
                if items in eqs and eqs[items] != c:
                    return None
                eqs[items] = c
        if items in eqs:
            e = eqs[items]
            if c - e > 0:
                return None
            continue
        if negk in eqs:
            e = eqs[negk]
            if c + e > 0:
                return None
            continue
        out.append((_LE, 0, items, c))
    for items, c in eqs.items():
        out.append((_EQ, 0, items, c))
    out.extend(rest)
    return out


def _vars_of(lits: list) -> List[str]:
    vs = set()
    for lit in lits:
        for v, _ in lit[2]:
            vs.add(v)
    return sorted(vs)


class _Recover:
    """How to compute an eliminated variable from a model of the rest."""

    __slots__ = ("x", "mode", "data")

    def __init__(self, x, mode, data):
        self.x, self.mode, self.data = x, mode, data

    def apply(self, m: Dict[str, int], lits: list) -> None:
        x = self.x
        if self.mode == "term":
            coeffs, c, scale = self.data
            num = c + sum(b * m.get(v, 0) for v, b in coeffs.items())
            m[x] = num // scale
            return
        if self.mode == "range":
            # x >= each lower term, x <= each upper term, all unit coefficient
            lowers, uppers = self.data
            lo = max((t.evaluate(_Default(m)) for t in lowers), default=None)
            hi = min((t.evaluate(_Default(m)) for t in uppers), default=None)
            if lo is None:
                lo = hi if hi is not None else 0
            m[x] = lo
            return
        raise AssertionError(self.mode)


class _Default(dict):
    def __init__(self, m):
        super().__init__(m)

    def __missing__(self, key):
        return 0

    def __contains__(self, key):
        return True


def _normalize_var(lits: list, x: str):
    """Scale so that x has coefficient +-1 (renamed to x itself, meaning l*x).

    Returns (l, new literal list) where the new literals speak about
    x' = l * x and include l | x' when l > 1.
    """
    cs = [abs(_lit_coeff(l, x)) for l in lits]
    l_ = 1
    for c in cs:
        if c:
            l_ = l_ * c // math.gcd(l_, c)
    if l_ == 1:
        return 1, lits
    out = []
    for lit in lits:
        a = _lit_coeff(lit, x)
        if not a:
            out.append(lit)
            continue
        m = l_ // abs(a)
        kind, k, items, c = lit
        d = {v: (b * m if v != x else (1 if b > 0 else -1)) for v, b in items}
        out.append(_mk(kind, k * m, d, c * m))
    out.append(_mk(_DV, l_, {x: 1}, 0))
    return l_, out


def _branches(lits: list, x: str):
    """Eliminate x from a conjunction.

    Yields (new_lits, recover) pairs; the disjunction of the new conjunctions
    is equivalent to exists x (over Z) of the input.
    """
    with_x = [l for l in lits if _lit_coeff(l, x)]
    without = [l for l in lits if not _lit_coeff(l, x)]
    # equality with coefficient +-1 on x: direct substitution
    for lit in with_x:
        if lit[0] == _EQ and abs(_lit_coeff(lit, x)) == 1:
            a = _lit_coeff(lit, x)
            d = {v: -b * a for v, b in lit[2] if v != x}
            c = -lit[3] * a
            new = list(without)
            for other in with_x:
                if other is lit:
                    continue
                new.append(_lit_subst(other, x, d, c))
            yield new, _Recover(x, "term", (d, c, 1))
            return
    l_, norm = _normalize_var(with_x, x)
    norm = [n for n in norm if n is not True]
    if any(n is False for n in norm):
        return
    # equality after normalization: x' = -t, with l | x'
    for lit in norm:
        if not isinstance(lit, bool) and lit[0] == _EQ and _lit_coeff(lit, x):
            a = _lit_coeff(lit, x)
            d = {v: -b * a for v, b in lit[2] if v != x}
            c = -lit[3] * a
            new = list(without)
            for other in norm:
                if other is lit or isinstance(other, bool):
                    continue
                if _lit_coeff(other, x):
                    new.append(_lit_subst(other, x, d, c))
                else:
                    new.append(other)
            yield new, _Recover(x, "term", (d, c, l_))
            return
    lowers, uppers, mods = [], [], []
    for lit in norm:
        if isinstance(lit, bool):
            continue
        a = _lit_coeff(lit, x)
        if not a:
            without.append(lit)
            continue
        if lit[0] == _LE:
            rest = Term(lit[3], tuple((v, b) for v, b in lit[2] if v != x))
            if a > 0:
                uppers.append(-rest)      # x' <= -rest
            else:
                lowers.append(rest)       # x' >= rest
        else:
            mods.append(lit)
    delta = 1
    for m in mods:
        delta = delta * m[1] // math.gcd(delta, m[1])

    def scaled(terms):
        return [Term(t.const, t.coeffs) for t in terms]

    if delta == 1:
        # exact shadow; l_ must be 1 here since l_ > 1 adds a modulus
        new = list(without)
        for lo in lowers:
            for up in uppers:
                new.append(_mk(_LE, 0, (lo - up).as_dict(), (lo - up).const))
        yield new, _Recover(x, "range", (scaled(lowers), scaled(uppers)))
        return
    if not uppers or not lowers:
        # x' unbounded on one side: only the residues matter
        seen = set()
        for j in range(delta):
            conj_ = list(without)
            ok = True
            for m in mods:
                r = _lit_subst(m, x, {}, j)
                if r is False:
                    ok = False
                    break
                if r is not True:
                    conj_.append(r)
            if not ok:
                continue
            key = tuple(sorted(map(repr, conj_)))
            if key in seen:
                continue
            seen.add(key)
            yield conj_, _Scan(x, scaled(lowers), scaled(uppers), l_, delta, with_x)
        return
    use_lower = len(lowers) <= len(uppers)
    pts = lowers if use_lower else uppers
    for p in pts:
        for j in range(delta):
            off = j if use_lower else -j
            pt = p + off
            d, c = pt.as_dict(), pt.const
            new = list(without)
            ok = True
            for lit in norm:
                if isinstance(lit, bool) or not _lit_coeff(lit, x):
                    continue
                r = _lit_subst(lit, x, d, c)
                if r is False:
                    ok = False
                    break
                if r is not True:
                    new.append(r)
            if ok:
                yield new, _Recover(x, "term", (d, c, l_))


class _Scan:
    """Recover a variable bounded on one side only, by scanning one period
    of the original literals starting from the bound."""

    def __init__(self, x, lowers, uppers, l_, period, orig):
        self.x, self.lowers, self.uppers = x, lowers, uppers
        self.l_, self.period, self.orig = l_, period, orig

    def apply(self, m: Dict[str, int], lits: list) -> None:
        x, l_ = self.x, self.l_
        if self.lowers:
            lo = max(t.evaluate(_Default(m)) for t in self.lowers)
            start = -(-lo // l_)
            cands = range(start, start + self.period + 2)
        elif self.uppers:
            hi = min(t.evaluate(_Default(m)) for t in self.uppers)
            start = hi // l_
            cands = range(start, start - self.period - 2, -1)
        else:
            cands = range(0, self.period + 2)
        for cand in cands:
            m[x] = cand
            if all(_lit_eval(l, m) for l in self.orig):
                return
        raise PresburgerError("internal error: model recovery failed")


def _choose_var(lits: list, candidates: List[str]) -> str:
    best, best_cost = None, None
    for x in candidates:
        lo = up = mods = 0
        has_unit_eq = False
        has_eq = False
        nonunit = False
        for lit in lits:
            a = _lit_coeff(lit, x)
            if not a:
                continue
            if lit[0] == _EQ:
                has_eq = True
                if abs(a) == 1:
                    has_unit_eq = True
            elif lit[0] == _LE:
                if a > 0:
                    up += 1
                else:
                    lo += 1
            else:
                mods += 1
            if abs(a) != 1:
                nonunit = True
        if has_unit_eq:
            cost = (0, 0)
        elif has_eq:
            cost = (1, 0)
        elif lo == 0 or up == 0:
            cost = (2, mods)
        elif not nonunit and not mods:
            cost = (3, lo * up - lo - up)
        else:
            cost = (4, min(lo, up))
        if best_cost is None or cost < best_cost:
            best, best_cost = x, cost
    return best


def _solve_conj(lits: list, budget: _Budget, memo: dict) -> Optional[Dict[str, int]]:
    """A model over Z of a conjunction of literals, or None."""
    lits = _simplify(lits)
    if lits is None:
        return None
    vs = _vars_of(lits)
    if not vs:
        return {}
    key = frozenset(lits)
    if key in memo:
        return None
    budget.tick()
    x = _choose_var(lits, vs)
    for new, rec in _branches(lits, x):
        budget.tick()
        m = _solve_conj(new, budget, memo)
        if m is not None:
            rec.apply(m, lits)
            return m
    memo[key] = False
    return None


def _project_conj(lits: list, xs: List[str], budget: _Budget) -> List[list]:
    """Eliminate all of xs from a conjunction; returns a list of conjunctions."""
    work = [lits]
    for x in xs:
        nxt = []
        for conj_ in work:
            s = _simplify(conj_)
            if s is None:
                continue
            if not any(_lit_coeff(l, x) for l in s):
                nxt.append(s)
                continue
            for new, _ in _branches(s, x):
                budget.tick()
                s2 = _simplify(new)
                if s2 is not None:
                    nxt.append(s2)
        work = _dedupe_dnf(nxt)
    return work


def _dedupe_dnf(dnf: List[list]) -> List[list]:
    seen = set()
    out = []
    for c in dnf:
        key = frozenset(c)
        if not c:
            return [[]]
        if key in seen:
            continue
        seen.add(key)
        out.append(sorted(c))
    return out


def _project_node(node, xs: List[str], budget: _Budget) -> List[list]:
    out = []
    for lits, exvars in _iter_dnf(node, budget):
        res = _project_conj(lits, list(xs) + list(exvars), budget)
        out.extend(res)
        if any(len(c) == 0 for c in res):
            return [[]]
    return _dedupe_dnf(out)


# ---------------------------------------------------------------- public API


def _dnf_formula(dnf: List[list]) -> Formula:
    return disj(*[conj(*[_lit_formula(l) for l in c]) for c in dnf])


def eliminate(f: Formula, budget: int = DEFAULT_BUDGET) -> Formula:
    """Quantifier-free formula equivalent to ``f`` (free variables over N)."""
    b = _Budget(budget)
    node = _nnf(f, True, b)
    dnf = _project_node(node, [], b)
    return _dnf_formula(dnf)


def _satisfy(f: Formula, budget: _Budget, natural_free: bool = True) -> Optional[Dict[str, int]]:
    fv = sorted(free_vars(f))
    node = _nnf(f, True, budget)
    guards = [("lit", _guard(v)) for v in fv] if natural_free else []
    node = _mk_and([node] + guards)
    memo: dict = {}
    for lits, exvars in _iter_dnf(node, budget):
        m = _solve_conj(lits, budget, memo)
        if m is not None:
            return {v: m.get(v, 0) for v in fv}
    return None


def decide(f: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    """Truth value over N of a sentence."""
    if free_vars(f):
        raise PresburgerError(f"not a sentence; free variables {sorted(free_vars(f))}")
    return _satisfy(f, _Budget(budget)) is not None


def is_satisfiable(f: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    return _satisfy(f, _Budget(budget)) is not None


def is_valid(f: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    return _satisfy(neg(f), _Budget(budget)) is None


def sat_witness(f: Formula, budget: int = DEFAULT_BUDGET) -> Optional[Assignment]:
    """An assignment of naturals to the free variables satisfying ``f``."""
    m = _satisfy(f, _Budget(budget))
    if m is None:
        return None
    if not evaluate(f, m):
        raise PresburgerError("internal error: witness failed its self-check")
    return m


def evaluate(f: Formula, a: Mapping[str, int]) -> bool:
    """Truth value of ``f`` under ``a``; quantified parts go to the decision engine."""
    if isinstance(f, Bool):
        return f.value
    if isinstance(f, Le):
        return f.term.evaluate(a) <= 0
    if isinstance(f, Eq):
        return f.term.evaluate(a) == 0
    if isinstance(f, Div):
        return f.term.evaluate(a) % f.k == 0
    if isinstance(f, Not):
        return not evaluate(f.arg, a)
    if isinstance(f, And):
        return all(evaluate(x, a) for x in f.args)
    if isinstance(f, Or):
        return any(evaluate(x, a) for x in f.args)
    if isinstance(f, (Exists, Forall)):
        missing = free_vars(f) - set(a)
        if missing:
            raise PresburgerError(f"unbound variable {sorted(missing)[0]}")
        return decide(assign(f, {k: v for k, v in a.items() if k in free_vars(f)}))
    raise TypeError(f)


def smallest_model(f: Formula, order: List[str], budget: int = DEFAULT_BUDGET) -> Optional[Assignment]:
    """Lexicographically smallest model over ``order`` (all free variables)."""
    b = _Budget(budget)
    fixed: Dict[str, int] = {}
    if _satisfy(f, b) is None:
        return None
    for i, x in enumerate(order):
        rest = [y for y in order[i + 1:]]
        g = exists(rest, assign(f, fixed)) if rest else assign(f, fixed)
        # g has free variable x only
        value = 0
        while True:
            if _satisfy(assign(g, {x: value}), b) is not None:
                break
            value += 1
        fixed[x] = value
    return fixed


# ---------------------------------------------------------------- text


def to_text(f: Formula) -> str:
    """Render in the surface syntax accepted by :func:`parse_formula`."""
    if isinstance(f, Bool):
        return "true" if f.value else "false"
    if isinstance(f, (Le, Eq)):
        pos = {v: c for v, c in f.term.coeffs if c > 0}
        negs = {v: -c for v, c in f.term.coeffs if c < 0}
        lhs = Term.of(pos, max(f.term.const, 0))
        rhs = Term.of(negs, max(-f.term.const, 0))
        op = "<=" if isinstance(f, Le) else "="
        return f"{lhs} {op} {rhs}"
    if isinstance(f, Div):
        return f"div({f.k}, {f.term})"
    if isinstance(f, Not):
        return f"not {_paren(f.arg)}"
    if isinstance(f, And):
        return " and ".join(_paren(a) for a in f.args)
    if isinstance(f, Or):
        return " or ".join(_paren(a) for a in f.args)
    if isinstance(f, Exists):
        return f"exists {f.var}. {to_text(f.body)}"
    if isinstance(f, Forall):
        return f"forall {f.var}. {to_text(f.body)}"
    raise TypeError(f)


def _paren(f: Formula) -> str:
    if isinstance(f, (And, Or, Exists, Forall, Not)):
        return f"({to_text(f)})"
    return to_text(f)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(<=|>=|!=|[=<>+\-*().,]))")

_KEYWORDS = {"exists", "forall", "and", "or", "not", "div", "true", "false"}


def _tokenize(text: str) -> List[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresburgerError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, toks: List[str]):
        self.toks, self.i = toks, 0

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect: Optional[str] = None) -> str:
        t = self.peek()
        if t is None or (expect is not None and t != expect):
            raise PresburgerError(f"expected {expect or 'token'} at token {self.i}, got {t!r}")
        self.i += 1
        return t

    def formula(self) -> Formula:
        t = self.peek()
        if t in ("exists", "forall"):
            self.take()
            names = [self.take()]
            while self.peek() == ",":
                self.take()
                names.append(self.take())
            for n in names:
                _check_name(n)
            self.take(".")
            body = self.formula()
            return exists(names, body) if t == "exists" else forall(names, body)
        left = self.conjunction()
        parts = [left]
        while self.peek() == "or":
            self.take()
            parts.append(self.conjunction())
        return disj(*parts)

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.peek() == "and":
            self.take()
            parts.append(self.unary())
        return conj(*parts)

    def unary(self) -> Formula:
        t = self.peek()
        if t == "not":
            self.take()
            return neg(self.unary())
        if t in ("exists", "forall"):
            return self.formula()
        if t == "true":
            self.take()
            return TRUE
        if t == "false":
            self.take()
            return FALSE
        if t == "div":
            self.take()
            self.take("(")
            k = int(self.take())
            self.take(",")
            term = self.term()
            self.take(")")
            return divides(k, term)
        if t == "(":
            save = self.i
            try:
                return self.comparison()
            except PresburgerError:
                self.i = save
            self.take("(")
            f = self.formula()
            self.take(")")
            return f
        return self.comparison()

    def comparison(self) -> Formula:
        a = self.term()
        op = self.take()
        b = self.term()
        table = {"=": eq, "<=": le, ">=": ge, "<": lt, ">": gt, "!=": ne}
        if op not in table:
            raise PresburgerError(f"unknown comparison {op!r}")
        return table[op](a, b)

    def term(self) -> Term:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        t = self.mono() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            m = self.mono()
            t = t + m if op == "+" else t - m
        return t

    def mono(self) -> Term:
        t = self.peek()
        if t == "(":
            self.take()
            inner = self.term()
            self.take(")")
            return inner
        if t is not None and t.isdigit():
            self.take()
            k = int(t)
            if self.peek() == "*":
                self.take()
                if self.peek() == "(":
                    return self.mono() * k
                name = self.take()
                _check_name(name)
                return var(name) * k
            return Term(k)
        if t is not None and (t[0].isalpha() or t[0] == "_") and t not in _KEYWORDS:
            self.take()
            _check_name(t)
            if self.peek() == "*":
                self.take()
                k = int(self.take())
                return var(t) * k
            return var(t)
        raise PresburgerError(f"expected a term at token {self.i}, got {t!r}")


def _check_name(n: str) -> None:
    if n in _KEYWORDS or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
        raise PresburgerError(f"bad variable name {n!r}")


def parse_formula(text: str) -> Formula:
    """Parse the surface syntax, e.g. ``exists x. y = 2*x and not div(3, y)``."""
    p = _Parser(_tokenize(text))
    f = p.formula()
    if p.peek() is not None:
        raise PresburgerError(f"trailing input at token {p.i}: {p.peek()!r}")
    return f
