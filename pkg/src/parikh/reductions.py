"""Hardness reductions, usable as instance generators.

Three families live here:

* integer expressions (sums and unions of constants) turned into a linear
  set and into an acyclic deterministic PA, plus the irrelevance and
  universality instances assembled from them;
* the partition problem as a deterministic limit PA;
* two-counter machines, their configuration encoding, and the pair of
  deterministic strong reset PA whose intersection holds exactly the
  machine's infinite computation.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from . import semilinear as sl
from .automata import FinitePA, OmegaPA, Transition, check, make_omega, make_pa

# ---------------------------------------------------------------- integer expressions


@dataclass(frozen=True)
class Const:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("integer expression constants must be non-negative")

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class Plus:
    left: "IntegerExpression"
    right: "IntegerExpression"

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Union_:
    left: "IntegerExpression"
    right: "IntegerExpression"

    def __str__(self):
        return f"({self.left} | {self.right})"


IntegerExpression = Union[Const, Plus, Union_]


class ExpressionSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(\d+|[()+|])")


def parse_intexpr(text: str) -> IntegerExpression:
    """Parse ``n``, ``(e + e)`` or ``(e | e)``; outer parentheses are optional."""
    toks: List[str] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionSyntaxError(f"unexpected character at {pos} in {text!r}")
        toks.append(m.group(1))
        pos = m.end()
    i = 0

    def atom():
        nonlocal i
        if i >= len(toks):
            raise ExpressionSyntaxError("unexpected end of expression")
        t = toks[i]
        i += 1
        if t.isdigit():
            return Const(int(t))
        if t != "(":
            raise ExpressionSyntaxError(f"unexpected {t!r}")
        e = binary()
        if i >= len(toks) or toks[i] != ")":
            raise ExpressionSyntaxError("missing ')'")
        i += 1
        return e

    def binary():
        nonlocal i
        e = atom()
        while i < len(toks) and toks[i] in "+|":
            op = toks[i]
            i += 1
            r = atom()
            e = Plus(e, r) if op == "+" else Union_(e, r)
        return e

    e = binary()
    if i != len(toks):
        raise ExpressionSyntaxError(f"trailing input {' '.join(toks[i:])!r}")
    return e


def intexpr_eval(e: IntegerExpression) -> FrozenSet[int]:
    if isinstance(e, Const):
        return frozenset({e.n})
    l, r = intexpr_eval(e.left), intexpr_eval(e.right)
    if isinstance(e, Plus):
        return frozenset(x + y for x in l for y in r)
    return l | r


def intexpr_size(e: IntegerExpression) -> int:
    """Number of operators."""
    if isinstance(e, Const):
        return 0
    return 1 + intexpr_size(e.left) + intexpr_size(e.right)


def _periods(e: IntegerExpression) -> Tuple[int, List[Tuple[int, ...]]]:
    """(d, P) with n ∈ L(e) iff (n, 1, ..., 1) ∈ C(0, P) ⊆ ℕ^{1+d}."""
    if isinstance(e, Const):
        return 1, [(e.n, 1)]
    d1, p1 = _periods(e.left)
    d2, p2 = _periods(e.right)
    left = [p[:1] + p[1:] + (0,) * d2 for p in p1]
    right = [p[:1] + (0,) * d1 + p[1:] for p in p2]
    if isinstance(e, Plus):
        return d1 + d2, left + right
    # ∪: a fresh last coordinate and two selector vectors; using v1 blocks
    # every period of e1 (they all have a 1 in e1's block), and vice versa
    v1 = (0,) + (1,) * d1 + (0,) * d2 + (1,)
    v2 = (0,) + (0,) * d1 + (1,) * d2 + (1,)
    return d1 + d2 + 1, [p + (0,) for p in left + right] + [v1, v2]


def intexpr_to_linearset(e: IntegerExpression) -> sl.LinearSet:
    d, ps = _periods(e)
    return sl.LinearSet(sl.zeros(1 + d), tuple(ps))


def intexpr_dim(e: IntegerExpression) -> int:
    """The d in the 1 + d dimensions of the linear set for ``e``."""
    return _periods(e)[0]


def _as_constraint(ls: sl.LinearSet) -> sl.ConstraintSet:
    return sl.from_generators(sl.SemiLinearSet(ls.dim, (ls,)))


def _intexpr_parts(e: IntegerExpression, counter: List[int]):
    """(states, transitions, initial, final) of the acyclic PA for ``e``."""

    def new():
        counter[0] += 1
        return f"s{counter[0] - 1}"

    if isinstance(e, Const):
        q0, q1 = new(), new()
        return [q0, q1], [(q0, "a", (e.n,), q1), (q0, "b", (e.n,), q1)], q0, q1
    s1, t1, i1, f1 = _intexpr_parts(e.left, counter)
    s2, t2, i2, f2 = _intexpr_parts(e.right, counter)
    if isinstance(e, Plus):
        glue = [(f1, "a", (0,), i2), (f1, "b", (0,), i2)]
        return s1 + s2, t1 + t2 + glue, i1, f2
    q, qf = new(), new()
    glue = [(q, "a", (0,), i1), (q, "b", (0,), i2)]
    glue += [(f, l, (0,), qf) for f in (f1, f2) for l in "ab"]
    return [q] + s1 + s2 + [qf], t1 + t2 + glue, q, qf


def intexpr_to_pa(e: IntegerExpression) -> FinitePA:
    """Deterministic acyclic PA of dimension 1 whose accepting-run images are L(e)."""
    states, ts, q0, qf = _intexpr_parts(e, [0])
    pa = make_pa(states, "ab", q0, ts, {qf}, sl.universal_nat(1), dim=1)
    check(pa)
    return pa


def _irrelevance_parts(e1: IntegerExpression, e2: IntegerExpression):
    states, ts, q0, qf = _intexpr_parts(e1, [0])
    d = intexpr_dim(e2)
    padded = [(p, l, v + (0,) * d, q) for p, l, v, q in ts]
    last = f"s{len(states)}"
    ones = (0,) + (1,) * d
    padded += [(qf, "a", ones, last), (qf, "b", ones, last)]
    return states + [last], padded, q0, last, d


def irrelevance_instance(e1: IntegerExpression, e2: IntegerExpression) -> FinitePA:
    """Deterministic acyclic PA whose constraint is irrelevant iff L(e1) ⊆ L(e2)."""
    states, ts, q0, last, d = _irrelevance_parts(e1, e2)
    pa = make_pa(states, "ab", q0, ts, {last}, _as_constraint(intexpr_to_linearset(e2)), dim=1 + d)
    check(pa)
    return pa


def universality_instance(e1: IntegerExpression, e2: IntegerExpression) -> FinitePA:
    """Deterministic complete PA that is universal iff L(e1) ⊆ L(e2)."""
    states, ts, q0, last, d = _irrelevance_parts(e1, e2)
    zero = sl.zeros(1 + d)
    ts = ts + [(last, "a", zero, last), (last, "b", zero, last)]
    # words that stop early leave the selector block at 0
    prefix = sl.linear(zero, [sl.make_unit(1 + d, 1)])
    c = sl.union(_as_constraint(intexpr_to_linearset(e2)), sl.from_generators(prefix))
    pa = make_pa(states, "ab", q0, ts, set(states), c, dim=1 + d)
    check(pa)
    return pa


# ---------------------------------------------------------------- partition


def has_equal_split(m: Sequence[int]) -> bool:
    """Brute force: can the multiset be split into two parts of equal sum?"""
    total = sum(m)
    if total % 2:
        return False
    reach = {0}
    for n in m:
        reach |= {r + n for r in reach}
    return total // 2 in reach


def partition_to_limit(m: Sequence[int]) -> OmegaPA:
    """Deterministic complete limit PA that is universal iff ``m`` has no equal split."""
    m = list(m)
    if any(int(n) != n or n < 1 for n in m):
        raise ValueError("partition instances need positive integers")
    k = len(m)
    states = [f"q{i}" for i in range(k + 1)]
    ts = []
    for i, n in enumerate(m):
        ts.append((states[i], "a", (n, 0), states[i + 1]))
        ts.append((states[i], "b", (0, n), states[i + 1]))
    ts += [(states[k], "a", (0, 0), states[k]), (states[k], "b", (0, 0), states[k])]
    unequal = sl.SemiLinearSet(2, (
        sl.LinearSet((1, 0), ((1, 0), (1, 1))),
        sl.LinearSet((0, 1), ((0, 1), (1, 1))),
    ))
    a = make_omega(states, "ab", states[0], ts, {states[k]}, sl.from_generators(unequal), "limit")
    check(a)
    return a


# ---------------------------------------------------------------- two-counter machines


@dataclass(frozen=True)
class Instr:
    op: str  # inc, dec, ifz, stop
    counter: int = 0
    zero: int = 0
    nonzero: int = 0

    def __str__(self):
        if self.op == "stop":
            return "stop"
        if self.op == "ifz":
            return f"ifz {self.counter} {self.zero} {self.nonzero}"
        return f"{self.op} {self.counter}"


@dataclass(frozen=True)
class TwoCounterMachine:
    """Instructions for lines 1..k; line k is the only STOP."""

    program: Tuple[Instr, ...]

    def __post_init__(self):
        prog = tuple(self.program)
        object.__setattr__(self, "program", prog)
        k = len(prog)
        if k == 0 or prog[-1].op != "stop":
            raise ValueError("the last instruction must be stop")
        for line, ins in enumerate(prog, 1):
            if ins.op not in ("inc", "dec", "ifz", "stop"):
                raise ValueError(f"line {line}: unknown instruction {ins.op!r}")
            if ins.op == "stop" and line != k:
                raise ValueError(f"line {line}: stop before the last line")
            if ins.op != "stop" and ins.counter not in (0, 1):
                raise ValueError(f"line {line}: counter must be 0 or 1")
            if ins.op == "ifz" and not (1 <= ins.zero <= k and 1 <= ins.nonzero <= k):
                raise ValueError(f"line {line}: jump target out of range")

    @property
    def k(self) -> int:
        return len(self.program)

    def instr(self, line: int) -> Instr:
        return self.program[line - 1]


@dataclass(frozen=True)
class TcmConfiguration:
    line: int
    z0: int
    z1: int


def parse_tcm(text: str) -> TwoCounterMachine:
    """One instruction per line: ``inc 0``, ``dec 1``, ``ifz 0 3 2``, ``stop``."""
    prog = []
    for raw in text.splitlines():
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        try:
            if parts[0] == "stop" and len(parts) == 1:
                prog.append(Instr("stop"))
            elif parts[0] in ("inc", "dec") and len(parts) == 2:
                prog.append(Instr(parts[0], int(parts[1])))
            elif parts[0] == "ifz" and len(parts) == 4:
                prog.append(Instr("ifz", int(parts[1]), int(parts[2]), int(parts[3])))
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"cannot parse instruction {ln!r}") from None
    return TwoCounterMachine(tuple(prog))


def dump_tcm(m: TwoCounterMachine) -> str:
    return "".join(f"{ins}\n" for ins in m.program)


def tcm_step(m: TwoCounterMachine, c: TcmConfiguration) -> Optional[TcmConfiguration]:
    ins = m.instr(c.line)
    z = [c.z0, c.z1]
    if ins.op == "stop":
        return None
    if ins.op == "inc":
        z[ins.counter] += 1
        return TcmConfiguration(c.line + 1, *z)
    if ins.op == "dec":
        z[ins.counter] = max(z[ins.counter] - 1, 0)
        return TcmConfiguration(c.line + 1, *z)
    target = ins.zero if z[ins.counter] == 0 else ins.nonzero
    return TcmConfiguration(target, *z)


def tcm_run(m: TwoCounterMachine, fuel: int) -> Tuple[List[TcmConfiguration], bool]:
    """Simulate from (1, 0, 0) for at most ``fuel`` steps; the flag says STOP was reached."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    c = TcmConfiguration(1, 0, 0)
    trace = [c]
    for _ in range(fuel + 1):
        if m.instr(c.line).op == "stop":
            return trace, True
        if len(trace) > fuel:
            break
        c = tcm_step(m, c)
        trace.append(c)
    return trace, False


def is_guarded(m: TwoCounterMachine) -> bool:
    """Every ``dec i`` on line l sits right after ``ifz i (l+1) l``."""
    for line, ins in enumerate(m.program, 1):
        if ins.op == "dec":
            prev = m.program[line - 2] if line >= 2 else None
            if prev != Instr("ifz", ins.counter, line + 1, line):
                return False
    return True


def tcm_guard_decrements(m: TwoCounterMachine) -> TwoCounterMachine:
    """Insert the zero test in front of every unguarded decrement."""
    needs = []
    for line, ins in enumerate(m.program, 1):
        prev = m.program[line - 2] if line >= 2 else None
        needs.append(ins.op == "dec" and prev != Instr("ifz", ins.counter, line + 1, line))
    # new line number of the first instruction emitted for each old line
    where: Dict[int, int] = {}
    pos = 1
    for line, extra in enumerate(needs, 1):
        where[line] = pos
        pos += 2 if extra else 1
    out: List[Instr] = []
    for line, (ins, extra) in enumerate(zip(m.program, needs), 1):
        if extra:
            here = len(out) + 1
            out.append(Instr("ifz", ins.counter, here + 2, here + 1))
        if ins.op == "ifz":
            ins = Instr("ifz", ins.counter, where[ins.zero], where[ins.nonzero])
        out.append(ins)
    # an already guarded pair keeps its shape only if the guard's targets moved along
    g = TwoCounterMachine(tuple(out))
    if not is_guarded(g):
        raise AssertionError("guarding failed")
    return g


SIGMA_I = ("I_a", "I_b", "D_a", "D_b", "Z_a", "Z_b", "Zbar_a", "Zbar_b")
_CODE = {x: i + 1 for i, x in enumerate(SIGMA_I)}


def tcm_alphabet(m: TwoCounterMachine) -> Tuple[str, ...]:
    return ("a", "b") + tuple(str(l) for l in range(1, m.k + 1)) + SIGMA_I


def _symbols_for(ins: Instr) -> Tuple[str, ...]:
    """Instruction symbols that may follow a line carrying ``ins``."""
    ab = "ab"[ins.counter] if ins.op != "stop" else ""
    if ins.op == "inc":
        return (f"I_{ab}",)
    if ins.op == "dec":
        return (f"D_{ab}",)
    if ins.op == "ifz":
        return (f"Z_{ab}", f"Zbar_{ab}")
    return ()


def _next_line(m: TwoCounterMachine, line: int, x: str) -> int:
    ins = m.instr(line)
    if ins.op == "ifz":
        return ins.zero if x.startswith("Z_") else ins.nonzero
    return line + 1


def tcm_symbol(m: TwoCounterMachine, c: TcmConfiguration) -> str:
    ins = m.instr(c.line)
    if ins.op == "stop":
        raise ValueError("a configuration on the stop line has no encoding")
    if ins.op == "ifz":
        z = (c.z0, c.z1)[ins.counter]
        return _symbols_for(ins)[0 if z == 0 else 1]
    return _symbols_for(ins)[0]


def tcm_encode_config(c: TcmConfiguration, m: TwoCounterMachine) -> Tuple[str, ...]:
    """ℓ, then a^{z0} b^{z1}, then the instruction symbol."""
    if not 1 <= c.line <= m.k or c.z0 < 0 or c.z1 < 0:
        raise ValueError(f"invalid configuration {c}")
    return (str(c.line),) + ("a",) * c.z0 + ("b",) * c.z1 + (tcm_symbol(m, c),)


def tcm_encode_run(m: TwoCounterMachine, trace: Sequence[TcmConfiguration]) -> Tuple[str, ...]:
    return tuple(itertools.chain.from_iterable(tcm_encode_config(c, m) for c in trace))


def _decode(w: Sequence[str], m: TwoCounterMachine) -> Optional[Tuple[TcmConfiguration, str]]:
    w = list(w)
    if len(w) < 2 or not w[0].isdigit() or not 1 <= int(w[0]) <= m.k:
        return None
    line, x, u = int(w[0]), w[-1], w[1:-1]
    if x not in _symbols_for(m.instr(line)) or any(s not in ("a", "b") for s in u):
        return None
    return TcmConfiguration(line, u.count("a"), u.count("b")), x


def tcm_pair_correct(w: Sequence[str], w2: Sequence[str], m: TwoCounterMachine) -> bool:
    """Is w·w2 a correct step c ⊢ c'?

    Both words must have the shape ℓ u x with x fitting the instruction on
    line ℓ.  The first symbol must also carry the right test outcome for c;
    the outcome on the second word belongs to the next pair and is not
    looked at here.
    """
    d1, d2 = _decode(w, m), _decode(w2, m)
    if d1 is None or d2 is None:
        return False
    c, x = d1
    if tcm_symbol(m, c) != x:
        return False
    return tcm_step(m, c) == d2[0]


def _pair_constraint() -> sl.ConstraintSet:
    """Counters (a in u1, b in u1, a in u2, b in u2, code of x1)."""
    same_a, same_b = (1, 0, 1, 0, 0), (0, 1, 0, 1, 0)
    rows = {
        "I_a": ((0, 0, 1, 0), (same_a, same_b)),
        "I_b": ((0, 0, 0, 1), (same_a, same_b)),
        "D_a": ((1, 0, 0, 0), (same_a, same_b)),
        "D_b": ((0, 1, 0, 0), (same_a, same_b)),
        "Z_a": ((0, 0, 0, 0), (same_b,)),
        "Z_b": ((0, 0, 0, 0), (same_a,)),
        "Zbar_a": ((1, 0, 1, 0), (same_a, same_b)),
        "Zbar_b": ((0, 1, 0, 1), (same_a, same_b)),
    }
    comps = tuple(sl.LinearSet(base + (_CODE[x],), periods) for x, (base, periods) in rows.items())
    return sl.from_generators(sl.SemiLinearSet(5, comps))


def _pair_checker(m: TwoCounterMachine, skip_first: bool) -> OmegaPA:
    """Strong reset PA checking consecutive pairs of encoded configurations.

    State names: ``init`` reads c0 (which must be (1, 0, 0)); ``("u1", l)``
    and ``("u2", l)`` count the two counter blocks; ``("l2", l)`` expects the
    successor line; ``F`` is the accepting pair boundary.  With
    ``skip_first`` the first configuration is read without counting and
    ends in the non-accepting boundary ``P``.
    """
    alphabet = tcm_alphabet(m)
    k = m.k
    zero = (0,) * 5
    unit = {("u1", "a"): 0, ("u1", "b"): 1, ("u2", "a"): 2, ("u2", "b"): 3}
    ts: Dict[Tuple, Tuple] = {}
    states: List = ["init", "c0", "P", "F", "sink"]
    lines = range(1, k + 1)
    for l in lines:
        states += [("u1", l), ("l2", l), ("u2", l)]

    def add(p, letter, vec, q):
        ts[(p, letter)] = (vec, q)

    def vec_for(block, letter, code=0):
        v = [0] * 5
        if letter in "ab":
            v[unit[(block, letter)]] = 1
        v[4] = code
        return tuple(v)

    # c0 = (1, 0, 0): line 1 followed straight by its symbol
    add("init", "1", zero, "c0")
    for x in _symbols_for(m.instr(1)):
        if skip_first:
            add("c0", x, zero, "P")
        else:
            add("c0", x, (0, 0, 0, 0, _CODE[x]), ("l2", _next_line(m, 1, x)))
    for start in ("P", "F"):
        for l in lines:
            add(start, str(l), zero, ("u1", l))
    for l in lines:
        for s in "ab":
            add(("u1", l), s, vec_for("u1", s), ("u1", l))
            add(("u2", l), s, vec_for("u2", s), ("u2", l))
        for x in _symbols_for(m.instr(l)):
            add(("u1", l), x, (0, 0, 0, 0, _CODE[x]), ("l2", _next_line(m, l, x)))
            add(("u2", l), x, zero, "F")
        add(("l2", l), str(l), zero, ("u2", l))
    out = []
    for p in states:
        for letter in alphabet:
            vec, q = ts.get((p, letter), (zero, "sink"))
            out.append(Transition(p, letter, vec, q))
    a = make_omega(states, alphabet, "init", out, {"F"}, _pair_constraint(), "strongreset", dim=5)
    check(a)
    return a


def tcm_encode_sr_pair(m: TwoCounterMachine) -> Tuple[OmegaPA, OmegaPA]:
    """(A1, A2): A1 checks pairs (c_2i, c_2i+1), A2 checks (c_2i+1, c_2i+2)."""
    if not is_guarded(m):
        raise ValueError("the machine must have guarded decrements (see tcm_guard_decrements)")
    return _pair_checker(m, skip_first=False), _pair_checker(m, skip_first=True)
