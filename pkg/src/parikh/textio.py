"""Plain-text formats for automata and words.

An automaton file looks like::

    pa dim=2 condition=reachreg
    alphabet a b c
    states q0 q1
    initial q0
    accepting q1
    trans q0 a 1,0 q0
    trans q0 c 0,0 q1
    semilinear
    linear base=0,0 periods=1,1

The constraint block is either ``semilinear`` followed by ``linear`` lines or
a single ``formula`` line.  A header of just ``pa dim=<d>`` (no condition)
gives a finite-word PA.  Muller automata use a ``muller`` header, plain
``trans p a q`` lines and ``accset q1,q2;q3`` lines (each ``;`` separates
one set of the table).  ``#`` starts a comment.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple, Union

from . import semilinear as sl
from .automata import (
    AutomatonError,
    FinitePA,
    LassoWord,
    MullerAutomaton,
    OmegaPA,
    Transition,
    Witness,
    rename_states,
    validate,
)

Automaton = Union[OmegaPA, FinitePA, MullerAutomaton]


class TextFormatError(ValueError):
    def __init__(self, msg: str, line: int = 0):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


def _clean(text: str) -> List[Tuple[int, str]]:
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        ln = raw.split("#", 1)[0].strip()
        if ln:
            out.append((n, ln))
    return out


def _header(n: int, ln: str) -> dict:
    fields = {}
    for kv in ln.split()[1:]:
        if "=" not in kv:
            raise TextFormatError(f"bad header field {kv!r}", n)
        k, v = kv.split("=", 1)
        fields[k] = v
    return fields


def parse_automaton(text: str) -> Automaton:
    """Parse either format; the result is validated before it is returned."""
    lines = _clean(text)
    if not lines:
        raise TextFormatError("empty automaton file")
    n0, head = lines[0]
    kind = head.split()[0]
    if kind == "muller":
        return _parse_muller(lines)
    if kind != "pa":
        raise TextFormatError(f"unknown header {kind!r} (want 'pa' or 'muller')", n0)
    fields = _header(n0, head)
    try:
        dim = int(fields["dim"])
    except (KeyError, ValueError):
        raise TextFormatError("header needs dim=<d>", n0) from None
    cond = fields.get("condition")
    alphabet: List[str] = []
    states: List[str] = []
    initial = None
    accepting: List[str] = []
    trans: List[Transition] = []
    constraint_lines: List[Tuple[int, str]] = []
    for n, ln in lines[1:]:
        word, *rest = ln.split()
        if constraint_lines or word in ("semilinear", "linear", "formula"):
            constraint_lines.append((n, ln))
        elif word == "alphabet":
            alphabet += rest
        elif word == "states":
            states += rest
        elif word == "initial":
            if len(rest) != 1:
                raise TextFormatError("initial takes exactly one state", n)
            initial = rest[0]
        elif word == "accepting":
            accepting += rest
        elif word == "trans":
            if len(rest) != 4:
                raise TextFormatError("trans wants: trans <p> <letter> <v1,..,vd> <q>", n)
            p, a, v, q = rest
            try:
                vec = sl.parse_vector(v)
            except ValueError as e:
                raise TextFormatError(f"bad vector {v!r}: {e}", n) from None
            if any(x == sl.INF for x in vec):
                raise TextFormatError("transition labels must be finite", n)
            trans.append(Transition(p, a, vec, q))
        else:
            raise TextFormatError(f"unknown directive {word!r}", n)
    if initial is None:
        raise TextFormatError("missing 'initial' line")
    if constraint_lines:
        try:
            c = sl.parse_constraint([ln for _, ln in constraint_lines], dim)
        except (ValueError, IndexError) as e:
            raise TextFormatError(f"constraint: {e}", constraint_lines[0][0]) from None
    else:
        c = sl.universal_nat(dim)
    pa = FinitePA(tuple(states), tuple(alphabet), initial, tuple(trans), frozenset(accepting), c, dim)
    try:
        a = OmegaPA(pa, cond) if cond is not None else pa
    except AutomatonError as e:
        raise TextFormatError(str(e), n0) from None
    problems = validate(a)
    if problems:
        raise TextFormatError("invalid automaton: " + "; ".join(problems))
    return a


def _parse_muller(lines) -> MullerAutomaton:
    alphabet: List[str] = []
    states: List[str] = []
    initial = None
    trans = []
    table = []
    for n, ln in lines[1:]:
        word, *rest = ln.split()
        if word == "alphabet":
            alphabet += rest
        elif word == "states":
            states += rest
        elif word == "initial":
            initial = rest[0] if len(rest) == 1 else None
            if initial is None:
                raise TextFormatError("initial takes exactly one state", n)
        elif word == "trans":
            if len(rest) != 3:
                raise TextFormatError("muller trans wants: trans <p> <letter> <q>", n)
            trans.append(tuple(rest))
        elif word == "accset":
            for part in " ".join(rest).split(";"):
                table.append(frozenset(s.strip() for s in part.split(",") if s.strip()))
        else:
            raise TextFormatError(f"unknown directive {word!r}", n)
    if initial is None:
        raise TextFormatError("missing 'initial' line")
    for p, a, q in trans:
        if p not in states or q not in states or a not in alphabet:
            raise TextFormatError(f"transition {p} {a} {q} uses undeclared names")
    for s in table:
        if not s <= set(states):
            raise TextFormatError(f"accepting set {sorted(s)} uses unknown states")
    return MullerAutomaton(tuple(states), tuple(alphabet), initial, tuple(trans), tuple(table))


def _printable(a) -> bool:
    bad = set(" \t#,;=")
    return all(isinstance(q, str) and q and not bad & set(q) for q in a.states)


def render_automaton(a: Automaton) -> str:
    """Inverse of :func:`parse_automaton`; non-string states are renamed s0, s1, ..."""
    if isinstance(a, MullerAutomaton):
        out = ["muller", "alphabet " + " ".join(a.alphabet), "states " + " ".join(a.states),
               f"initial {a.initial}"]
        out += [f"trans {p} {l} {q}" for p, l, q in a.transitions]
        out += ["accset " + ",".join(sorted(s)) for s in a.table]
        return "\n".join(out) + "\n"
    if not _printable(a):
        a = rename_states(a, {q: f"s{i}" for i, q in enumerate(a.states)})
    pa = a.pa if isinstance(a, OmegaPA) else a
    head = f"pa dim={pa.dim}"
    if isinstance(a, OmegaPA):
        head += f" condition={a.condition}"
    out = [head, "alphabet " + " ".join(pa.alphabet), "states " + " ".join(pa.states),
           f"initial {pa.initial}",
           "accepting " + " ".join(q for q in pa.states if q in pa.accepting)]
    for t in pa.transitions:
        out.append(f"trans {t.src} {t.letter} {sl.fmt_vector(t.vec) or '()'} {t.dst}")
    out += sl.render_constraint(pa.constraint)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- words


def _separated(alphabet: Sequence[str]) -> bool:
    return any(len(l) != 1 for l in alphabet)


def render_word(w: Sequence[str], alphabet: Sequence[str] = ()) -> str:
    """Letters are concatenated; multi-character alphabets use '.' between letters."""
    if _separated(alphabet) or any(len(l) != 1 for l in w):
        return ".".join(w)
    return "".join(w)


def parse_word(s: str, alphabet: Sequence[str]) -> Tuple[str, ...]:
    s = s.strip()
    if not s:
        return ()
    if _separated(alphabet):
        w = tuple(s.split("."))
    else:
        w = tuple(s)
    unknown = [l for l in w if l not in alphabet]
    if unknown:
        raise TextFormatError(f"letters {unknown} are not in the alphabet")
    return w


def render_witness(w: Witness, alphabet: Sequence[str] = ()) -> str:
    if w.kind == "lasso":
        return f"witness stem={render_word(w.lasso.stem, alphabet)} period={render_word(w.lasso.period, alphabet)}"
    return f"witness word={render_word(w.word, alphabet)}"


def parse_witness(line: str, alphabet: Sequence[str]) -> Union[LassoWord, Tuple[str, ...]]:
    line = line.strip()
    if not line.startswith("witness "):
        raise TextFormatError(f"not a witness line: {line!r}")
    fields = dict(kv.split("=", 1) for kv in line.split()[1:])
    if "word" in fields:
        return parse_word(fields["word"], alphabet)
    return LassoWord(parse_word(fields.get("stem", ""), alphabet), parse_word(fields["period"], alphabet))
