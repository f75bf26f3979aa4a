"""Command-line front end (``parikh <verb> ...``).

Exit codes: 0 yes/accept, 1 no (with a witness when there is one),
2 unknown, 3 input or usage problems.  Output is deterministic.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import corpus
from . import semilinear as sl
from . import decisions as dec
from . import reductions as red
from . import transforms as tf
from . import zvass as zv
from .automata import (
    AutomatonError,
    FinitePA,
    LassoWord,
    MullerAutomaton,
    OmegaPA,
    accepts_finite,
    complete_with_sink,
    is_complete,
    is_deterministic,
    validate,
)
from .lasso import UnsupportedCondition, decompose, limit_vector
from .presburger import PresburgerError
from .textio import TextFormatError, parse_automaton, parse_word, render_automaton, render_witness

EXIT = {dec.YES: 0, dec.NO: 1, dec.UNKNOWN: 2}
EXIT_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- loading


def load(spec: str, autocomplete: bool = False):
    """A path, or ``example:<name>`` for a built-in automaton."""
    if spec.startswith("example:"):
        name = spec[len("example:"):]
        if name not in corpus.EXAMPLES:
            raise UsageError(f"unknown example {name!r}; known: {', '.join(sorted(corpus.EXAMPLES))}")
        a = corpus.EXAMPLES[name]()
    else:
        try:
            text = Path(spec).read_text()
        except OSError as e:
            raise UsageError(f"cannot read {spec}: {e.strerror}") from None
        try:
            a = parse_automaton(text)
        except TextFormatError as e:
            raise TextFormatError(f"{spec}: {e}") from None
    if autocomplete and isinstance(a, (OmegaPA, FinitePA)) and not is_complete(a):
        a = complete_with_sink(a)
    return a


def _one(args, attr: str = "automaton"):
    src = getattr(args, attr, None)
    if getattr(args, "example", None):
        src = "example:" + args.example
    if not src:
        raise UsageError(f"--{attr} (or --example) is required")
    return load(src, args.autocomplete)


def _omega(a, what: str) -> OmegaPA:
    if not isinstance(a, OmegaPA):
        raise UsageError(f"{what} must be an ω-automaton (header with condition=...)")
    return a


# ---------------------------------------------------------------- output


def _emit(out: List[str], v: dec.Verdict, alphabet) -> int:
    out.append(v.answer.upper())
    if v.witness is not None:
        out.append(render_witness(v.witness, alphabet))
    if v.bound_note:
        out.append(f"note {v.bound_note}")
    return EXIT[v.answer]


# ---------------------------------------------------------------- verbs


def cmd_member(args, out: List[str]) -> int:
    a = _one(args)
    if isinstance(a, MullerAutomaton):
        stem, period = parse_word(args.stem, a.alphabet), parse_word(args.period or "", a.alphabet)
        ok = tf.muller_accepts(a, stem, period)
    elif isinstance(a, FinitePA):
        if args.word is None:
            raise UsageError("finite-word automata take --word")
        ok = accepts_finite(a, parse_word(args.word, a.alphabet))
    else:
        if args.period is None:
            raise UsageError("ω-automata take --stem and --period")
        w = LassoWord(parse_word(args.stem, a.alphabet), parse_word(args.period, a.alphabet))
        if not w.period:
            raise UsageError("the period must be nonempty")
        ok = dec.member(a, w)
        if args.decompose and is_deterministic(a):
            d = decompose(a, w)
            if d is None:
                out.append("run blocks")
            else:
                out.append(f"stem-transitions {d.stem_len} cycle-transitions {d.cycle_len}")
                out.append("cycle-states " + " ".join(str(q) for q in d.cycle_states()))
                out.append("delta " + ",".join(str(x) for x in d.delta))
                if a.condition == "limit":
                    out.append("limit " + sl.fmt_vector(limit_vector(d)))
    out.insert(0, "ACCEPT" if ok else "REJECT")
    return 0 if ok else 1


def cmd_empty(args, out: List[str]) -> int:
    a = _one(args)
    if isinstance(a, FinitePA):
        v = dec.empty_finite(a)
    else:
        a = _omega(a, "the input")
        try:
            v = dec.empty_omega(a)
        except UnsupportedCondition as e:
            v = dec.Verdict(dec.UNKNOWN, bound_note=str(e))
    # the question is "empty?": the engine's yes/no already means exactly that
    return _emit(out, v, a.alphabet)


def _universal(a, args) -> dec.Verdict:
    b = args.search_bound
    if isinstance(a, FinitePA):
        return dec.universal_det_finite(a)
    if is_deterministic(a):
        if a.condition == "limit":
            return dec.universal_det_limit(a)
        if a.condition == "strongreset" and is_complete(a):
            return dec.universal_det_sr(a)
        if a.dim == 0 and a.condition == "buchi":
            v = dec.empty_omega(tf.complement_det_buchi(a))
            return dec._strip_run(v)
    return dec.universal_refute_bounded(a, b, b)


def cmd_universal(args, out: List[str]) -> int:
    a = _one(args)
    if isinstance(a, MullerAutomaton):
        a = tf.muller_to_det_limit(a)
    return _emit(out, _universal(a, args), a.alphabet)


def _pair(args):
    a1 = _omega(load(args.left, args.autocomplete), "--left")
    a2 = _omega(load(args.right, args.autocomplete), "--right")
    if set(a1.alphabet) != set(a2.alphabet):
        raise UsageError("the two automata use different alphabets")
    return a1, a2


def cmd_include(args, out: List[str]) -> int:
    a1, a2 = _pair(args)
    b = args.search_bound
    v = dec.mc_universal(a1, a2, args.max_segments, b, b)
    return _emit(out, v, a1.alphabet)


def _intersect(a1: OmegaPA, a2: OmegaPA, args) -> dec.Verdict:
    b = args.search_bound
    if a1.condition == a2.condition == "limit" and is_deterministic(a1) and is_deterministic(a2):
        return dec.intersect_empty_limit(a1, a2)
    for x, y in ((a1, a2), (a2, a1)):
        if x.condition == "strongreset" and is_deterministic(x):
            if y.dim == 0 and y.condition == "buchi":
                return dec.intersect_empty_sr_buchi(x, y)
            if y.condition == "reachability" and is_deterministic(y) and is_complete(y):
                return dec.intersect_empty_sr_reach(x, y, args.max_segments)
    for x, y in ((a1, a2), (a2, a1)):
        if dec.is_kripke(x) and y.condition not in ("safety", "cobuchi"):
            v = dec.mc_existential(x, y, b, b)
            return dec.Verdict({dec.YES: dec.NO, dec.NO: dec.YES}.get(v.answer, v.answer), v.witness, v.bound_note)
    return dec.intersect_empty_buchi_pa_bounded(a1, a2, b, b)


def cmd_intersect(args, out: List[str]) -> int:
    a1, a2 = _pair(args)
    return _emit(out, _intersect(a1, a2, args), a1.alphabet)


def cmd_modelcheck(args, out: List[str]) -> int:
    system = _omega(load(args.system, args.autocomplete), "--system")
    spec = _omega(load(args.spec, args.autocomplete), "--spec")
    if set(system.alphabet) != set(spec.alphabet):
        raise UsageError("system and specification use different alphabets")
    b = args.search_bound
    if args.mode == "existential":
        v = dec.mc_existential(system, spec, b, b)
    else:
        v = dec.mc_universal(system, spec, args.max_segments, b, b)
    return _emit(out, v, system.alphabet)


def cmd_transform(args, out: List[str]) -> int:
    a = load(args.input, args.autocomplete)
    if args.op in tf.BINARY_OPS:
        if not args.in2:
            raise UsageError(f"{args.op} needs --in2")
        b = load(args.in2, args.autocomplete)
        res = tf.BINARY_OPS[args.op](a, b)
    elif args.op in tf.OPS:
        res = tf.OPS[args.op](a)
    else:
        raise UsageError(f"unknown op {args.op!r}; known: {', '.join(sorted({**tf.OPS, **tf.BINARY_OPS}))}")
    text = render_automaton(res)
    rep = tf.report(args.op, a, res).lines() if args.report else []
    if args.out:
        Path(args.out).write_text(text)
        out.extend(rep)
    else:
        out.append(text.rstrip("\n"))
        out.extend("# " + ln for ln in rep)
    return 0


def _write_or_print(text: str, path: Optional[str], out: List[str]) -> None:
    if path:
        Path(path).write_text(text)
        out.append(f"wrote {path}")
    else:
        out.append(text.rstrip("\n"))


def cmd_reduce(args, out: List[str]) -> int:
    if args.kind == "intexpr":
        if not (args.e1 and args.e2):
            raise UsageError("reduce intexpr needs --e1 and --e2")
        try:
            e1, e2 = red.parse_intexpr(args.e1), red.parse_intexpr(args.e2)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if args.problem == "universality":
            pa = red.universality_instance(e1, e2)
            v = dec.universal_det_finite(pa) if args.decide else None
        else:
            pa = red.irrelevance_instance(e1, e2)
            v = dec.irrelevance_det(pa) if args.decide else None
        _write_or_print(render_automaton(pa), args.out, out)
        return _emit(out, v, pa.alphabet) if v is not None else 0
    if args.kind == "partition":
        if not args.set:
            raise UsageError("reduce partition needs --set")
        try:
            m = [int(x) for x in args.set.split(",") if x.strip()]
            a = red.partition_to_limit(m)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _write_or_print(render_automaton(a), args.out, out)
        return _emit(out, dec.universal_det_limit(a), a.alphabet) if args.decide else 0
    # tcm
    if not args.input:
        raise UsageError("reduce tcm needs --in")
    try:
        m = red.parse_tcm(Path(args.input).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {args.input}: {e.strerror}") from None
    except ValueError as e:
        raise TextFormatError(f"{args.input}: {e}") from None
    if not red.is_guarded(m):
        g = red.tcm_guard_decrements(m)
        out.append(f"guarded: {g.k - m.k} zero-tests inserted")
        m = g
    a1, a2 = red.tcm_encode_sr_pair(m)
    prefix = args.out_prefix or "enc_"
    for name, a in (("A1", a1), ("A2", a2)):
        path = f"{prefix}{name}.pa"
        Path(path).write_text(render_automaton(a))
        out.append(f"wrote {path}")
    return 0


def cmd_zreach(args, out: List[str]) -> int:
    try:
        v = zv.parse(Path(args.input).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {args.input}: {e.strerror}") from None
    except zv.ZVassError as e:
        raise TextFormatError(f"{args.input}: {e}") from None
    try:
        src, dst = zv.parse_config(args.src, v.dim), zv.parse_config(args.dst, v.dim)
    except (zv.ZVassError, ValueError) as e:
        raise UsageError(str(e)) from None
    r = zv.reach_bounded(v, src, dst, args.max_tests)
    if r.reachable:
        out.append("YES")
        for t in r.run:
            out.append(f"step {t.src} {','.join(map(str, t.vec)) or '()'} test={t.level} {t.dst}")
        return 0
    exact = not any(t.level >= 1 for t in v.transitions)
    out.append("NO" if exact else "UNKNOWN")
    if not exact:
        out.append(f"note {r.bound_note}")
    return 1 if exact else 2


def cmd_validate(args, out: List[str]) -> int:
    # parse_automaton already validates; reaching here means the file is fine
    a = _one(args)
    problems = [] if isinstance(a, MullerAutomaton) else validate(a)
    out.extend(problems or ["OK"])
    facts = []
    if not isinstance(a, MullerAutomaton):
        facts.append("deterministic" if is_deterministic(a) else "nondeterministic")
        facts.append("complete" if is_complete(a) else "incomplete")
    if facts:
        out.append(" ".join(facts))
    return 1 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-segments", type=int, default=None, metavar="K",
                        help="reset segments explored by bounded strong-reset searches (default 2)")
    common.add_argument("--search-bound", type=int, default=4, metavar="N",
                        help="stem and period bound of lasso searches")
    common.add_argument("--autocomplete", action="store_true",
                        help="complete incomplete automata with a rejecting sink instead of refusing")
    common.add_argument("--report", action="store_true", help="print the transform report")
    common.add_argument("--example", default=None, help="use a built-in automaton")

    p = _Parser(prog="parikh", description="Parikh automata on infinite words.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    s = sub.add_parser("member", parents=[common], help="lasso (or finite word) membership")
    s.add_argument("--automaton")
    s.add_argument("--stem", default="")
    s.add_argument("--period")
    s.add_argument("--word")
    s.add_argument("--decompose", action="store_true")
    s.set_defaults(run=cmd_member)

    for verb, fn, text in (("empty", cmd_empty, "is the language empty?"),
                           ("universal", cmd_universal, "does the automaton accept every word?"),
                           ("validate", cmd_validate, "check an automaton file")):
        s = sub.add_parser(verb, parents=[common], help=text)
        s.add_argument("--automaton", help="automaton file or example:<name>")
        s.set_defaults(run=fn)

    for verb, fn, text in (("include", cmd_include, "is L(left) contained in L(right)?"),
                           ("intersect-empty", cmd_intersect, "is L(left) ∩ L(right) empty?")):
        s = sub.add_parser(verb, parents=[common], help=text)
        s.add_argument("--left", required=True)
        s.add_argument("--right", required=True)
        s.set_defaults(run=fn)

    s = sub.add_parser("modelcheck", parents=[common], help="check a system against a specification")
    s.add_argument("--system", required=True)
    s.add_argument("--spec", required=True)
    s.add_argument("--mode", choices=("existential", "universal"), default="universal")
    s.set_defaults(run=cmd_modelcheck)

    s = sub.add_parser("transform", parents=[common], help="apply a model translation or closure construction")
    s.add_argument("--op", required=True, help="construction name, e.g. sr-complement")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--in2")
    s.add_argument("--out")
    s.set_defaults(run=cmd_transform)

    s = sub.add_parser("reduce", parents=[common], help="build hardness-reduction instances")
    s.add_argument("kind", choices=("intexpr", "partition", "tcm"))
    s.add_argument("--e1")
    s.add_argument("--e2")
    s.add_argument("--kind", dest="problem", choices=("irrelevance", "universality"), default="irrelevance")
    s.add_argument("--set")
    s.add_argument("--in", dest="input")
    s.add_argument("--out")
    s.add_argument("--out-prefix")
    s.add_argument("--decide", action="store_true", help="also run the decision procedure")
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("zreach", parents=[common], help="bounded reachability in a ℤ-VASS with nested zero tests")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--src", required=True)
    s.add_argument("--dst", required=True)
    s.add_argument("--max-tests", type=int, default=4, help="zero-tests allowed on the run (default 4)")
    s.set_defaults(run=cmd_zreach)
    return p


def run(argv: Sequence[str]) -> tuple:
    """(exit code, stdout text, stderr text) without touching the real streams."""
    out: List[str] = []
    try:
        args = build_parser().parse_args(list(argv))
        if not getattr(args, "verb", None):
            raise UsageError("missing verb (member, empty, universal, include, intersect-empty, "
                             "modelcheck, transform, reduce, zreach, validate)")
        if args.search_bound < 0 or (args.max_segments is not None and args.max_segments < 1):
            raise UsageError("bounds must be positive")
        code = args.run(args, out)
    except (UnsupportedCondition, PresburgerError) as e:
        # UnsupportedCondition is an AutomatonError, so it must be caught first
        return EXIT["unknown"], "UNKNOWN\n", f"note: {e}\n"
    except (UsageError, TextFormatError, AutomatonError, zv.ZVassError) as e:
        hint = ""
        if isinstance(e, AutomatonError) and "complete" in str(e) and "refusing" not in str(e):
            hint = " (pass --autocomplete to add a rejecting sink)"
        return EXIT_ERROR, "", f"error: {e}{hint}\n"
    text = "\n".join(out) + "\n" if out else ""
    return code, text, ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
