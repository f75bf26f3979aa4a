"""Small named automata used by the demos, the CLI `--example` flag and the tests.

Every builder returns a fresh, validated object.  States are short strings so
that rendered witnesses and text dumps stay readable.
"""

from __future__ import annotations

from typing import Callable, Dict

from . import semilinear as sl
from .automata import MullerAutomaton, OmegaPA, buchi_automaton, check, make_omega

A = (1, 0)
B = (0, 1)
Z2 = (0, 0)


def fig1(condition: str = "reachreg") -> OmegaPA:
    """Counts a's and b's; c moves between q0 and the accepting q1.

    As a reach-reg PA it recognizes words with a balanced prefix ending in q1
    and infinitely many c's.
    """
    ts = [
        ("q0", "a", A, "q0"),
        ("q0", "b", B, "q0"),
        ("q0", "c", Z2, "q1"),
        ("q1", "c", Z2, "q1"),
        ("q1", "a", A, "q0"),
        ("q1", "b", B, "q0"),
    ]
    a = make_omega(["q0", "q1"], "abc", "q0", ts, {"q1"}, sl.linear_set(Z2, [(1, 1)]), condition)
    check(a)
    return a


def anbn_blocks() -> OmegaPA:
    """Deterministic strong reset PA for {a^n b^n | n > 0}^ω.

    A deterministic automaton cannot see the end of a block, so the accepting
    state f is entered on the first a of each block instead.  A segment then
    reads the rest of one block plus the first a of the next, which has the
    same a/b balance as the block itself.  The very first a carries 0, making
    the opening segment (0,0).
    """
    ts = [
        ("q0", "a", Z2, "f"),
        ("q0", "b", Z2, "dead"),
        ("f", "a", A, "ra"),
        ("f", "b", B, "rb"),
        ("ra", "a", A, "ra"),
        ("ra", "b", B, "rb"),
        ("rb", "b", B, "rb"),
        ("rb", "a", A, "f"),
        ("dead", "a", Z2, "dead"),
        ("dead", "b", Z2, "dead"),
    ]
    a = make_omega(["q0", "f", "ra", "rb", "dead"], "ab", "q0", ts, {"f"},
                   sl.linear_set(Z2, [(1, 1)]), "strongreset")
    check(a)
    return a


def anbn_prefix() -> OmegaPA:
    """Deterministic reachability PA for {a^n b^n | n ≥ 1}·{a,b}^ω."""
    ts = [
        ("q0", "a", A, "ra"),
        ("q0", "b", Z2, "dead"),
        ("ra", "a", A, "ra"),
        ("ra", "b", B, "rb"),
        ("rb", "b", B, "rb"),
        ("rb", "a", Z2, "done"),
        ("done", "a", Z2, "done"),
        ("done", "b", Z2, "done"),
        ("dead", "a", Z2, "dead"),
        ("dead", "b", Z2, "dead"),
    ]
    a = make_omega(["q0", "ra", "rb", "done", "dead"], "ab", "q0", ts, {"rb"},
                   sl.linear_set((1, 1), [(1, 1)]), "reachability")
    check(a)
    return a


def balanced(condition: str = "buchi", ratio: int = 1, alphabet: str = "ab") -> OmegaPA:
    """One state counting a's and b's; C = {(n, ratio·n)}.

    With condition buchi this is L_{a=b} (ratio 1) or L_{2a=b} (ratio 2).
    Letters other than a and b carry 0.
    """
    ts = []
    for l in alphabet:
        ts.append(("s", l, A if l == "a" else B if l == "b" else Z2, "s"))
    a = make_omega(["s"], alphabet, "s", ts, {"s"}, sl.linear_set(Z2, [(1, ratio)]), condition)
    check(a)
    return a


def inf_many(letter: str = "a", alphabet: str = "ab") -> OmegaPA:
    """Dimension-0 Büchi automaton for "infinitely many `letter`"."""
    ts = []
    for p in ("n", "y"):
        for l in alphabet:
            ts.append((p, l, "y" if l == letter else "n"))
    a = buchi_automaton(["n", "y"], alphabet, "n", ts, {"y"})
    check(a)
    return a


def only(letter: str, alphabet: str = "ab") -> OmegaPA:
    """Büchi automaton for letter^ω (incomplete: other letters block)."""
    a = buchi_automaton(["s"], alphabet, "s", [("s", letter, "s")], {"s"})
    check(a)
    return a


def universal_sr(alphabet: str = "ab") -> OmegaPA:
    """One accepting state, all loops, C = ℕ: accepts every word."""
    ts = [("s", l, (1,), "s") for l in alphabet]
    a = make_omega(["s"], alphabet, "s", ts, {"s"}, sl.universal_nat(1), "strongreset")
    check(a)
    return a


def anbn_c_limit() -> OmegaPA:
    """Deterministic limit PA for {a^n b^n c^ω | n > 0}."""
    ts = [
        ("q0", "a", A, "ra"),
        ("q0", "b", Z2, "dead"),
        ("q0", "c", Z2, "dead"),
        ("ra", "a", A, "ra"),
        ("ra", "b", B, "rb"),
        ("ra", "c", Z2, "dead"),
        ("rb", "b", B, "rb"),
        ("rb", "a", Z2, "dead"),
        ("rb", "c", Z2, "rc"),
        ("rc", "c", Z2, "rc"),
        ("rc", "a", Z2, "dead"),
        ("rc", "b", Z2, "dead"),
        ("dead", "a", Z2, "dead"),
        ("dead", "b", Z2, "dead"),
        ("dead", "c", Z2, "dead"),
    ]
    a = make_omega(["q0", "ra", "rb", "rc", "dead"], "abc", "q0", ts, {"rc"},
                   sl.linear_set((1, 1), [(1, 1)]), "limit")
    check(a)
    return a


def muller_inf_a() -> MullerAutomaton:
    """Two-state deterministic Muller automaton for "infinitely many a"."""
    ts = (("n", "a", "y"), ("n", "b", "n"), ("y", "a", "y"), ("y", "b", "n"))
    return MullerAutomaton(("n", "y"), ("a", "b"), "n", ts,
                           (frozenset({"y"}), frozenset({"n", "y"})))


EXAMPLES: Dict[str, Callable[[], object]] = {
    "fig1": fig1,
    "anbn-blocks": anbn_blocks,
    "anbn-prefix": anbn_prefix,
    "a-eq-b": balanced,
    "2a-eq-b": lambda: balanced(ratio=2),
    "inf-a": inf_many,
    "a-omega": lambda: only("a"),
    "b-omega": lambda: only("b"),
    "universal-sr": universal_sr,
    "anbn-c-limit": anbn_c_limit,
}
