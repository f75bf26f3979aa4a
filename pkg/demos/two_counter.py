"""Encode a two-counter machine as a pair of strong reset automata.

A common accepted lasso of the pair is an infinite computation.  The machine
below loops forever on line 1, so its one-configuration lasso is accepted by
both automata; a machine that halts has no such lasso.

    python demos/two_counter.py
"""

from parikh import lasso
from parikh import reductions as R
from parikh.automata import LassoWord
from parikh.textio import render_word

looping = R.parse_tcm("ifz 0 1 1\nstop\n")
halting = R.tcm_guard_decrements(R.parse_tcm("inc 0\ninc 0\ndec 0\ndec 0\nstop\n"))

print("guarded halting machine:")
print(R.dump_tcm(halting))
trace, done = R.tcm_run(halting, 50)
print("run:", " ".join(f"({c.line},{c.z0},{c.z1})" for c in trace), "halts" if done else "")

a1, a2 = R.tcm_encode_sr_pair(looping)
w = LassoWord((), ("1", "Z_a"))
alphabet = R.tcm_alphabet(looping)
print()
print(f"looping machine, lasso ({render_word(w.period, alphabet)})^ω:",
      "A1", lasso.accepts(a1, w), "A2", lasso.accepts(a2, w))

# The six configurations before stop pair up cleanly for A1, but A2 also
# checks the wrap from the last configuration back to the first, which is not
# a machine step.
b1, b2 = R.tcm_encode_sr_pair(halting)
enc = R.tcm_encode_run(halting, trace[:-1])
print("halting machine, its run repeated as a lasso:",
      "A1", lasso.accepts(b1, LassoWord((), enc)), "A2", lasso.accepts(b2, LassoWord((), enc)))
