"""A short walk through the library on the built-in example automata.

    python demos/tour.py
"""

from parikh import corpus, lasso
from parikh import decisions as D
from parikh import transforms as T
from parikh.automata import LassoWord
from parikh.textio import render_witness


def show(title, verdict, alphabet="ab"):
    line = f"{title:<48} {verdict.answer.upper()}"
    if verdict.witness is not None:
        line += "   " + render_witness(verdict.witness, alphabet)
    if verdict.bound_note:
        line += f"   ({verdict.bound_note})"
    print(line)


fig1 = corpus.fig1()
print("membership in the fig1 reach-reg automaton")
for u, v in [("", "c"), ("ab", "c"), ("a", "c"), ("aa", "bc")]:
    w = LassoWord(u, v)
    print(f"  {u or 'ε'}·({v})^ω  ->  {'accept' if lasso.accepts(fig1, w) else 'reject'}")

blocks = corpus.anbn_blocks()
print()
show("{aⁿbⁿ}^ω (strong reset) empty?", D.empty_omega(blocks))
show("{aⁿbⁿ}^ω universal?", D.universal_det_sr(blocks))
show("{aⁿbⁿ}^ω ∩ inf-a empty?", D.intersect_empty_sr_buchi(blocks, corpus.inf_many()))
show("{aⁿbⁿ}^ω ⊆ Σ^ω?", D.include_det_sr(blocks, corpus.universal_sr()))
show("Σ^ω ⊆ {aⁿbⁿ}^ω?", D.include_det_sr(corpus.universal_sr(), blocks))

limit = corpus.anbn_c_limit()
print()
show("aⁿbⁿc^ω (limit) universal?", D.universal_det_limit(limit), "abc")
comp = T.limit_complement(limit)
w = LassoWord("aab", "c")
print(f"aab·c^ω in A: {lasso.accepts(limit, w)}, in complement: {lasso.accepts(comp, w)}")

print()
c = T.sr_complement(blocks)
for line in T.report("sr-complement", blocks, c).lines():
    print(line)
