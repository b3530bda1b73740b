"""
The radius-4 parity rule
========================

Compile the rule from its wildcard patterns, print its rule number and run it
on a few small lattices.
"""
import numpy as np

from parity_ca import (Configuration, bfo_explicit, bfo_minimized, classify,
                       compile_patterns, evolve, wolfram_number)
from parity_ca.render import to_ascii

print("== patterns ==")
for p in bfo_explicit():
    print("  ", p)

rule = compile_patterns(bfo_minimized(), 4)
same = np.array_equal(rule.table, compile_patterns(bfo_explicit(), 4).table)
print("compact and explicit forms agree:", same)
print("rule number:", wolfram_number(rule))

print("== a single 1 on nine cells ==")
seed = Configuration.from_string("000000001")
print(classify(rule, seed))

# one odd and one even seed on 15 cells
for text in ("000101110010101", "000101110010100"):
    c = Configuration.from_string(text)
    out = classify(rule, c)
    print(f"{text}  ones={c.count_ones():2d}  ->  {out}")

print("== space-time diagram, odd parity ==")
print(to_ascii(evolve(rule, Configuration.from_string("000101110010101"), 20)))
