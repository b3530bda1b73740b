"""
No perfect rule of radius 1 or 2
================================

Forced transitions leave a single radius-1 candidate and a small family of
radius-2 candidates; each one is then refuted by a concrete configuration.
"""
import logging

from parity_ca import r2_cycle_tables, r2_search, radius1_eliminate

logging.basicConfig(level=logging.INFO, format="   %(message)s")

print("== radius 1 ==")
for report in radius1_eliminate():
    print(report.line())

print("== feasible pre-image cycles, radius 2 ==")
for line in r2_cycle_tables().lines():
    print("  ", line)

for prime_only in (False, True):
    print(f"== radius-2 search, prime sizes only: {prime_only} ==")
    summary = r2_search(prime_only=prime_only)
    for line in summary.lines()[:3]:
        print(line)
    print("   ...")
    print(summary.lines()[-1])
    sizes = sorted({c.counterexample[0] for c in summary.candidates})
    print("   counterexample sizes used:", sizes)
