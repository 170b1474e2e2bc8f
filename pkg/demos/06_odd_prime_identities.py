"""Commutator identities at odd primes, checked against their presentations.

For p odd the analogous group uses alpha = 1 + p^m * ell with relators
A^(p^(3m)) = B^(p^(3m)) = 1.  No order claim is made for these groups:
the coset count is reported as-is, and only the three commutator
identities are judged.
"""

from macforge import OddPrimeParams, oddp_commutator, oddp_report
from macforge.crosscheck import oddp_table

params = OddPrimeParams(p=3, m=1, ell=1)
table = oddp_table(params)
print(f"p=3, m=1, ell=1: alpha = {params.alpha}, chi = {params.chi}, "
      f"coset count {table.n}")

for case, n, t in [("CA", 1, 1), ("AB", 1, 1), ("AB", 2, 1)]:
    rhs, ok = oddp_commutator(params, case, n, t, table)
    word = " ".join(f"{'ABC'[g]}^{e}" for g, e in rhs if e)
    print(f"  [{case[0]}^{n}, {case[1]}^{t}] = {word or '1'}   oracle match: {ok}")

print("\nfull sweep |n|, |t| <= 8 for p = 5, ell = 2:")
rep = oddp_report(OddPrimeParams(p=5, m=1, ell=2), rng=8)
print(rep.to_text())

try:
    OddPrimeParams(p=3, m=1, ell=2)
except ValueError as exc:
    print("\nhypothesis guard: ", exc)
