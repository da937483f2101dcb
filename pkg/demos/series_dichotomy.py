"""Divergent over primes, convergent over any quadratic spectrum.

With exponent 1/2 + eps (here eps = 1/4) the sum over primes keeps growing
like N^{1/4} while the sum over a model spectrum c n^2 is squeezed under an
analytic tail bound.  One series diverges, the other converges: no sequence
can do both, which is the arithmetic heart of the impossibility.
"""

import math

from slprime import partial_sum_primes, partial_sum_spectrum

EPS = 0.25

print(f"sum p_n^-(1/2+{EPS}) -- divergent:")
for m, s in partial_sum_primes(EPS, 10**6):
    print(f"    N = {m:>9,}   S = {s:12.6f}")

print(f"\nsum (pi^2 n^2)^-(1/2+{EPS}) -- convergent:")
rows = partial_sum_spectrum(math.pi**2, EPS, 10**6)
for m, s, tail in rows:
    print(f"    N = {m:>9,}   S = {s:12.6f}   tail bound {tail:.6f}")

first, last = rows[0], rows[-1]
print(f"\ntotal increment past N = {first[0]:,}: {last[1] - first[1]:.6f}"
      f"  (analytic bound {first[2]:.6f})")
