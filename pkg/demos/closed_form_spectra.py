"""
Closed-form spectra as a sanity check
=====================================

Three families with known eigenvalues: the unit Dirichlet string
(lambda_n = n^2 pi^2), a constant potential shift (adds q exactly),
and a density r = 4 (quarter-scales everything).
"""

import math

from slprime import compute_spectrum, constant, problem, unit_problem

PI2 = math.pi**2

cases = [
    ("unit string", unit_problem(), lambda n: n * n * PI2),
    ("q = 50 shift", problem(constant(1.0), constant(50.0), constant(1.0)),
     lambda n: n * n * PI2 + 50.0),
    ("r = 4 density", problem(constant(1.0), constant(0.0), constant(4.0)),
     lambda n: n * n * PI2 / 4.0),
]

for name, prob, exact in cases:
    spec = compute_spectrum(prob, 8)
    print(f"\n{name}")
    print(f"{'n':>3} {'computed':>18} {'exact':>18} {'rel err':>10}")
    for ev in spec.eigenvalues:
        e = exact(ev.index)
        print(f"{ev.index:>3} {ev.value:>18.10f} {e:>18.10f} {abs(ev.value - e) / e:>10.2e}")
