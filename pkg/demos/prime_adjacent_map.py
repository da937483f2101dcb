"""The composed eigenvalue problem whose spectrum sits near the primes.

Feeding the squared map Lambda(lambda) = (pi lambda / log lambda)^2 into the
q = 0 string turns the n-th linear eigenvalue mu_n = n^2 pi^2 into the root
of lambda / log lambda = n.  That root grows like n log n -- the same first
two terms as the n-th prime -- so column lambda_n shadows column p_n without
ever matching it.  Indices 1 and 2 have no root at all: the map's minimum on
(1, inf) is e, so lambda / log lambda = n needs n >= 3.
"""

import argparse
import math

from slprime import NonlinearProblem, constant, nonlinear_spectrum, nth_prime


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=30)
    args = ap.parse_args()

    rows = nonlinear_spectrum(NonlinearProblem(q=constant(0.0)), args.n_max)
    print(f"{'n':>4} {'lambda_n':>14} {'p_n':>8} {'lambda-p':>10} {'lam/(n ln n)':>13}")
    for row in rows:
        p = nth_prime(row.index)
        if row.lam is None:
            print(f"{row.index:>4} {'absent':>14} {p:>8}")
            continue
        ngl = row.lam / (row.index * math.log(row.index)) if row.index > 1 else float("nan")
        print(f"{row.index:>4} {row.lam:>14.4f} {p:>8} {row.lam - p:>10.4f} {ngl:>13.6f}")


if __name__ == "__main__":
    main()
