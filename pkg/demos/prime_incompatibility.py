"""Why no such problem has the primes as its spectrum.

Eigenvalues of a right-definite problem grow like n^2 while the n-th prime
grows like n log n, so the ratio p_n / lambda_n must collapse toward zero.
The report below tracks that collapse for the unit string and prints the
machine-checkable verdict.
"""

import argparse

from slprime import compute_spectrum, incompatibility_report, unit_problem


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=2000,
                    help="how many eigenvalues to compare against primes")
    args = ap.parse_args()

    spec = compute_spectrum(unit_problem(), args.n_max)
    report = incompatibility_report(spec, args.n_max)

    step = max(1, len(report.rows) // 10)
    print(f"{'n':>6} {'p_n':>10} {'lambda_n':>16} {'p_n/lambda_n':>13}")
    for n, lam, p, ratio in report.rows[::step]:
        print(f"{n:>6} {p:>10} {lam:>16.2f} {ratio:>13.6e}")
    print("verdict:", report.verdict)
    if report.note:
        print("note:", report.note)


if __name__ == "__main__":
    main()
