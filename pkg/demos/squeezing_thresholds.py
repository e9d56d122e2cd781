"""When does the conditioned state still beat the vacuum noise?

Plain squeezed vacuum squeezes the P quadrature for any r > 0. After
subtracting m photons the conditioned state needs the input squeezing to
exceed a threshold r_c before Var(P) drops below 1/2 again, except for
m = 2 which squeezes everywhere. Losses shift the thresholds.

Run: python demos/squeezing_thresholds.py
"""

import numpy as np

from mssvs import CircuitParams, squeezing_threshold_scan, variances


def variance_curve(m: int, eta: float, T: float = 0.9):
    rs = np.linspace(0.05, 1.5, 30)
    return rs, [variances(CircuitParams(r, eta, eta, T, m)).var_p for r in rs]


def main():
    T = 0.9
    print(f"Squeezing thresholds at T = {T} (Var(P) crosses 1/2):")
    for m in (1, 2, 3):
        for eta in (0.0, 0.1):
            scan = squeezing_threshold_scan(m, T, eta, eta)
            if scan.r_c is None:
                print(f"  m = {m}, eta = {eta}: {scan.status}")
            else:
                print(f"  m = {m}, eta = {eta}: r_c = {scan.r_c:.6f}")

    print("\nVar(P) versus r for m = 1 (columns: lossless, eta = 0.1):")
    rs, lossless = variance_curve(1, 0.0)
    _, lossy = variance_curve(1, 0.1)
    print("      r   Var(P)      Var(P) lossy")
    for r, a, b in zip(rs[::3], lossless[::3], lossy[::3]):
        marker = "  <- squeezed" if min(a, b) < 0.5 else ""
        print(f"  {r:5.2f}   {a:9.6f}   {b:9.6f}{marker}")
    print("\nVacuum level is 0.5; values beneath it certify squeezing.")


if __name__ == "__main__":
    main()
