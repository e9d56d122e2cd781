"""Phase-space portraits and Wigner negativity.

The conditioned states are non-Gaussian: their Wigner functions dip
negative, with W(0) = +-2/pi at zero loss depending on the parity of m.
Losses wash the negativity out but do not remove it at moderate eta.
The independent Fock-space oracle reproduces every value.

Run: python demos/wigner_functions.py
"""

import numpy as np

from mssvs import CircuitParams, wigner, wigner_grid, wigner_quadrature
from mssvs.fock_oracle import oracle_wigner, run_pipeline


def main():
    r, T = 0.7, 0.9
    print("Wigner value at the origin (2/pi = {:.6f}):".format(2 / np.pi))
    for m in (1, 2, 3):
        for eta in (0.0, 0.1):
            params = CircuitParams(r, eta, eta, T, m)
            print(f"  m = {m}, eta = {eta}: W(0,0) = {wigner(params, 0, 0).w:+.6f}")

    print("\nNegativity of the m = 1 state over [-3, 3]^2:")
    for eta in (0.0, 0.1):
        params = CircuitParams(r, eta, eta, T, 1)
        grid = wigner_grid(params, (-3, 3), (-3, 3), 61)
        deepest = min(grid, key=lambda p: p.w)
        state = run_pipeline(params, 40).state
        check = oracle_wigner(state, deepest.x, deepest.y).w
        print(
            f"  eta = {eta}: min W = {deepest.w:+.6f} at "
            f"(x, y) = ({deepest.x:+.2f}, {deepest.y:+.2f}); oracle {check:+.6f}"
        )

    print("\nCross-section along y = 0 for m = 1, eta = 0.1:")
    params = CircuitParams(r, 0.1, 0.1, T, 1)
    for x in np.linspace(-3, 3, 13):
        w = wigner(params, float(x), 0.0).w
        offset = int((w + 0.3) * 50)
        print(f"  x = {x:+5.2f}  W = {w:+.5f}  " + " " * max(offset, 0) + "*")

    grid = wigner_grid(params, (-5, 5), (-5, 5), 201)
    print(f"\nNormalization over the beta plane: {wigner_quadrature(grid, 201):.6f}")


if __name__ == "__main__":
    main()
