"""How often does the herald fire?

Maps the success probability of conditioning on m detected photons over
the loss plane (eta1, eta2) and over the beam-splitter transmissivity.
The probability collapses to zero whenever either channel is fully lossy
or the input carries no squeezing.

Run: python demos/success_probability_map.py
"""

import numpy as np

from mssvs import CircuitParams, success_probability


def loss_plane(m: int, r: float = 0.5, T: float = 0.97, steps: int = 11):
    etas = np.linspace(0.0, 1.0, steps)
    grid = np.array(
        [
            [success_probability(CircuitParams(r, e1, e2, T, m)) for e2 in etas]
            for e1 in etas
        ]
    )
    return etas, grid


def main():
    print("Success probability p_d of heralding m photons (r = 0.5, T = 0.97)")
    for m in (1, 2, 3):
        etas, grid = loss_plane(m)
        print(f"\nm = {m}: rows eta1, columns eta2 in {etas[0]:.1f}..{etas[-1]:.1f}")
        header = "eta1\\eta2 " + " ".join(f"{e:7.1f}" for e in etas[::2])
        print(header)
        for i in range(0, len(etas), 2):
            cells = " ".join(f"{grid[i, j]:7.1e}" for j in range(0, len(etas), 2))
            print(f"{etas[i]:9.1f} {cells}")
        print(f"max p_d = {grid.max():.3e} at zero loss; edges eta = 1 give 0")

    print("\nTransmissivity dependence at eta1 = eta2 = 0.02, r = 0.5:")
    for m in (1, 2, 3):
        best_T, best = max(
            ((T, success_probability(CircuitParams(0.5, 0.02, 0.02, T, m)))
             for T in np.linspace(0.05, 0.99, 48)),
            key=lambda item: item[1],
        )
        print(f"  m = {m}: p_d peaks near T = {best_T:.2f} at {best:.3e}")
    print("\nFor CSV sweeps of the same maps use: mssvs sweep <spec> -o out.csv")


if __name__ == "__main__":
    main()
