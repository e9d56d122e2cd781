"""Photon statistics of the conditioned states.

Squeezed vacuum holds only even photon numbers. Lossless subtraction of m
photons leaves purely odd (m odd) or purely even (m even) components;
any channel loss repopulates both parities.

Run: python demos/photon_number_distributions.py
"""

from mssvs import CircuitParams, pnd_vector, svs_pnd


def bar(p: float, scale: float = 60.0) -> str:
    return "#" * max(1, int(round(p * scale))) if p > 5e-3 else ("." if p > 1e-12 else "")


def show(title: str, values):
    print(f"\n{title}")
    for n, p in enumerate(values):
        print(f"  n={n:2d}  {p:10.6f}  {bar(p)}")


def main():
    r, T = 0.7, 0.9
    show(f"Squeezed vacuum, r = {r} (even components only)",
         [svs_pnd(r, n) for n in range(9)])

    for m in (1, 2):
        values = pnd_vector(CircuitParams(r, 0.0, 0.0, T, m), 8)
        show(f"{m}-photon subtraction, lossless (parity of n fixed to {m % 2})", values)

    values = pnd_vector(CircuitParams(r, 0.1, 0.1, T, 1), 8)
    show("1-photon subtraction with eta1 = eta2 = 0.1 (all n populated)", values)

    adaptive = pnd_vector(CircuitParams(r, 0.1, 0.1, T, 3))
    print(f"\nAdaptive tail: m = 3 lossy distribution kept {adaptive.size} bins, "
          f"total probability {adaptive.sum():.12f}")


if __name__ == "__main__":
    main()
