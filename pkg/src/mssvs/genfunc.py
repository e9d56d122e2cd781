"""Derivatives at the origin of exponentials of quadratic forms.

Every observable in this package reduces to evaluating

    d^(k1+...+kn) / dx1^k1 ... dxn^kn   exp(E(x)) |_(x=0)

for an exponent E(x) = (1/2) x^T A x + b^T x + c with complex, symmetric
A. The evaluation expands exp(E - c) as a multivariate power series
truncated at the requested orders, reads off one Taylor coefficient and
rescales by the factorials, which is exact up to floating-point rounding.

The series is accumulated in a dense coefficient box bounded per variable
by the requested order (any monomial exceeding an order in one variable
can never contribute to the target coefficient), so memory stays at
prod(k_i + 1) complex entries. The exponent itself is carried as a sparse
monomial map; the exponents arising here have at most ten monomials.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError

# Multi-index of derivative orders, one entry per formal variable.
MultiIndex = tuple[int, ...]

DEFAULT_MAX_TOTAL_ORDER = 64

_SYMMETRY_RTOL = 1e-9


def _as_complex_array(value, shape, name: str) -> np.ndarray:
    arr = np.array(value, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class QuadraticExponent:
    """Exponent (1/2) x^T A x + b^T x + c over ``n_vars`` formal variables.

    ``a`` is symmetrized on construction; grossly asymmetric input is
    rejected rather than silently averaged away.
    """

    a: np.ndarray
    b: np.ndarray
    c: complex = 0.0

    def __post_init__(self):
        a = np.atleast_2d(np.array(self.a, dtype=complex))
        b = np.atleast_1d(np.array(self.b, dtype=complex))
        n = b.shape[0]
        if a.shape != (n, n):
            raise ValueError(
                f"quadratic part must be {n}x{n} to match the linear part, "
                f"got {a.shape}"
            )
        scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
        if a.size and float(np.max(np.abs(a - a.T))) > _SYMMETRY_RTOL * scale:
            raise ValueError("quadratic coefficient matrix is not symmetric")
        a = (a + a.T) / 2.0
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", complex(self.c))

    @property
    def n_vars(self) -> int:
        return self.b.shape[0]

    def monomials(self) -> dict[MultiIndex, complex]:
        """Sparse map from exponent multi-index to coefficient of E - c."""
        n = self.n_vars
        monos: dict[MultiIndex, complex] = {}

        def put(powers, coeff):
            if coeff != 0:
                monos[tuple(powers)] = monos.get(tuple(powers), 0.0) + coeff

        for i in range(n):
            powers = [0] * n
            powers[i] = 1
            put(powers, self.b[i])
            powers[i] = 2
            put(powers, self.a[i, i] / 2.0)
            for j in range(i + 1, n):
                powers = [0] * n
                powers[i] = 1
                powers[j] = 1
                put(powers, self.a[i, j])
        return monos

    def shifted_constant(self, delta: complex) -> "QuadraticExponent":
        return QuadraticExponent(self.a, self.b, self.c + delta)


def _validate_orders(orders, n_vars: int) -> MultiIndex:
    idx = tuple(int(k) for k in orders)
    if len(idx) != n_vars:
        raise ValueError(
            f"derivative multi-index has {len(idx)} entries for an exponent "
            f"with {n_vars} variables"
        )
    if any(k < 0 for k in idx):
        raise ValueError(f"derivative orders must be non-negative, got {idx}")
    return idx


def _series_box(monos: dict[MultiIndex, complex], caps: MultiIndex) -> np.ndarray:
    """Taylor coefficients of exp(P) up to per-variable caps, as a dense box."""
    shape = tuple(k + 1 for k in caps)
    total = sum(caps)
    # Monomials that already exceed a cap in some variable cannot reach
    # any retained coefficient through further multiplication.
    inside = [
        (expo, coeff)
        for expo, coeff in monos.items()
        if all(e <= k for e, k in zip(expo, caps)) and sum(expo) > 0
    ]
    acc = np.zeros(shape, dtype=complex)
    acc[(0,) * len(caps)] = 1.0
    if not inside:
        return acc
    term = acc.copy()
    for j in range(1, total + 1):
        nxt = np.zeros(shape, dtype=complex)
        for expo, coeff in inside:
            dst = tuple(slice(e, s) for e, s in zip(expo, shape))
            src = tuple(slice(0, s - e) for e, s in zip(expo, shape))
            nxt[dst] += coeff * term[src]
        nxt /= j
        if not nxt.any():
            break
        acc += nxt
        term = nxt
    return acc


def extract_derivative(
    exponent: QuadraticExponent,
    orders: MultiIndex,
    max_total_order: int = DEFAULT_MAX_TOTAL_ORDER,
) -> complex:
    """Derivative of exp(E(x)) at x = 0 for the given multi-index of orders.

    Returns the exact mixed partial derivative (the constant part of the
    exponent enters as the factor exp(c)). Orders whose total exceeds
    ``max_total_order`` raise :class:`CapacityError` so the caller can
    raise the cap explicitly instead of receiving a truncated value.
    """
    idx = _validate_orders(orders, exponent.n_vars)
    total = sum(idx)
    if total > max_total_order:
        raise CapacityError(total, max_total_order)
    coeff = complex(_series_box(exponent.monomials(), idx)[idx])
    scale = 1.0
    for k in idx:
        scale *= math.factorial(k)
    return coeff * scale * cmath.exp(exponent.c)


def taylor_coefficient_box(
    exponent: QuadraticExponent,
    caps: MultiIndex,
    max_total_order: int = DEFAULT_MAX_TOTAL_ORDER,
) -> np.ndarray:
    """All Taylor coefficients of exp(E - c) up to per-variable caps.

    Bulk companion of :func:`extract_derivative`: entry ``[k1, ..., kn]``
    is the series coefficient of x^k, so the corresponding derivative at
    the origin is that entry times prod(k_i!) times exp(c). Useful when
    many derivative orders of one exponent are needed, e.g. a whole
    photon-number distribution.
    """
    idx = _validate_orders(caps, exponent.n_vars)
    total = sum(idx)
    if total > max_total_order:
        raise CapacityError(total, max_total_order)
    return _series_box(exponent.monomials(), idx)


@dataclass(frozen=True)
class ParameterizedExponent:
    """Family of exponents whose linear and constant parts depend on parameters.

    With parameter vector p the member exponent is

        (1/2) x^T A x + (b_base + b_linear p)^T x
            + c_base + c_linear . p + (1/2) p^T c_quadratic p

    which covers exponents whose x-linear coefficients are affine in the
    parameters and whose constant collects parameter bilinears.
    """

    a: np.ndarray
    b_base: np.ndarray
    b_linear: np.ndarray
    c_base: complex = 0.0
    c_linear: np.ndarray | None = None
    c_quadratic: np.ndarray | None = None
    _n_params: int = field(init=False, repr=False, default=0)

    def __post_init__(self):
        b_base = np.atleast_1d(np.array(self.b_base, dtype=complex))
        n = b_base.shape[0]
        b_linear = np.array(self.b_linear, dtype=complex)
        if b_linear.ndim != 2 or b_linear.shape[0] != n:
            raise ValueError(
                f"parameter coupling matrix must have {n} rows, got shape "
                f"{b_linear.shape}"
            )
        p = b_linear.shape[1]
        a = _as_complex_array(self.a, (n, n), "quadratic part")
        c_linear = (
            _as_complex_array(self.c_linear, (p,), "constant linear part")
            if self.c_linear is not None
            else None
        )
        c_quadratic = (
            _as_complex_array(self.c_quadratic, (p, p), "constant quadratic part")
            if self.c_quadratic is not None
            else None
        )
        b_base.setflags(write=False)
        b_linear.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b_base", b_base)
        object.__setattr__(self, "b_linear", b_linear)
        object.__setattr__(self, "c_base", complex(self.c_base))
        object.__setattr__(self, "c_linear", c_linear)
        object.__setattr__(self, "c_quadratic", c_quadratic)
        object.__setattr__(self, "_n_params", p)

    @property
    def n_params(self) -> int:
        return self._n_params

    def at(self, params) -> QuadraticExponent:
        """Instantiate the family member for concrete parameter values."""
        p = np.atleast_1d(np.array(params, dtype=complex))
        if p.shape != (self.n_params,):
            raise ValueError(
                f"expected {self.n_params} parameters, got shape {p.shape}"
            )
        b = self.b_base + self.b_linear @ p
        c = self.c_base
        if self.c_linear is not None:
            c = c + self.c_linear @ p
        if self.c_quadratic is not None:
            c = c + (p @ self.c_quadratic @ p) / 2.0
        return QuadraticExponent(self.a, b, c)


def derivative_in_parameters(
    family: ParameterizedExponent,
    orders: MultiIndex,
    params,
    max_total_order: int = DEFAULT_MAX_TOTAL_ORDER,
) -> complex:
    """Derivative at the origin of the family member at ``params``.

    The derivative acts on the formal variables only; the parameters enter
    through the instantiated linear and constant parts.
    """
    return extract_derivative(family.at(params), orders, max_total_order)
