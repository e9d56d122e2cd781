"""Kernel tests: derivatives of exp(quadratic) against independent references."""

import cmath
import math

import numpy as np
import pytest

from mssvs.errors import CapacityError
from mssvs.genfunc import (
    ParameterizedExponent,
    QuadraticExponent,
    derivative_in_parameters,
    extract_derivative,
    taylor_coefficient_box,
)

from symbolic_oracle import symbolic_derivative


def random_exponent(rng, n_vars, with_linear=True, with_constant=True):
    a = rng.uniform(-1, 1, (n_vars, n_vars)) + 1j * rng.uniform(-1, 1, (n_vars, n_vars))
    a = a + a.T
    b = np.zeros(n_vars, dtype=complex)
    if with_linear:
        b = rng.uniform(-1, 1, n_vars) + 1j * rng.uniform(-1, 1, n_vars)
    c = 0.0
    if with_constant:
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    return QuadraticExponent(a, b, c)


class TestTrivialValues:
    def test_zero_exponent(self):
        exponent = QuadraticExponent(np.zeros((2, 2)), np.zeros(2))
        assert extract_derivative(exponent, (0, 0)) == 1.0

    def test_half_square(self):
        exponent = QuadraticExponent([[1.0]], [0.0])
        assert extract_derivative(exponent, (2,)) == pytest.approx(1.0)

    @pytest.mark.parametrize("m", [0, 1, 2, 3, 5, 8])
    def test_cross_term_gives_factorial(self, m):
        exponent = QuadraticExponent([[0, 1], [1, 0]], [0, 0])
        assert extract_derivative(exponent, (m, m)) == pytest.approx(math.factorial(m))

    def test_linear_term(self):
        exponent = QuadraticExponent([[1.0]], [0.7 + 0.2j])
        assert extract_derivative(exponent, (1,)) == pytest.approx(0.7 + 0.2j)

    def test_constant_multiplies(self):
        exponent = QuadraticExponent([[1.0]], [0.4], 0.0)
        shifted = exponent.shifted_constant(0.3 - 0.2j)
        ratio = extract_derivative(shifted, (3,)) / extract_derivative(exponent, (3,))
        assert ratio == pytest.approx(cmath.exp(0.3 - 0.2j), rel=1e-13)


class TestOracleEquivalence:
    def test_three_variable_point(self):
        rng = np.random.default_rng(11)
        exponent = random_exponent(rng, 3)
        got = extract_derivative(exponent, (2, 1, 1))
        want = symbolic_derivative(exponent, (2, 1, 1))
        assert got == pytest.approx(want, rel=1e-12)

    def test_random_sample(self):
        # acceptance criterion: 200 random exponents, n_vars <= 3, order <= 6
        rng = np.random.default_rng(2024)
        for _ in range(200):
            n_vars = int(rng.integers(1, 4))
            exponent = random_exponent(rng, n_vars)
            orders = tuple(int(k) for k in rng.integers(0, 4, n_vars))
            while sum(orders) > 6:
                orders = tuple(int(k) for k in rng.integers(0, 4, n_vars))
            got = extract_derivative(exponent, orders)
            want = symbolic_derivative(exponent, orders)
            assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


class TestProperties:
    def test_permutation_symmetry(self):
        rng = np.random.default_rng(5)
        exponent = random_exponent(rng, 4)
        orders = (3, 1, 2, 0)
        perm = rng.permutation(4)
        permuted = QuadraticExponent(
            exponent.a[np.ix_(perm, perm)], exponent.b[perm], exponent.c
        )
        orders_p = tuple(orders[i] for i in perm)
        assert extract_derivative(permuted, orders_p) == pytest.approx(
            extract_derivative(exponent, orders), rel=1e-12
        )

    def test_odd_parity_vanishes(self):
        rng = np.random.default_rng(6)
        exponent = random_exponent(rng, 3, with_linear=False)
        for orders in [(1, 0, 0), (1, 1, 1), (3, 0, 2), (0, 1, 2)]:
            assert extract_derivative(exponent, orders) == 0.0

    def test_scaling(self):
        rng = np.random.default_rng(7)
        exponent = random_exponent(rng, 2)
        scale = 0.83
        scaled = QuadraticExponent(
            exponent.a * scale**2, exponent.b * scale, exponent.c
        )
        orders = (2, 3)
        assert extract_derivative(scaled, orders) == pytest.approx(
            extract_derivative(exponent, orders) * scale ** sum(orders), rel=1e-12
        )

    def test_box_matches_pointwise(self):
        rng = np.random.default_rng(8)
        exponent = random_exponent(rng, 2)
        box = taylor_coefficient_box(exponent, (3, 4))
        for i in range(4):
            for j in range(5):
                derivative = extract_derivative(exponent, (i, j))
                expected = (
                    box[i, j]
                    * math.factorial(i)
                    * math.factorial(j)
                    * cmath.exp(exponent.c)
                )
                assert derivative == pytest.approx(expected, rel=1e-12, abs=1e-14)


class TestContracts:
    def test_dimension_mismatch(self):
        exponent = QuadraticExponent(np.zeros((2, 2)), np.zeros(2))
        with pytest.raises(ValueError):
            extract_derivative(exponent, (1,))

    def test_negative_order(self):
        exponent = QuadraticExponent(np.zeros((2, 2)), np.zeros(2))
        with pytest.raises(ValueError):
            extract_derivative(exponent, (1, -1))

    def test_capacity(self):
        exponent = QuadraticExponent([[0, 1], [1, 0]], [0, 0])
        with pytest.raises(CapacityError) as info:
            extract_derivative(exponent, (40, 40))
        assert info.value.requested == 80
        # raising the cap makes the same call valid
        value = extract_derivative(exponent, (40, 40), max_total_order=80)
        assert value == pytest.approx(math.factorial(40), rel=1e-10)

    def test_asymmetric_matrix_rejected(self):
        with pytest.raises(ValueError):
            QuadraticExponent([[0.0, 1.0], [0.2, 0.0]], [0.0, 0.0])


class TestParameterized:
    def build_bilinear(self):
        # exponent mu * p2 + nu * p1 over variables (mu, nu), parameters (p1, p2)
        return ParameterizedExponent(
            a=np.zeros((2, 2)),
            b_base=np.zeros(2),
            b_linear=[[0.0, 1.0], [1.0, 0.0]],
        )

    def test_cross_term(self):
        family = self.build_bilinear()
        assert derivative_in_parameters(family, (1, 1), [1.0, 1.0]) == pytest.approx(1.0)

    def test_zero_parameters_reduce(self):
        rng = np.random.default_rng(9)
        base = random_exponent(rng, 2)
        family = ParameterizedExponent(
            a=base.a,
            b_base=base.b,
            b_linear=rng.uniform(-1, 1, (2, 2)),
            c_base=base.c,
            c_linear=rng.uniform(-1, 1, 2),
        )
        got = derivative_in_parameters(family, (2, 1), [0.0, 0.0])
        assert got == pytest.approx(extract_derivative(base, (2, 1)), rel=1e-13)

    def test_quadratic_constant(self):
        # c_quadratic [[0,1],[1,0]] contributes p1 * p2 to the constant
        family = ParameterizedExponent(
            a=np.zeros((1, 1)),
            b_base=[1.0],
            b_linear=np.zeros((1, 2)),
            c_quadratic=[[0.0, 1.0], [1.0, 0.0]],
        )
        value = derivative_in_parameters(family, (1,), [2.0, 0.5])
        assert value == pytest.approx(cmath.exp(1.0), rel=1e-13)

    def test_wrong_parameter_count(self):
        family = self.build_bilinear()
        with pytest.raises(ValueError):
            derivative_in_parameters(family, (1, 1), [1.0])
