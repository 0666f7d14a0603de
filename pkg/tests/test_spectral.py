"""Wave function identities, symmetries, local parameters, residues."""

import cmath
import math

import numpy as np
import pytest

from quadcr import (
    SpectralData,
    check_central_symmetry,
    check_reality_condition,
    dual_wave,
    half_circle_order,
    leading_coeff,
    leading_coeff_dual,
    local_parameter,
    local_parameter_dual,
    marked_point_density,
    residue_pairing,
    wave,
    wave_jet,
)
from quadcr.errors import (
    NotMOrderedError,
    PoleError,
    PreconditionError,
    ResidueOrderError,
    SpectralDataError,
)

from conftest import contour_residue, random_half_circle_data, random_lattice_vector, random_point

INF = complex("inf")


class TestSpectralData:
    def test_rejects_zero_and_coincident(self):
        with pytest.raises(SpectralDataError):
            SpectralData((0, 1j))
        with pytest.raises(SpectralDataError):
            SpectralData((1 + 1j, 1 + 1j))

    def test_rejects_antipodal_and_dependent(self):
        with pytest.raises(SpectralDataError):
            SpectralData((1 + 1j, -1 - 1j))
        with pytest.raises(SpectralDataError):
            SpectralData((1 + 1j, 2 + 2j))  # real multiple

    def test_circle_radius_checked(self):
        with pytest.raises(SpectralDataError):
            SpectralData((1, 2j), C=1.0)  # |2j| != 1
        data = SpectralData((1, 1j), C=1.0)
        assert data.tau_symmetric and data.sigma_symmetric

    def test_m_curve_ordered_flag(self):
        assert SpectralData(
            (cmath.exp(0.2j), cmath.exp(0.9j), cmath.exp(1.7j)), 1.0
        ).m_curve_ordered
        # orderable, but not with the identity numbering
        assert not SpectralData(
            (cmath.exp(0.9j), cmath.exp(0.2j), cmath.exp(1.7j)), 1.0
        ).m_curve_ordered

    def test_reflection_map(self):
        data = SpectralData((2.0, 2j), C=2.0)
        z = 0.5 + 0.25j
        assert abs(data.reflect(z) - 4.0 / z.conjugate()) < 1e-15
        on_circle = 2.0 * cmath.exp(0.3j)
        assert abs(data.reflect(on_circle) - on_circle) < 1e-14


class TestWave:
    def test_direct_product_value(self):
        # ((2+1)/(2-1))^1 * ((2+i)/(2-i))^0 = 3
        data = SpectralData((1, 1j))
        assert wave(data, (1, 0), 2.0) == 3.0

    def test_empty_exponent_is_one(self):
        data = SpectralData((1, 1j))
        assert wave(data, (0, 0), 0.123 + 4.5j) == 1.0

    def test_normalization_at_infinity(self):
        data = SpectralData((1, 1j))
        assert wave(data, (3, -2), INF) == 1.0

    def test_parity_at_zero_exact(self, rng):
        for _ in range(50):
            data = random_half_circle_data(rng, int(rng.integers(2, 6)))
            n = random_lattice_vector(rng, data.d, span=6)
            assert wave(data, n, 0.0) == (-1) ** (sum(n) % 2)

    def test_one_step_recurrence(self, rng):
        data = random_half_circle_data(rng, 3)
        n = (1, -2, 3)
        z = random_point(rng)
        for j in range(3):
            step = list(n)
            step[j] += 1
            ratio = (z + data.alpha[j]) / (z - data.alpha[j])
            got = wave(data, step, z) / wave(data, n, z)
            assert abs(got - ratio) < 1e-12 * abs(ratio)

    def test_pole_error_carries_order(self):
        data = SpectralData((1, 1j))
        with pytest.raises(PoleError) as err:
            wave(data, (2, 0), 1.0)
        assert err.value.order == 2
        # zero side evaluates cleanly
        assert wave(data, (2, 0), -1.0) == 0.0

    def test_dual_wave_is_reciprocal(self, rng):
        data = random_half_circle_data(rng, 4)
        n = random_lattice_vector(rng, 4)
        z = random_point(rng)
        assert abs(wave(data, n, z) * dual_wave(data, n, z) - 1) < 1e-12


class TestJets:
    def test_regular_point_jet(self):
        data = SpectralData((1, 1j))
        order, coeff = wave_jet(data, (1, 0), 2.0)
        assert order == 0 and coeff == 3.0

    def test_jet_matches_numeric_limit(self, rng):
        # Oracle: evaluate W(n; z)*(z - a)^{n_j} at a*(1+eps) and Richardson-
        # extrapolate; must match the jet coefficient at the pole.
        data = random_half_circle_data(rng, 3)
        n = (2, 1, -1)
        a = data.alpha[0]

        def probe(eps):
            z = a * (1 + eps)
            return wave(data, n, z) * (z - a) ** n[0]

        f1, f2 = probe(1e-6), probe(5e-7)
        extrapolated = 2 * f2 - f1
        order, coeff = wave_jet(data, n, a)
        assert order == -n[0]
        assert abs(extrapolated - coeff) < 1e-6 * abs(coeff)

    def test_jet_consistent_with_leading_coeff(self, rng):
        # r_j = jet coefficient times (dz/dt_j)|_0 ** order, with
        # dz/dt_j(0) = 2 i alpha_j / C.
        data = random_half_circle_data(rng, 4, C=1.7)
        n = random_lattice_vector(rng, 4)
        for j in range(1, 5):
            a = data.alpha[j - 1]
            order, coeff = wave_jet(data, n, a)
            jacobian = 2j * a / data.C
            want = coeff * jacobian**order
            got = leading_coeff(data, n, j)
            assert abs(got - want) <= 1e-10 * abs(want)


class TestCentralSymmetry:
    def test_report_small_on_random_data(self, rng):
        data = random_half_circle_data(rng, 4)
        rep = check_central_symmetry(data, (3, -1, 0, 2), 0.7 + 0.2j)
        assert rep.max_deviation <= 1e-12
        assert rep.ok

    def test_zero_vector_gives_zero_deviation(self):
        data = SpectralData((1, 1j))
        rep = check_central_symmetry(data, (0, 0), 0.3 + 0.1j)
        assert rep.components["inversion"] == 0.0
        assert rep.components["value_at_zero"] == 0.0

    def test_differential_residues(self):
        # Closed form: residues of -dz/(2z) at (infinity, 0) are (1/2, -1/2).
        from quadcr.spectral import omega_residues

        assert omega_residues() == (0.5, -0.5)
        data = SpectralData((1, 1j))
        rep = check_central_symmetry(data, (1, 1), 0.4 + 0.9j)
        assert rep.components["residue_at_zero"] <= 1e-13


class TestRealityCondition:
    def test_specific_point(self):
        data = SpectralData((cmath.exp(1j * math.pi / 5), cmath.exp(2j * math.pi / 5)), 1.0)
        rep = check_reality_condition(data, (2, 1), 0.3 + 0.4j)
        assert rep.max_deviation <= 1e-12

    def test_identity_randomized(self, rng):
        data = random_half_circle_data(rng, 3, C=0.8)
        for _ in range(100):
            n = random_lattice_vector(rng, 3)
            z = random_point(rng, 0.8)
            rep = check_reality_condition(data, n, z)
            assert rep.max_deviation <= 1e-12

    def test_on_circle_parity(self, rng):
        data = random_half_circle_data(rng, 3)
        for _ in range(50):
            theta = rng.uniform(0, 2 * math.pi)
            z = cmath.exp(1j * theta)
            if min(abs(z - a) for a in data.alpha) < 1e-2:
                continue
            if min(abs(z + a) for a in data.alpha) < 1e-2:
                continue
            n_even = (2, 0, 0)
            n_odd = (1, 0, 0)
            we = wave(data, n_even, z)
            wo = wave(data, n_odd, z)
            assert abs(we.imag) <= 1e-12 * abs(we)
            assert abs(wo.real) <= 1e-12 * abs(wo)

    def test_precondition(self):
        data = SpectralData((1, 2j))  # no C
        with pytest.raises(PreconditionError):
            check_reality_condition(data, (1, 0), 0.5)


class TestLocalParameter:
    def test_zero_at_marked_point(self):
        data = SpectralData((1, 1j), 1.0)
        assert local_parameter(data, 1, 1.0) == 0.0

    def test_real_on_circle_with_tangent_sign(self, rng):
        data = random_half_circle_data(rng, 3, C=1.3)
        theta_j = cmath.phase(data.alpha[1])
        for _ in range(40):
            theta = rng.uniform(0, 2 * math.pi)
            if abs(math.remainder(theta - theta_j - math.pi, 2 * math.pi)) < 1e-2:
                continue  # near the parameter's pole
            z = data.C * cmath.exp(1j * theta)
            t = local_parameter(data, 2, z)
            assert abs(t.imag) <= 1e-12 * max(abs(t), 1.0)
            expected_sign = math.copysign(1.0, math.tan((theta - theta_j) / 2))
            if abs(t.real) > 1e-9:
                assert math.copysign(1.0, t.real) == expected_sign

    def test_reflection_equivariance(self, rng):
        data = random_half_circle_data(rng, 3, C=0.9)
        for _ in range(50):
            z = random_point(rng, 0.9)
            lhs = local_parameter(data, 2, data.reflect(z))
            rhs = local_parameter(data, 2, z).conjugate()
            assert abs(lhs - rhs) <= 1e-14 * max(abs(rhs), 1.0)

    def test_pole_flagged(self):
        data = SpectralData((1, 1j), 1.0)
        with pytest.raises(PoleError):
            local_parameter(data, 1, -1.0)

    def test_dual_parameter_vanishes_at_antipode(self):
        data = SpectralData((1, 1j), 1.0)
        assert local_parameter_dual(data, 2, -1j) == 0.0


class TestLeadingCoefficients:
    def test_zero_vector(self):
        data = SpectralData((1, 1j), 1.0)
        assert leading_coeff(data, (0, 0), 1) == 1.0
        assert leading_coeff_dual(data, (0, 0), 1) == 1.0

    def test_explicit_small_case(self):
        data = SpectralData((cmath.exp(1j * math.pi / 6), cmath.exp(1j * math.pi / 3)), 1.0)
        r1 = leading_coeff(data, (1, 0), 1)
        r1p = leading_coeff_dual(data, (1, 0), 1)
        assert abs(r1 - (-1j)) < 1e-15
        assert abs(r1p - 1j) < 1e-15
        product = r1 * r1p
        assert abs(product.imag) < 1e-15 and product.real > 0

    def test_product_positive_when_component_nonzero(self, rng):
        for _ in range(300):
            d = int(rng.integers(2, 7))
            data = random_half_circle_data(rng, d, C=float(rng.uniform(0.5, 2.0)))
            n = random_lattice_vector(rng, d, span=5)
            for j in range(1, d + 1):
                if n[j - 1] == 0:
                    continue
                p = leading_coeff(data, n, j) * leading_coeff_dual(data, n, j)
                assert abs(p.imag) <= 1e-12 and p.real > 0

    def test_parity_law(self, rng):
        for _ in range(200):
            d = int(rng.integers(2, 6))
            data = random_half_circle_data(rng, d)
            n = random_lattice_vector(rng, d, span=5)
            for j in range(1, d + 1):
                r = leading_coeff(data, n, j)
                if sum(n) % 2 == 0:
                    assert abs(r.imag) <= 1e-12 * abs(r)
                else:
                    assert abs(r.real) <= 1e-12 * abs(r)


class TestResiduePairing:
    def test_neighbor_residue_is_minus_one(self, rng):
        data = random_half_circle_data(rng, 3, C=1.1)
        n = (1, -2, 0)
        n_p = (1, -1, 0)  # n_p = n + e_2
        got = residue_pairing(data, n_p, n, data.alpha[1])
        assert abs(got - (-1)) < 1e-14

    def test_neighbor_residues_at_fixed_points(self, rng):
        data = random_half_circle_data(rng, 3)
        n = (0, 2, -1)
        n_p = (0, 2, 0)
        assert residue_pairing(data, n_p, n, INF) == 0.5
        assert residue_pairing(data, n_p, n, 0.0) == 0.5

    def test_density_identity(self, rng):
        # -1/density(A_y) equals the leading-coefficient product of a
        # neighboring pair; both sides equal -iC.
        for _ in range(20):
            d = int(rng.integers(2, 6))
            C = float(rng.uniform(0.5, 2.0))
            data = random_half_circle_data(rng, d, C=C)
            n = random_lattice_vector(rng, d)
            y = int(rng.integers(1, d + 1))
            n_p = list(n)
            n_p[y - 1] += 1
            lhs = -1.0 / marked_point_density(data, y)
            rhs = leading_coeff(data, tuple(n_p), y) * leading_coeff_dual(data, n, y)
            assert abs(lhs - rhs) <= 1e-10 * abs(lhs)
            assert abs(lhs - (-1j * C)) <= 1e-12 * C

    def test_contour_oracle_general_pairs(self, rng):
        # Independent quadrature oracle around every recognized pole.
        for _ in range(10):
            d = int(rng.integers(2, 5))
            data = random_half_circle_data(rng, d, C=1.0)
            n_q = random_lattice_vector(rng, d, span=2)
            j = int(rng.integers(0, d))
            n_p = list(n_q)
            n_p[j] += 1
            n_p = tuple(n_p)
            at = data.alpha[j]
            closed = residue_pairing(data, n_p, n_q, at)
            numeric = contour_residue(data, n_p, n_q, at)
            assert abs(closed - numeric) <= 1e-10 * max(abs(closed), 1.0)
            closed0 = residue_pairing(data, n_p, n_q, 0.0)
            numeric0 = contour_residue(data, n_p, n_q, 0.0)
            assert abs(closed0 - numeric0) <= 1e-10

    def test_higher_order_pole_rejected(self):
        data = SpectralData((1, 1j), 1.0)
        with pytest.raises(ResidueOrderError) as err:
            residue_pairing(data, (2, 0), (0, 0), 1.0)
        assert err.value.order == 2
        with pytest.raises(ResidueOrderError):
            residue_pairing(data, (0, 0), (0, 0), 1.0)  # no pole at all

    def test_unrecognized_point(self):
        data = SpectralData((1, 1j), 1.0)
        with pytest.raises(PreconditionError):
            residue_pairing(data, (1, 0), (0, 0), 0.5 + 0.5j)


class TestHalfCircleOrder:
    def test_identity_when_sorted(self):
        alpha = (cmath.exp(1j * math.pi / 6), cmath.exp(1j * math.pi / 3),
                 cmath.exp(1j * math.pi / 2))
        assert half_circle_order(alpha) == (1, 2, 3)

    def test_swap_detected(self):
        alpha = (cmath.exp(1j * math.pi / 2), cmath.exp(1j * math.pi / 6))
        assert half_circle_order(alpha) == (2, 1)

    def test_spread_beyond_half_circle_rejected(self):
        # Three directions 0, 2pi/3, 4pi/3: no open half-circle holds all,
        # so some antipode separates two of the points.
        alpha = (1.0 + 0j, cmath.exp(2j * math.pi / 3), cmath.exp(4j * math.pi / 3))
        with pytest.raises(NotMOrderedError):
            half_circle_order(alpha)
