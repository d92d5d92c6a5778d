"""Symbol order checks, generating functions, scans, and eigenvalue probes."""

import numpy as np
import pytest

from wsld.coefficients import lubich_coeffs
from wsld.operators import assemble_left, weights2, wsld_scheme
from wsld.spectral import (
    EIGEN_MAX_DIM,
    definiteness_scan,
    default_x_grid,
    eigen_probe,
    gen_fn_combined,
    gen_fn_pair,
    symbol,
    symbol_deviation,
    symbol_order_slope,
)


class TestSymbol:
    def test_limit_at_zero_is_one(self):
        z = np.array([0.0, 0.1j, -0.1])
        w = symbol(4, 1.5, 0, z)
        assert w[0] == 1.0 + 0.0j
        assert abs(w[1] - 1.0) < 1e-3

    def test_deviation_rejects_zero(self):
        with pytest.raises(ValueError):
            symbol_deviation(3, 1.5, 0, 0.0)

    @pytest.mark.parametrize("nu", [3, 4, 5])
    @pytest.mark.parametrize("alpha", [1.1, 1.5, 1.8])
    def test_unshifted_slope_is_nu(self, nu, alpha):
        slope = symbol_order_slope(nu, alpha, 0)
        assert slope == pytest.approx(nu, abs=0.2)

    @pytest.mark.parametrize("nu", [3, 4, 5])
    def test_shifted_slope_is_one(self, nu):
        assert symbol_order_slope(nu, 1.5, 1) == pytest.approx(1.0, abs=0.2)

    def test_nu4_unshifted_fourth_order_bound(self):
        # |W(-it) - 1| / t^4 stays bounded along a refinement sequence
        t = np.array([0.2, 0.1, 0.05, 0.025])
        dev = np.abs(symbol_deviation(4, 1.5, 0, -1j * t))
        ratio = dev / t ** 4
        assert ratio.max() / ratio.min() < 2.0

    def test_cubic_error_coefficient_nu3(self):
        # shifted nu=3 symbol: W = 1 + z + z^2/2 + (2 - 3*alpha)/12 z^3 + ...
        alpha = 1.5
        t = np.array([0.2, 0.1, 0.05, 0.025])
        z = -1j * t
        est = (symbol_deviation(3, alpha, 1, z) - (z + z ** 2 / 2)) / z ** 3
        richardson = 2 * est[1:] - est[:-1]
        target = (2 - 3 * alpha) / 12
        assert richardson[-1].real == pytest.approx(target, abs=5e-4)
        assert abs(richardson[-1].imag) < 5e-4


class TestGeneratingFunctions:
    def test_zero_at_origin(self):
        for nu in (3, 4):
            assert gen_fn_pair(nu, 1.5, -1, 0.0) == pytest.approx(0.0, abs=1e-14)
            assert gen_fn_combined(nu, 1.5, None, 0.0) == pytest.approx(0.0, abs=1e-13)

    def test_even_in_x(self):
        x = np.linspace(0.1, np.pi, 40)
        for nu in (3, 4):
            np.testing.assert_allclose(gen_fn_pair(nu, 1.7, 2, x),
                                       gen_fn_pair(nu, 1.7, 2, -x), rtol=1e-13)

    def test_pair_rejects_q_equal_one(self):
        with pytest.raises(ValueError):
            gen_fn_pair(3, 1.5, 1, 0.5)

    def test_only_nu_3_and_4(self):
        with pytest.raises(ValueError):
            gen_fn_pair(5, 1.5, -1, 0.5)

    @pytest.mark.parametrize("nu,alpha,q,x", [
        (4, 1.5, -1, np.pi / 2),
        (3, 1.3, 2, 1.0),
        (4, 1.9, 3, 2.5),
    ])
    def test_closed_form_against_series_sum(self, nu, alpha, q, x):
        # independent oracle: Fourier series of the symmetric-part diagonals,
        # phi_k = w_1 l_{k+1-m} + w_q l_{k+q-m}, truncated far out
        kmax = 10_000
        m = max(1, abs(q))
        l = lubich_coeffs(nu, alpha, kmax + m)
        wp, wq = weights2(1, q)
        k = np.arange(kmax + 1)
        phi = np.zeros(kmax + 1)
        for w, shift in ((wp, 1), (wq, q)):
            idx = k + shift - m
            valid = idx >= 0
            phi[valid] += w * l[idx[valid]]
        series = float(np.sum(phi * np.cos((k - m) * x)))
        assert gen_fn_pair(nu, alpha, q, x) == pytest.approx(series, abs=1e-6)

    def test_combined_rejects_bad_tuples(self):
        with pytest.raises(ValueError):
            gen_fn_combined(3, 1.5, (1, -1, 1, 2), 0.5)
        with pytest.raises(ValueError):
            gen_fn_combined(3, 1.5, (0, -1, 1, 2, 1, -1, 1, 3), 0.5)

    @pytest.mark.parametrize("nu", [3, 4])
    def test_combined_nonpositive_on_default_tuple(self, nu):
        x = default_x_grid()
        for alpha in (1.05, 1.5, 1.95):
            assert gen_fn_combined(nu, alpha, None, x).max() <= 1e-12


class TestDefinitenessScan:
    @pytest.mark.parametrize("nu", [3, 4])
    def test_default_tuple_passes(self, nu):
        # coarser alpha grid here; the acceptance suite runs the full one
        report = definiteness_scan(nu, alpha_grid=np.arange(1.05, 2.0, 0.05))
        assert report.passed
        assert report.max_value <= 1e-12

    def test_unshifted_scheme_fails(self):
        report = definiteness_scan(3, shifts=0,
                                   alpha_grid=np.array([1.5]))
        assert not report.passed
        assert report.max_value > 1.0

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            definiteness_scan(3, alpha_grid=np.array([]))


class TestEigenProbe:
    def test_negative_definite_default_tuple(self):
        probe = eigen_probe(assemble_left(wsld_scheme(4, 1.5), 128))
        assert probe.lambda_max < 0
        assert probe.max_real_part_estimate == probe.lambda_max

    def test_unshifted_triangular_spectrum(self):
        # lower triangular: all eigenvalues sit at the diagonal value p0^alpha
        scheme = wsld_scheme(3, 1.5, shifts=0)
        matrix = assemble_left(scheme, 64).values
        diag = (11 / 6) ** 1.5
        np.testing.assert_allclose(np.diag(matrix), diag, rtol=1e-15)
        assert diag > 1.0
        eigvals = np.linalg.eigvals(matrix)
        np.testing.assert_allclose(eigvals.real, diag, rtol=1e-8)
        # the symmetric part straddles the diagonal value
        probe = eigen_probe(matrix)
        assert probe.lambda_min < diag < probe.lambda_max

    @pytest.mark.parametrize("n", [64, 128])
    @pytest.mark.parametrize("nu", [3, 4])
    def test_spectral_sandwich(self, nu, n):
        # Toeplitz symmetric-part eigenvalues live inside the range of the
        # generating function (small slack for the sampled extremes)
        alpha = 1.5
        probe = eigen_probe(assemble_left(wsld_scheme(nu, alpha), n))
        values = gen_fn_combined(nu, alpha, None, default_x_grid())
        eps = 1e-8
        assert probe.lambda_min >= values.min() - eps
        assert probe.lambda_max <= values.max() + eps

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            eigen_probe(np.eye(EIGEN_MAX_DIM + 2))

    def test_requires_square(self):
        with pytest.raises(ValueError):
            eigen_probe(np.zeros((3, 4)))
