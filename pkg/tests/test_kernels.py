import os
import subprocess
import sys

import numpy as np
import pytest

from livcalc import _kernels


def random_measure_inputs(seed=0):
    rng = np.random.default_rng(seed)
    locs = rng.uniform(-3, 3, 5)
    weights = rng.uniform(0.1, 2.0, 5)
    dens_x = np.linspace(-4.0, 4.0, 41)
    dens_w = rng.uniform(0.0, 0.2, 41)
    zs = rng.uniform(-5, 5, 64) + 1j * rng.uniform(0.05, 4.0, 64)
    return locs, weights, dens_x, dens_w, zs.astype(np.complex128)


class TestHerglotzEval:
    def test_matches_direct_formula(self):
        locs, weights, dens_x, dens_w, zs = random_measure_inputs()
        got = _kernels.herglotz_eval(locs, weights, dens_x, dens_w, zs)
        expected = np.zeros_like(zs)
        for lam, w in zip(np.concatenate([locs, dens_x]), np.concatenate([weights, dens_w])):
            expected += w * (1.0 / (lam - zs) - lam / (1.0 + lam * lam))
        np.testing.assert_allclose(got, expected, rtol=1e-13, atol=1e-13)

    def test_empty_arrays(self):
        zs = np.array([1j, 2j])
        got = _kernels.herglotz_eval(
            np.empty(0), np.empty(0), np.empty(0), np.empty(0), zs
        )
        np.testing.assert_array_equal(got, np.zeros(2, dtype=np.complex128))

    @pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba unavailable")
    def test_backends_agree(self):
        locs, weights, dens_x, dens_w, zs = random_measure_inputs(seed=3)
        nb_herglotz, _ = _kernels.backends()["numba"]
        np_herglotz, _ = _kernels.backends()["numpy"]
        np.testing.assert_allclose(
            nb_herglotz(locs, weights, dens_x, dens_w, zs),
            np_herglotz(locs, weights, dens_x, dens_w, zs),
            rtol=1e-14,
            atol=1e-14,
        )


class TestSimpsonExp:
    def test_against_closed_antiderivative(self):
        a = -1j * (2 + 2j) + 1.0
        got = _kernels.simpson_exp(a, 1.5, 4096)
        expected = (np.exp(a * 1.5) - 1.0) / a
        assert abs(got - expected) < 1e-12

    def test_rejects_odd_panel_count(self):
        with pytest.raises(ValueError):
            _kernels.simpson_exp(1.0, 1.0, 7)

    @pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba unavailable")
    def test_backends_agree(self):
        a = complex(0.5, -3.0)
        _, nb_simpson = _kernels.backends()["numba"]
        _, np_simpson = _kernels.backends()["numpy"]
        assert abs(nb_simpson(a, 2.0, 512) - np_simpson(a, 2.0, 512)) < 1e-13


class TestBackendSelection:
    def test_env_flag_forces_numpy_path(self):
        code = (
            "from livcalc import _kernels; "
            "print(_kernels.USING_NUMBA, _kernels._herglotz_impl is _kernels._np_herglotz_eval)"
        )
        env = dict(os.environ, LIVCALC_NO_NUMBA="1")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        assert out.returncode == 0, out.stderr
        assert out.stdout.strip() == "False True"

    def test_numpy_fallback_produces_same_oracle_value(self):
        code = (
            "from livcalc import model_livsic_quadrature; "
            "print(repr(model_livsic_quadrature(1.0, 2j)))"
        )
        env = dict(os.environ, LIVCALC_NO_NUMBA="1")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        assert out.returncode == 0, out.stderr
        value = complex(out.stdout.strip().strip("()"))
        from livcalc import model_livsic_quadrature

        assert abs(value - model_livsic_quadrature(1.0, 2j)) < 1e-12
