import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from livcalc import (
    AnalyticFn,
    EvaluationGrid,
    FnKind,
    PoleEncountered,
    ToleranceConfig,
    constant_fn,
    default_grid,
    evaluate_many,
    evaluate_on_grid,
    require_upper,
    sup_deviation,
)
from livcalc.core import complex_from_json, complex_to_json, grid_from_json, grid_to_json

GRID = default_grid()


def exp_fn(scale: complex) -> AnalyticFn:
    return AnalyticFn(lambda z: cmath.exp(scale * z), FnKind.GENERIC, f"exp({scale}z)")


class TestHalfPlaneValidation:
    def test_rejects_real_axis(self):
        with pytest.raises(ValueError):
            require_upper(1.0 + 0j)

    def test_rejects_lower_halfplane(self):
        with pytest.raises(ValueError):
            require_upper(1 - 2j)

    def test_accepts_upper(self):
        assert require_upper(3 + 0.5j) == 3 + 0.5j

    def test_analytic_fn_rejects_bad_point(self):
        with pytest.raises(ValueError):
            constant_fn(0.0)(-1j)


class TestEvaluationGrid:
    def test_default_grid_size_and_contains_i(self):
        assert len(GRID) == 21 * 21 + 1
        assert 1j in GRID.points

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            EvaluationGrid(())

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            EvaluationGrid((1j, 1j))

    def test_rejects_lower_halfplane_point(self):
        with pytest.raises(ValueError):
            EvaluationGrid((1j, 1 - 1j))

    def test_json_round_trip(self):
        small = EvaluationGrid((1j, 2 + 0.5j), "probe")
        again = grid_from_json(grid_to_json(small))
        assert again.points == small.points
        assert again.description == "probe"


class TestToleranceConfig:
    def test_defaults(self):
        cfg = ToleranceConfig()
        assert cfg.identity_tol == 1e-10
        assert cfg.quadrature_tol == 1e-8
        assert cfg.kappa2_zero_threshold == 1e-12
        assert cfg.inversion_rel_tol == 0.02

    @pytest.mark.parametrize("bad", [0.0, -1e-3, 1.0, 2.0])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            ToleranceConfig(identity_tol=bad)


class TestEvaluateOnGrid:
    def test_constant_zero(self):
        grid = EvaluationGrid((1j, 2j, 1 + 1j))
        assert evaluate_on_grid(constant_fn(0.0), grid) == [0, 0, 0]

    def test_cayley_vanishes_at_i(self):
        f = AnalyticFn(lambda z: (z - 1j) / (z + 1j), FnKind.GENERIC)
        assert evaluate_on_grid(f, EvaluationGrid((1j,))) == [0]

    def test_exponential_values(self):
        # direct evaluation: e^{i*i} = e^{-1}, e^{i*2i} = e^{-2}
        values = evaluate_on_grid(exp_fn(1j), EvaluationGrid((1j, 2j)))
        assert abs(values[0] - 0.36787944117144233) < 1e-15
        assert abs(values[1] - 0.1353352832366127) < 1e-15

    def test_pole_recorded_without_aborting(self):
        f = AnalyticFn(lambda z: 1.0 / (z - 2j), FnKind.GENERIC, "pole at 2i")
        grid = EvaluationGrid((1j, 2j, 3j))
        values = evaluate_on_grid(f, grid)
        assert isinstance(values[1], PoleEncountered)
        assert values[0] == 1j and values[2] == -1j

    def test_overflow_guard_defines_pole(self):
        f = AnalyticFn(lambda z: 1e13, FnKind.GENERIC)
        with pytest.raises(PoleEncountered):
            f(1j)


class TestEvaluateMany:
    def test_matches_scalar_path(self):
        f = exp_fn(2j)
        zs = GRID.as_array()
        np.testing.assert_allclose(
            evaluate_many(f, zs), np.array([f(z) for z in GRID]), rtol=0, atol=0
        )

    def test_vector_evaluator_used(self):
        calls = []

        def vec(zs):
            calls.append(len(zs))
            return np.zeros_like(zs)

        f = AnalyticFn(lambda z: 0j, FnKind.GENERIC, vector_evaluator=vec)
        evaluate_many(f, np.array([1j, 2j]))
        assert calls == [2]

    def test_rejects_lower_points(self):
        with pytest.raises(ValueError):
            evaluate_many(constant_fn(0.0), np.array([1j, -1j]))


class TestSupDeviation:
    def test_identical_functions(self):
        f = exp_fn(1j)
        assert sup_deviation(f, f, GRID) == 0.0

    def test_constant_gap(self):
        assert sup_deviation(constant_fn(0.0), constant_fn(1.0), GRID) == 1.0

    def test_exponent_additivity(self):
        f = exp_fn(2j)
        g = AnalyticFn(lambda z: cmath.exp(1j * z) * cmath.exp(1j * z), FnKind.GENERIC)
        assert sup_deviation(f, g, GRID) < 1e-15

    def test_pole_aborts(self):
        # the distinguished point i belongs to the default grid
        f = AnalyticFn(lambda z: 1.0 / (z - 1j), FnKind.GENERIC)
        with pytest.raises(PoleEncountered):
            sup_deviation(f, constant_fn(0.0), GRID)


disk_values = st.tuples(
    st.floats(0.0, 0.9), st.floats(0.0, 2 * math.pi)
).map(lambda rt: rt[0] * cmath.exp(1j * rt[1]))


class TestSupDeviationProperties:
    @given(disk_values, disk_values)
    def test_symmetry(self, a, b):
        f, g = constant_fn(a), constant_fn(b)
        assert sup_deviation(f, g, GRID) == sup_deviation(g, f, GRID)

    @given(disk_values, disk_values, disk_values)
    def test_triangle_inequality(self, a, b, c):
        f, g, h = constant_fn(a), constant_fn(b), constant_fn(c)
        lhs = sup_deviation(f, h, GRID)
        rhs = sup_deviation(f, g, GRID) + sup_deviation(g, h, GRID)
        assert lhs <= rhs + 1e-15


class TestComplexJson:
    @given(st.floats(allow_nan=False, allow_infinity=False, width=64),
           st.floats(allow_nan=False, allow_infinity=False, width=64))
    def test_bit_stable_round_trip(self, re, im):
        z = complex(re, im)
        assert complex_from_json(complex_to_json(z)) == z
