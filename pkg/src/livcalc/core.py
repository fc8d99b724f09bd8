"""Analytic functions on the open upper half-plane: representation, grids,
tolerances, and pointwise comparison utilities.

Functions are represented by their evaluators.  Every constructor in the
package returns an :class:`AnalyticFn`, so identity checks reduce to pointwise
sweeps over an :class:`EvaluationGrid`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import PoleEncountered

#: Values with magnitude above this are treated as a pole hit.
OVERFLOW_GUARD = 1e12


class FnKind(enum.Enum):
    """Class role of an analytic function on the upper half-plane."""

    LIVSIC = "livsic"                  # contractive, vanishing at i
    HERGLOTZ = "herglotz"              # maps the half-plane into itself
    CHARACTERISTIC = "characteristic"  # contractive
    GENERIC = "generic"


def require_upper(z: complex) -> complex:
    """Validate that ``z`` lies strictly in the open upper half-plane."""
    z = complex(z)
    if not (z.imag > 0.0) or not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"point {z!r} is not in the open upper half-plane")
    return z


@dataclass(frozen=True)
class AnalyticFn:
    """An evaluatable analytic function on the open upper half-plane.

    ``evaluator`` maps a half-plane point to a complex value.  ``kind`` tags
    the class role the constructor claims for the function (contractivity for
    Livsic/characteristic kinds, nonnegative imaginary part for Herglotz);
    the claims are checked by probe sweeps, not at construction.

    ``vector_evaluator``, when present, evaluates a whole complex array at
    once and must agree pointwise with ``evaluator``.
    """

    evaluator: Callable[[complex], complex]
    kind: FnKind = FnKind.GENERIC
    label: str = ""
    vector_evaluator: Optional[Callable[[np.ndarray], np.ndarray]] = field(
        default=None, compare=False
    )

    def __call__(self, z: complex) -> complex:
        z = require_upper(z)
        try:
            value = complex(self.evaluator(z))
        except ZeroDivisionError as exc:
            raise PoleEncountered(f"{self.label or 'function'}: pole at {z}") from exc
        if not (math.isfinite(value.real) and math.isfinite(value.imag)) or abs(
            value
        ) > OVERFLOW_GUARD:
            raise PoleEncountered(
                f"{self.label or 'function'}: value {value!r} at {z} exceeds overflow guard"
            )
        return value


@dataclass(frozen=True)
class EvaluationGrid:
    """An ordered, duplicate-free set of probe points in the upper half-plane."""

    points: tuple
    description: str = ""

    def __post_init__(self):
        if len(self.points) == 0:
            raise ValueError("grid must be nonempty")
        pts = tuple(require_upper(z) for z in self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("grid points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.complex128)


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances shared by identity checks, quadrature and inversion."""

    identity_tol: float = 1e-10
    quadrature_tol: float = 1e-8
    kappa2_zero_threshold: float = 1e-12
    inversion_rel_tol: float = 0.02

    def __post_init__(self):
        for name in ("identity_tol", "quadrature_tol", "kappa2_zero_threshold",
                     "inversion_rel_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name}={value!r} must lie strictly in (0, 1)")


def default_grid() -> EvaluationGrid:
    """The default probe grid: a 21x21 lattice on [-5, 5] x [0.1, 5] plus i.

    Dense enough to falsify the algebraic identities under test, cheap enough
    for property tests.  The distinguished point i is appended because many
    normalizations are pinned there.
    """
    res = np.linspace(-5.0, 5.0, 21)
    ims = np.linspace(0.1, 5.0, 21)
    points = [complex(re, im) for re in res for im in ims]
    points.append(1j)
    return EvaluationGrid(tuple(points), "default 21x21 lattice + i")


def evaluate_on_grid(f: AnalyticFn, grid: EvaluationGrid) -> list:
    """Evaluate ``f`` at every grid point, in grid order.

    A pole does not abort the sweep: the offending entry holds the
    :class:`PoleEncountered` instance instead of a complex value.
    """
    out = []
    for z in grid:
        try:
            out.append(f(z))
        except PoleEncountered as exc:
            out.append(exc)
    return out


def evaluate_many(f: AnalyticFn, zs: np.ndarray) -> np.ndarray:
    """Vectorized evaluation; raises PoleEncountered on any bad value."""
    zs = np.asarray(zs, dtype=np.complex128)
    if not np.all(zs.imag > 0.0):
        raise ValueError("all evaluation points must lie in the upper half-plane")
    if f.vector_evaluator is not None:
        values = np.asarray(f.vector_evaluator(zs), dtype=np.complex128)
    else:
        values = np.array([f(z) for z in zs.ravel()], dtype=np.complex128).reshape(
            zs.shape
        )
    bad = ~np.isfinite(values) | (np.abs(values) > OVERFLOW_GUARD)
    if np.any(bad):
        idx = int(np.argmax(bad.ravel()))
        raise PoleEncountered(
            f"{f.label or 'function'}: pole at {zs.ravel()[idx]} in vector sweep"
        )
    return values


def sup_deviation(f: AnalyticFn, g: AnalyticFn, grid: EvaluationGrid) -> float:
    """max over the grid of |f(z) - g(z)|; symmetric in ``f`` and ``g``."""
    worst = 0.0
    for z in grid:
        worst = max(worst, abs(f(z) - g(z)))
    return worst


def max_modulus(f: AnalyticFn, grid: EvaluationGrid) -> float:
    """Largest |f(z)| over the grid (contractivity probe)."""
    return max(abs(f(z)) for z in grid)


def min_imag(f: AnalyticFn, grid: EvaluationGrid) -> float:
    """Smallest Im f(z) over the grid (Herglotz probe)."""
    return min(f(z).imag for z in grid)


def constant_fn(value: complex, kind: FnKind = FnKind.GENERIC,
                label: str = "") -> AnalyticFn:
    """Constant probe function."""
    value = complex(value)
    return AnalyticFn(
        evaluator=lambda z: value,
        kind=kind,
        label=label or f"constant {value}",
        vector_evaluator=lambda zs: np.full_like(zs, value, dtype=np.complex128),
    )


# --- JSON serialization -----------------------------------------------------
#
# Complex values travel as {re, im} pairs of decimal strings at 17 significant
# digits, which round-trips IEEE doubles bit-exactly.

def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": fmt_float(z.real), "im": fmt_float(z.imag)}


def complex_from_json(obj: dict) -> complex:
    return complex(float(obj["re"]), float(obj["im"]))


def grid_to_json(grid: EvaluationGrid) -> dict:
    return {
        "points": [complex_to_json(z) for z in grid],
        "description": grid.description,
    }


def grid_from_json(obj: dict) -> EvaluationGrid:
    points = tuple(complex_from_json(p) for p in obj["points"])
    return EvaluationGrid(points, obj.get("description", ""))
