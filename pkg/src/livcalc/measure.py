"""Measure models, the half-plane integral representation they generate, the
Cayley bridge to contractive functions, and Stieltjes-Perron recovery of the
measure from boundary values.

The representation realized here is

    M(z) = integral over R of [1/(lam - z) - lam/(1 + lam^2)] dmu(lam),

normalized (when it is) by integral of dmu/(1 + lam^2) = 1, equivalently
M(i) = i.  Measures here are desk-scale: finitely many atoms plus a
compactly sampled density.  The representation theorem allows infinite mass
with a finite normalization integral; every identity verified in this
package is pointwise-algebraic and insensitive to that restriction, so the
finite model stands in for the general one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .core import AnalyticFn, FnKind, ToleranceConfig, evaluate_many, fmt_float
from .errors import EmptyMeasure, PoleEncountered, WindowTooSmall


def _simpson_weights(n_samples: int, h: float) -> np.ndarray:
    # composite Simpson on an odd number of samples (even panel count)
    w = np.ones(n_samples)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


@dataclass(frozen=True)
class SampledDensity:
    """Nonnegative density sampled on a uniform lattice over [x_lo, x_hi].

    The sample count must be odd so the stored lattice carries a composite
    Simpson rule directly.
    """

    x_lo: float
    x_hi: float
    values: tuple

    def __post_init__(self):
        if not self.x_hi > self.x_lo:
            raise ValueError("density window must have x_hi > x_lo")
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 3 or len(vals) % 2 == 0:
            raise ValueError("density needs an odd sample count >= 3")
        if any(not math.isfinite(v) or v < 0.0 for v in vals):
            raise ValueError("density samples must be finite and nonnegative")
        object.__setattr__(self, "values", vals)

    @property
    def h(self) -> float:
        return (self.x_hi - self.x_lo) / (len(self.values) - 1)

    def lattice(self) -> np.ndarray:
        return np.linspace(self.x_lo, self.x_hi, len(self.values))

    def quadrature_weights(self) -> np.ndarray:
        """Simpson weights times sample values: ready-to-sum kernel weights."""
        return _simpson_weights(len(self.values), self.h) * np.asarray(self.values)

    def mass(self) -> float:
        return float(np.sum(self.quadrature_weights()))


@dataclass(frozen=True)
class BorelMeasureModel:
    """Finite atoms plus an optional sampled absolutely-continuous part."""

    atoms: tuple = ()
    density: Optional[SampledDensity] = None

    def __post_init__(self):
        atoms = tuple((float(loc), float(w)) for loc, w in self.atoms)
        locs = [a[0] for a in atoms]
        if len(set(locs)) != len(locs):
            raise ValueError("atom locations must be pairwise distinct")
        if any(w <= 0.0 or not math.isfinite(w) for _, w in atoms):
            raise ValueError("atom weights must be strictly positive and finite")
        if any(not math.isfinite(loc) for loc, _ in atoms):
            raise ValueError("atom locations must be finite")
        object.__setattr__(self, "atoms", atoms)
        if not math.isfinite(self.normalization_integral()):
            raise ValueError("normalization integral must be finite")

    def locations(self) -> np.ndarray:
        return np.asarray([a[0] for a in self.atoms], dtype=np.float64)

    def weights(self) -> np.ndarray:
        return np.asarray([a[1] for a in self.atoms], dtype=np.float64)

    def _density_arrays(self):
        if self.density is None:
            return np.empty(0), np.empty(0)
        return self.density.lattice(), self.density.quadrature_weights()

    def normalization_integral(self) -> float:
        """integral of dmu(lam) / (1 + lam^2)."""
        locs, ws = self.locations(), self.weights()
        total = float(np.sum(ws / (1.0 + locs**2))) if len(self.atoms) else 0.0
        if self.density is not None:
            x = self.density.lattice()
            total += float(np.sum(self.density.quadrature_weights() / (1.0 + x**2)))
        return total

    def total_mass(self) -> float:
        mass = float(np.sum(self.weights())) if len(self.atoms) else 0.0
        if self.density is not None:
            mass += self.density.mass()
        return mass

    def to_json(self) -> dict:
        dens = None
        if self.density is not None:
            dens = {
                "x_lo": fmt_float(self.density.x_lo),
                "x_hi": fmt_float(self.density.x_hi),
                "h": fmt_float(self.density.h),
                "values": [fmt_float(v) for v in self.density.values],
            }
        return {
            "atoms": [
                {"location": fmt_float(loc), "weight": fmt_float(w)}
                for loc, w in self.atoms
            ],
            "density": dens,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BorelMeasureModel":
        atoms = tuple(
            (float(a["location"]), float(a["weight"])) for a in obj.get("atoms", [])
        )
        dens = None
        raw = obj.get("density")
        if raw is not None:
            dens = SampledDensity(
                float(raw["x_lo"]), float(raw["x_hi"]),
                tuple(float(v) for v in raw["values"]),
            )
            if "h" in raw and abs(dens.h - float(raw["h"])) > 1e-12 * max(1.0, dens.h):
                raise ValueError("density 'h' inconsistent with window and sample count")
        return cls(atoms, dens)


def realize_herglotz(mu: BorelMeasureModel) -> AnalyticFn:
    """The half-plane function represented by ``mu``.

    Atoms contribute the kernel sum directly; the density contributes the
    same kernel integrated by composite Simpson on its stored lattice (the
    kernel is smooth at the probe heights used here, so fixed-order
    quadrature at the stored resolution is adequate; see
    :func:`density_quadrature_error_estimate`).
    """
    if len(mu.atoms) == 0 and (mu.density is None or mu.density.mass() == 0.0):
        raise EmptyMeasure("measure has neither atoms nor density mass")
    locs, ws = mu.locations(), mu.weights()
    dx, dw = mu._density_arrays()

    def vector_evaluator(zs: np.ndarray) -> np.ndarray:
        return _kernels.herglotz_eval(locs, ws, dx, dw, zs)

    return AnalyticFn(
        evaluator=lambda z: complex(
            _kernels.herglotz_eval(locs, ws, dx, dw, np.array([z]))[0]
        ),
        kind=FnKind.HERGLOTZ,
        label=f"measure[{len(mu.atoms)} atoms"
        + (", density" if mu.density is not None else "")
        + "]",
        vector_evaluator=vector_evaluator,
    )


def density_quadrature_error_estimate(mu: BorelMeasureModel, z: complex) -> float:
    """|Simpson at stored spacing - Simpson at doubled spacing| of the density
    kernel integral at ``z``: a Richardson-style resolution check."""
    if mu.density is None:
        return 0.0
    dx, dw = mu._density_arrays()
    fine = _kernels.herglotz_eval(np.empty(0), np.empty(0), dx, dw, np.array([z]))[0]
    coarse_x = dx[::2]
    coarse_vals = np.asarray(mu.density.values)[::2]
    coarse_w = _simpson_weights(len(coarse_x), 2.0 * mu.density.h) * coarse_vals
    coarse = _kernels.herglotz_eval(
        np.empty(0), np.empty(0), coarse_x, coarse_w, np.array([z])
    )[0]
    return abs(fine - coarse)


def normalization_defect(mu: BorelMeasureModel) -> float:
    """|integral of dmu/(1+lam^2) - 1|; zero iff M(i) = i."""
    return abs(mu.normalization_integral() - 1.0)


def livsic_from_weyl(M: AnalyticFn) -> AnalyticFn:
    """Cayley transform s = (M - i)/(M + i) of a Herglotz function."""
    if M.kind is not FnKind.HERGLOTZ:
        raise ValueError("livsic_from_weyl expects a Herglotz-kind function")

    def evaluator(z: complex) -> complex:
        w = M(z)
        den = w + 1j
        if abs(den) < 1e-14 * max(1.0, abs(w)):
            raise PoleEncountered(f"M({z}) = -i is impossible for genuine Herglotz input")
        return (w - 1j) / den

    vector = None
    if M.vector_evaluator is not None:
        mvec = M.vector_evaluator

        def vector(zs):
            w = mvec(zs)
            return (w - 1j) / (w + 1j)

    return AnalyticFn(
        evaluator=evaluator,
        kind=FnKind.LIVSIC,
        label=f"cayley({M.label})" if M.label else "cayley(M)",
        vector_evaluator=vector,
    )


# --- Stieltjes inversion ------------------------------------------------


@dataclass(frozen=True)
class RecoveredAtom:
    location: float
    weight: float
    #: |extrapolated weight - weight at the smallest epsilon|
    residual: float


@dataclass(frozen=True)
class InversionResult:
    """Estimated measure recovered from boundary values of Im M."""

    atoms: tuple
    density: SampledDensity
    scan_spacing: float

    def as_measure(self) -> BorelMeasureModel:
        return BorelMeasureModel(
            tuple((a.location, a.weight) for a in self.atoms), self.density
        )


def _extrapolate_to_zero(eps: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Neville polynomial extrapolation of values(eps) to eps = 0.

    ``values`` has shape (n_eps, ...); extrapolation runs along axis 0.
    """
    table = [np.asarray(v, dtype=np.float64) for v in values]
    n = len(eps)
    for level in range(1, n):
        table = [
            (eps[i] * table[i + 1] - eps[i + level] * table[i])
            / (eps[i] - eps[i + level])
            for i in range(n - level)
        ]
    return table[0]


def stieltjes_invert(
    M: AnalyticFn,
    window: tuple,
    eps_schedule: Sequence[float],
    cfg: ToleranceConfig = ToleranceConfig(),
    n_scan: int = 2001,
) -> InversionResult:
    """Recover a measure estimate from boundary values of Im M.

    Scans (1/pi) Im M(x + i*eps) over ``window`` for each ``eps`` in the
    strictly decreasing schedule.  Peaks whose mass eps * Im M stays put
    (changes by less than 10%) between consecutive eps values are point
    masses: their locations are refined by a bounded scalar maximization at
    the smallest eps and their weights Richardson-extrapolated to eps = 0,
    with the extrapolation residual reported per atom.  What remains, after
    subtracting the detected atoms' Poisson kernels, extrapolates to the
    density estimate.

    Raises WindowTooSmall when Im M at a window edge exceeds 10x the window
    median, i.e. when mass visibly leaks through the boundary.
    """
    if M.kind is not FnKind.HERGLOTZ:
        raise ValueError("stieltjes_invert expects a Herglotz-kind function")
    eps = np.asarray(list(eps_schedule), dtype=np.float64)
    if len(eps) < 2 or np.any(eps <= 0.0) or np.any(np.diff(eps) >= 0.0):
        raise ValueError("eps_schedule must be >= 2 strictly decreasing positive reals")
    x_lo, x_hi = float(window[0]), float(window[1])
    if not x_hi > x_lo:
        raise ValueError("window must satisfy x_hi > x_lo")
    if n_scan < 5 or n_scan % 2 == 0:
        raise ValueError("n_scan must be odd and >= 5")

    scan = np.linspace(x_lo, x_hi, n_scan)
    spacing = scan[1] - scan[0]
    imags = np.empty((len(eps), n_scan))
    for k, e in enumerate(eps):
        imags[k] = evaluate_many(M, scan + 1j * e).imag

    finest = imags[-1]
    median = float(np.median(finest))
    if max(finest[0], finest[-1]) > 10.0 * median:
        raise WindowTooSmall(
            f"Im M at window edge ({max(finest[0], finest[-1]):.3g}) exceeds "
            f"10x the window median ({median:.3g})"
        )

    e_min = eps[-1]
    atoms = []
    candidates = [
        i
        for i in range(1, n_scan - 1)
        if finest[i] > finest[i - 1] and finest[i] >= finest[i + 1]
    ]
    for i in candidates:
        bracket = (scan[i] - spacing, scan[i] + spacing)
        refined = minimize_scalar(
            lambda x: -evaluate_many(M, np.array([x + 1j * e_min]))[0].imag,
            bounds=bracket,
            method="bounded",
            options={"xatol": 1e-13},
        )
        loc = float(refined.x)
        mass = np.array(
            [e * evaluate_many(M, np.array([loc + 1j * e]))[0].imag for e in eps]
        )
        if mass[-1] <= 1e-6:
            continue
        # point mass: eps * Im M converges to the weight; density: it decays
        # with eps, so consecutive values move by far more than 10%
        if any(
            abs(mass[k + 1] - mass[k]) > 0.1 * abs(mass[k]) for k in range(len(eps) - 1)
        ):
            continue
        weight = float(_extrapolate_to_zero(eps, mass))
        atoms.append(RecoveredAtom(loc, weight, abs(weight - mass[-1])))

    atoms.sort(key=lambda a: a.location)
    deduped = []
    for a in atoms:
        if deduped and a.location - deduped[-1].location < 0.5 * spacing:
            continue
        deduped.append(a)
    atoms = deduped

    # density: remove the detected atoms' Poisson kernels, then extrapolate
    residual_imags = imags.copy()
    for a in atoms:
        for k, e in enumerate(eps):
            residual_imags[k] -= a.weight * e / ((scan - a.location) ** 2 + e * e)
    density_vals = _extrapolate_to_zero(eps, residual_imags / math.pi)
    density_vals = np.clip(density_vals, 0.0, None)
    density = SampledDensity(x_lo, x_hi, tuple(density_vals))

    return InversionResult(tuple(atoms), density, float(spacing))
