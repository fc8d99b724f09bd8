"""Extension parameters and characteristic functions: the disk-automorphism
bridge between contractive function classes, parameter extraction at z = i,
reference-change laws, and a heuristic membership check for the subclass of
contractive functions vanishing at i with full radial growth."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from .core import AnalyticFn, FnKind, ToleranceConfig, fmt_float
from .errors import NotContractive, PoleEncountered
from .moebius import MoebiusMap


def ensure_kappa(kappa: complex) -> complex:
    """Validate an extension parameter: a complex number with |kappa| < 1."""
    kappa = complex(kappa)
    if not abs(kappa) < 1.0:
        raise ValueError(f"extension parameter needs |kappa| < 1, got |{kappa}| = {abs(kappa)}")
    return kappa


def ensure_rotation(alpha: float) -> float:
    """Validate a reference-rotation angle in [0, pi)."""
    alpha = float(alpha)
    if not (0.0 <= alpha < math.pi):
        raise ValueError(f"rotation angle {alpha} outside [0, pi)")
    return alpha


def characteristic_from_livsic(s: AnalyticFn, kappa: complex) -> AnalyticFn:
    """S(z) = (s(z) - kappa) / (conj(kappa) s(z) - 1).

    The map is a Moebius involution: applying it twice with the same kappa
    returns the input, so it also converts a characteristic function back to
    the underlying contractive one.  The output kind flips accordingly.
    """
    kappa = ensure_kappa(kappa)
    kbar = kappa.conjugate()
    out_kind = FnKind.LIVSIC if s.kind is FnKind.CHARACTERISTIC else FnKind.CHARACTERISTIC

    def evaluator(z: complex) -> complex:
        v = s(z)
        den = kbar * v - 1.0
        if abs(den) < 1e-14:
            raise PoleEncountered(
                f"conj(kappa) s(z) = 1 at z = {z}: impossible for |s| < 1, |kappa| < 1"
            )
        return (v - kappa) / den

    vector = None
    if s.vector_evaluator is not None:
        svec = s.vector_evaluator

        def vector(zs):
            v = svec(zs)
            return (v - kappa) / (kbar * v - 1.0)

    return AnalyticFn(
        evaluator=evaluator,
        kind=out_kind,
        label=f"diskauto[kappa={kappa}]({s.label})",
        vector_evaluator=vector,
    )


def extract_kappa(S: AnalyticFn) -> complex:
    """The extension parameter recovered as the value S(i)."""
    value = S(1j)
    if not abs(value) < 1.0:
        raise NotContractive(f"|S(i)| = {abs(value)} >= 1")
    return value


def reference_change_livsic(s: AnalyticFn, alpha: float) -> AnalyticFn:
    """Reference rotation acts as the unimodular factor exp(-2 i alpha)."""
    alpha = ensure_rotation(alpha)
    phase = cmath.exp(-2j * alpha)
    vector = None
    if s.vector_evaluator is not None:
        svec = s.vector_evaluator
        vector = lambda zs: phase * svec(zs)
    return AnalyticFn(
        evaluator=lambda z: phase * s(z),
        kind=s.kind,
        label=f"rot[{alpha}]({s.label})",
        vector_evaluator=vector,
    )


def reference_change_weyl(M: AnalyticFn, alpha: float) -> AnalyticFn:
    """Reference rotation acts by the half-plane map
    (cos a * M - sin a)/(sin a * M + cos a), which fixes the value i."""
    alpha = ensure_rotation(alpha)
    rot = MoebiusMap.halfplane_rotation(alpha)

    vector = None
    if M.vector_evaluator is not None:
        mvec = M.vector_evaluator

        def vector(zs):
            w = mvec(zs)
            return (rot.a * w + rot.b) / (rot.c * w + rot.d)

    return AnalyticFn(
        evaluator=lambda z: rot(M(z)),
        kind=M.kind,
        label=f"rot[{alpha}]({M.label})",
        vector_evaluator=vector,
    )


class ClassVerdict(enum.Enum):
    CONSISTENT_WITH_C = "ConsistentWithC"
    FAILS_AT_I = "FailsAtI"
    FAILS_GROWTH = "FailsGrowth"


@dataclass(frozen=True)
class RayDiagnostic:
    alpha: float
    theta: float
    radii: tuple
    magnitudes: tuple
    passed: bool


@dataclass(frozen=True)
class ClassMembershipReport:
    value_at_i: complex
    vanishes_at_i: bool
    ray_growth_passed: bool
    ray_details: tuple
    verdict: ClassVerdict

    def to_json(self) -> dict:
        return {
            "value_at_i": {
                "re": fmt_float(self.value_at_i.real),
                "im": fmt_float(self.value_at_i.imag),
            },
            "vanishes_at_i": self.vanishes_at_i,
            "ray_growth_passed": self.ray_growth_passed,
            "verdict": self.verdict.value,
            "ray_details": [
                {
                    "alpha": fmt_float(d.alpha),
                    "theta": fmt_float(d.theta),
                    "radii": [fmt_float(r) for r in d.radii],
                    "magnitudes": [fmt_float(m) for m in d.magnitudes],
                    "passed": d.passed,
                }
                for d in self.ray_details
            ],
        }


#: Probe schedule for the growth condition: sector angles, radii, and the
#: grid of boundary phases exp(2 i alpha).  Any finite sampling can only
#: refute membership; this budget rejects the Blaschke-type counterexamples
#: in the test corpus while passing the interval model.
RAY_THETAS = (math.pi / 4, math.pi / 2, 3 * math.pi / 4)
RAY_RADII = (1e1, 1e2, 1e3, 1e4)
RAY_ALPHA_COUNT = 16
RAY_PASS_THRESHOLD = 1e3


def class_C_check(s: AnalyticFn, cfg: ToleranceConfig = ToleranceConfig()) -> ClassMembershipReport:
    """Falsification heuristic for membership in the vanishing-at-i class.

    Checks s(i) = 0 against ``cfg.identity_tol`` and, for every boundary
    phase exp(2 i alpha) on a 16-point grid over [0, pi), that
    |z (s(z) - exp(2 i alpha))| is strictly increasing along each probe ray
    and exceeds 10^3 at the largest radius.  FailsAtI and FailsGrowth are
    conclusive rejections; ConsistentWithC is evidence, not proof.
    """
    value_at_i = s(1j)
    vanishes = abs(value_at_i) < cfg.identity_tol

    details: List[RayDiagnostic] = []
    all_passed = True
    for j in range(RAY_ALPHA_COUNT):
        alpha = j * math.pi / RAY_ALPHA_COUNT
        target = cmath.exp(2j * alpha)
        for theta in RAY_THETAS:
            direction = cmath.exp(1j * theta)
            mags = []
            for r in RAY_RADII:
                z = r * direction
                mags.append(abs(z * (s(z) - target)))
            increasing = all(mags[k + 1] > mags[k] for k in range(len(mags) - 1))
            passed = increasing and mags[-1] > RAY_PASS_THRESHOLD
            all_passed = all_passed and passed
            details.append(
                RayDiagnostic(alpha, theta, tuple(RAY_RADII), tuple(mags), passed)
            )

    if not vanishes:
        verdict = ClassVerdict.FAILS_AT_I
    elif not all_passed:
        verdict = ClassVerdict.FAILS_GROWTH
    else:
        verdict = ClassVerdict.CONSISTENT_WITH_C
    return ClassMembershipReport(value_at_i, vanishes, all_passed, tuple(details), verdict)
