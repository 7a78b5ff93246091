"""Weight profiles for generalized Dirichlet energies.

A profile is a scalar function F applied to the energy density of a map:
the functional being discretized elsewhere in this package is

    E_F(phi) = integral of F(|dphi|^2 / 2)

over the domain surface.  F is required to be C^2 with F' > 0, which keeps
the first-variation machinery elliptic.  Alongside evaluation, this module
checks the closed-form coefficient conditions that decide stability and
index bounds for identity and homothetic maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FProfile",
    "Condition",
    "ConditionCheck",
    "ProfileValidationError",
    "SingularDerivativeError",
    "check_condition",
    "evaluate",
    "validate_derivatives",
]

# Range sampled when validating F' > 0 and F >= 0 at construction time.
VALIDATION_RANGE = (1e-6, 100.0)
VALIDATION_SAMPLES = 257


class ProfileValidationError(ValueError):
    """Raised when a profile violates F' > 0 or F >= 0 on the check range."""


class SingularDerivativeError(ValueError):
    """Raised when a derivative of F is evaluated where it is undefined."""


@dataclass(frozen=True)
class FProfile:
    """Twice-differentiable energy weight t -> F(t) on t >= 0.

    kind is one of "Linear", "PNorm", "ExpAffine", "SqrtShift"; params holds
    the kind-specific coefficients.  Use the classmethod constructors rather
    than building instances directly.
    """

    kind: str
    params: tuple[float, ...] = ()

    @classmethod
    def linear(cls) -> "FProfile":
        """F(t) = t, the ordinary Dirichlet energy weight."""
        return cls._build("Linear", ())

    @classmethod
    def pnorm(cls, p: float) -> "FProfile":
        """F(t) = (1/p) (2t)^(p/2), the p-energy weight; requires p >= 2."""
        if p < 2:
            raise ProfileValidationError(f"PNorm exponent must be >= 2, got {p}")
        return cls._build("PNorm", (float(p),))

    @classmethod
    def exp_affine(cls, alpha: float, beta: float, gamma: float = 0.0,
                   delta: float = 0.0) -> "FProfile":
        """F(t) = alpha*exp(beta*t) + gamma*t + delta."""
        return cls._build("ExpAffine", (float(alpha), float(beta), float(gamma), float(delta)))

    @classmethod
    def sqrt_shift(cls) -> "FProfile":
        """F(t) = sqrt(1 + t)."""
        return cls._build("SqrtShift", ())

    @classmethod
    def from_config(cls, kind: str, parameters: dict) -> "FProfile":
        """Build a profile from a config mapping (CLI entry point)."""
        if kind == "Linear":
            if parameters:
                raise ProfileValidationError("Linear takes no parameters")
            return cls.linear()
        if kind == "PNorm":
            return cls.pnorm(**parameters)
        if kind == "ExpAffine":
            return cls.exp_affine(**parameters)
        if kind == "SqrtShift":
            if parameters:
                raise ProfileValidationError("SqrtShift takes no parameters")
            return cls.sqrt_shift()
        raise ProfileValidationError(f"unknown profile kind {kind!r}")

    @classmethod
    def _build(cls, kind: str, params: tuple[float, ...],
               validate: bool = True) -> "FProfile":
        profile = cls(kind, params)
        if validate:
            profile._validate()
        return profile

    def _validate(self) -> None:
        lo, hi = VALIDATION_RANGE
        t = np.geomspace(lo, hi, VALIDATION_SAMPLES)
        f, f1, _ = evaluate(self, t)
        if not np.all(f1 > 0.0):
            raise ProfileValidationError(
                f"{self.kind}{self.params} has F' <= 0 on the validation range")
        if not np.all(f >= 0.0):
            raise ProfileValidationError(
                f"{self.kind}{self.params} has F < 0 on the validation range")


def evaluate(profile: FProfile, t):
    """Evaluate (F(t), F'(t), F''(t)); t may be a scalar or an array.

    Raises SingularDerivativeError where the closed form for F'' is
    undefined (PNorm with 2 < p < 4 at t = 0) and ValueError for t < 0.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise ValueError("energy density argument must be nonnegative")

    kind = profile.kind
    if kind == "Linear":
        f = t_arr.copy()
        f1 = np.ones_like(t_arr)
        f2 = np.zeros_like(t_arr)
    elif kind == "PNorm":
        (p,) = profile.params
        if 2.0 < p < 4.0 and np.any(t_arr == 0.0):
            raise SingularDerivativeError(
                f"PNorm p={p} has singular F'' at t=0")
        s = 2.0 * t_arr
        f = s ** (p / 2.0) / p
        f1 = s ** (p / 2.0 - 1.0)
        if p == 2.0:
            f2 = np.zeros_like(t_arr)
        else:
            f2 = (p - 2.0) * s ** (p / 2.0 - 2.0)
    elif kind == "ExpAffine":
        alpha, beta, gamma, delta = profile.params
        e = np.exp(beta * t_arr)
        f = alpha * e + gamma * t_arr + delta
        f1 = alpha * beta * e + gamma
        f2 = alpha * beta * beta * e
    elif kind == "SqrtShift":
        root = np.sqrt(1.0 + t_arr)
        f = root
        f1 = 0.5 / root
        f2 = -0.25 / root ** 3
    else:
        raise ProfileValidationError(f"unknown profile kind {kind!r}")

    if np.ndim(t) == 0:
        return float(f), float(f1), float(f2)
    return f, f1, f2


@dataclass(frozen=True)
class Condition:
    """A closed-form coefficient condition on F at a fixed density.

    kind "stability_identity":  F''(m/2) + (2-m) F'(m/2) >= 0, the identity
    map of the round m-sphere is F-stable (m >= 3).
    kind "index_identity":  ((m-2)/m) F'(m/2) - F''(m/2) > 0, the identity
    map contributes index at least m+1 (m >= 3).
    kind "homothetic":  (1 - 2/m) F'(t) - (2t/m) F''(t) > 0 at the map's
    density t, the stress tensor of a homothetic map is positive definite
    (m >= 2, t > 0).
    """

    kind: str
    m: int
    t: float | None = None

    @classmethod
    def stability_identity(cls, m: int) -> "Condition":
        if m < 3:
            raise ValueError("stability_identity requires m >= 3")
        return cls("stability_identity", int(m))

    @classmethod
    def index_identity(cls, m: int) -> "Condition":
        if m < 3:
            raise ValueError("index_identity requires m >= 3")
        return cls("index_identity", int(m))

    @classmethod
    def homothetic(cls, m: int, t: float) -> "Condition":
        if m < 2:
            raise ValueError("homothetic requires m >= 2")
        if t <= 0.0:
            raise ValueError("homothetic requires a positive density t")
        return cls("homothetic", int(m), float(t))


@dataclass(frozen=True)
class ConditionCheck:
    condition: Condition
    value: float
    holds: bool


def check_condition(profile: FProfile, condition: Condition) -> ConditionCheck:
    """Evaluate a coefficient condition; comparator is >= for the stability
    condition and strict > for the index and homothetic ones."""
    m = condition.m
    if condition.kind == "stability_identity":
        _, f1, f2 = evaluate(profile, m / 2.0)
        value = f2 + (2.0 - m) * f1
        holds = value >= 0.0
    elif condition.kind == "index_identity":
        _, f1, f2 = evaluate(profile, m / 2.0)
        value = (m - 2.0) / m * f1 - f2
        holds = value > 0.0
    elif condition.kind == "homothetic":
        t = condition.t
        _, f1, f2 = evaluate(profile, t)
        value = (1.0 - 2.0 / m) * f1 - (2.0 * t / m) * f2
        holds = value > 0.0
    else:
        raise ValueError(f"unknown condition kind {condition.kind!r}")
    return ConditionCheck(condition, float(value), bool(holds))


def validate_derivatives(profile: FProfile, t_lo: float, t_hi: float,
                         samples: int = 33, step: float = 1e-4) -> float:
    """Cross-check F' and F'' against central finite differences of F.

    Returns the worst relative error over the sample grid, with the error
    normalized by max(1, |closed form|) so that identically-zero
    derivatives are compared absolutely.
    """
    if not (0.0 <= t_lo < t_hi):
        raise ValueError("need 0 <= t_lo < t_hi")
    grid = np.linspace(t_lo, t_hi, samples)
    grid = grid[grid - step >= 0.0]
    worst = 0.0
    for t in grid:
        f0, f1, f2 = evaluate(profile, float(t))
        fp, _, _ = evaluate(profile, float(t + step))
        fm, _, _ = evaluate(profile, float(t - step))
        fd1 = (fp - fm) / (2.0 * step)
        fd2 = (fp - 2.0 * f0 + fm) / step ** 2
        worst = max(worst,
                    abs(fd1 - f1) / max(1.0, abs(f1)),
                    abs(fd2 - f2) / max(1.0, abs(f2)))
    return worst


def constant_profile(value: float) -> FProfile:
    """Degenerate F(t) = value, bypassing the F' > 0 validation.

    Only useful for quadrature identities (the energy of any map equals
    value times total area); every variational routine assumes F' > 0.
    """
    return FProfile._build("ExpAffine", (0.0, 0.0, 0.0, float(value)),
                           validate=False)
