"""Identity-map and homothetic-map analysis on sphere domains.

Canonical vector fields of the round sphere (conformal gradients and
rotations), the second variation of the identity map written purely in
domain calculus, its closed form for round spheres of any dimension, the
Yano integral identity, and the reduction that turns the second variation
of a homothetic map along pushforward fields into an identity-map
computation at a rescaled density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .meshes import (DomainMesh, covariant_derivative, divergence, integrate,
                     lie_derivative_metric)
from .profiles import FProfile, evaluate
from .spheremaps import SphereMap, homothety_fit, map_geometry, project_tangent
from .variation import SecondVariationForm

__all__ = [
    "CanonicalFields",
    "NotHomotheticError",
    "canonical_fields",
    "homothetic_reduction_check",
    "pushforward_section",
    "q_identity_conformal_closed",
    "q_identity_discrete",
    "stability_bound_check",
    "yano_check",
]

HOMOTHETY_RESIDUAL_TOL = 0.01
DOMAIN_DENSITY = 1.0


class NotHomotheticError(ValueError):
    """The map's pullback metric is not close enough to a constant multiple
    of the domain metric for the reduction to apply."""


@dataclass(frozen=True)
class CanonicalFields:
    """Conformal gradient and rotation fields of the unit n-sphere.

    Conformal fields are v_a(y) = e_a - <e_a, y> y for the ambient basis
    vectors e_a; rotation fields are y -> y_a e_b - y_b e_a over index pairs
    a < b.  Counts are n+1 and n(n+1)/2.
    """

    n: int

    @property
    def conformal_labels(self) -> list[str]:
        return [f"conformal_{a}" for a in range(self.n + 1)]

    @property
    def killing_labels(self) -> list[str]:
        return [f"killing_{a}{b}" for a in range(self.n + 1)
                for b in range(a + 1, self.n + 1)]

    @property
    def num_conformal(self) -> int:
        return self.n + 1

    @property
    def num_killing(self) -> int:
        return self.n * (self.n + 1) // 2

    def conformal_field(self, a: int, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        out = -points * points[:, a][:, None]
        out[:, a] += 1.0
        return out

    def killing_field(self, a: int, b: int, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        out = np.zeros_like(points)
        out[:, b] = points[:, a]
        out[:, a] = -points[:, b]
        return out

    def sample(self, points: np.ndarray) -> dict[str, np.ndarray]:
        """All fields evaluated at the given sphere points, keyed by label."""
        fields: dict[str, np.ndarray] = {}
        for a in range(self.n + 1):
            fields[f"conformal_{a}"] = self.conformal_field(a, points)
        for a in range(self.n + 1):
            for b in range(a + 1, self.n + 1):
                fields[f"killing_{a}{b}"] = self.killing_field(a, b, points)
        return fields


def canonical_fields(n: int) -> CanonicalFields:
    if n < 2:
        raise ValueError(f"sphere dimension must be >= 2, got {n}")
    return CanonicalFields(n=int(n))


# ---------------------------------------------------------------------------
# identity-map second variation in domain calculus
# ---------------------------------------------------------------------------

def _q_identity_at(mesh: DomainMesh, profile: FProfile, x: np.ndarray,
                   t_star: float) -> float:
    _, f1, f2 = evaluate(profile, t_star)
    a = covariant_derivative(mesh, x)
    div = np.trace(a, axis1=1, axis2=2)
    lie = a + np.swapaxes(a, 1, 2)
    half_lie_sq = 0.5 * np.einsum("fij,fij->f", lie, lie)
    return float(f2) * integrate(mesh, div ** 2) \
        + float(f1) * integrate(mesh, half_lie_sq - div ** 2)


def q_identity_discrete(mesh: DomainMesh, profile: FProfile,
                        x: np.ndarray) -> float:
    """Second variation of the identity map of a 2-domain along the field x:

        F''(1) int (div x)^2 + F'(1) int [ 1/2 |L_x g|^2 - (div x)^2 ]

    with the profile derivatives taken at the identity's density m/2 = 1.
    This is the divergence-squared form, the one the generic machinery
    produces since the differential of the identity pairs the covariant
    derivative into exactly div x.
    """
    return _q_identity_at(mesh, profile, x, DOMAIN_DENSITY)


def q_identity_conformal_closed(m: int, profile: FProfile,
                                normalize: bool = False) -> float:
    """Closed-form identity-map second variation on a conformal field of
    the round m-sphere: coefficient times the exact integral of div^2.

    coefficient = F''(m/2) + ((2 - m)/m) F'(m/2); the integral is
    m^2 vol(S^m)/(m+1).  With normalize the bare coefficient is returned,
    whose sign alone decides stability along these fields.
    """
    if m < 2:
        raise ValueError(f"sphere dimension must be >= 2, got {m}")
    _, f1, f2 = evaluate(profile, m / 2.0)
    coefficient = float(f2) + (2.0 - m) / m * float(f1)
    if normalize:
        return coefficient
    volume = 2.0 * math.pi ** ((m + 1) / 2.0) / math.gamma((m + 1) / 2.0)
    return coefficient * m * m * volume / (m + 1.0)


def yano_check(mesh: DomainMesh, x: np.ndarray):
    """Both sides of the Yano integral identity on a closed surface:

        int [ |grad x|^2 - Ric(x, x) ]  =  int [ 1/2 |L_x g|^2 - (div x)^2 ]

    evaluated with two independent discretizations.  Returns
    (lhs, rhs, rel_err); the error is normalized by a positive quadrature
    scale so Killing fields (both sides near zero) do not divide by zero.
    """
    a = covariant_derivative(mesh, x)
    grad_sq = np.einsum("fij,fij->f", a, a)
    xbar = mesh.face_mean(np.asarray(x, dtype=float))
    xbar_sq = np.einsum("fc,fc->f", xbar, xbar)
    lhs = integrate(mesh, grad_sq - mesh.ricci_coeff * xbar_sq)

    div = np.trace(a, axis1=1, axis2=2)
    lie = a + np.swapaxes(a, 1, 2)
    rhs = integrate(mesh, 0.5 * np.einsum("fij,fij->f", lie, lie) - div ** 2)

    scale = integrate(mesh, grad_sq + mesh.ricci_coeff * xbar_sq) \
        + integrate(mesh, 0.5 * np.einsum("fij,fij->f", lie, lie) + div ** 2)
    denom = max(abs(lhs), abs(rhs), scale)
    rel_err = abs(lhs - rhs) / denom if denom > 0.0 else 0.0
    return float(lhs), float(rhs), float(rel_err)


def stability_bound_check(mesh: DomainMesh, profile: FProfile,
                          x: np.ndarray) -> float:
    """Slack of the identity-map stability lower bound on a 2-domain.

    The divergence term of the second variation is split across the
    principal directions of L_x g (its eigenvalues halve into the diagonal
    entries of the covariant derivative there), which is the reading under
    which the bound is saturated exactly by conformal fields:

        margin = int F''(1) [ 1/4 sum_i lam_i^2 - 1/2 (div x)^2 ]
               + int F'(1)  [ 1/2 |L_x g|^2 - (div x)^2 ]

    Nonnegative facewise whenever F'(1) + F''(1)/2 >= 0.
    """
    _, f1, f2 = evaluate(profile, DOMAIN_DENSITY)
    a = covariant_derivative(mesh, x)
    div = np.trace(a, axis1=1, axis2=2)
    lie = a + np.swapaxes(a, 1, 2)
    lam = np.linalg.eigvalsh(lie)
    diag_term = 0.25 * np.einsum("fi,fi->f", lam, lam) - 0.5 * div ** 2
    slack_term = 0.5 * np.einsum("fij,fij->f", lie, lie) - div ** 2
    return float(f2) * integrate(mesh, diag_term) \
        + float(f1) * integrate(mesh, slack_term)


# ---------------------------------------------------------------------------
# homothetic reduction
# ---------------------------------------------------------------------------

def pushforward_section(mesh: DomainMesh, sphere_map: SphereMap,
                        x: np.ndarray) -> np.ndarray:
    """The image dphi(x) of a domain tangent field, as a vertex section.

    The pushforward is facewise (pair the in-plane components of the face
    average of x with the differential rows), then distributed back to
    vertices by mass-weighted averaging and projected tangent to the target.
    """
    x = np.asarray(x, dtype=float)
    geom = map_geometry(mesh, sphere_map)
    xbar = mesh.face_mean(x)
    comp1 = np.einsum("fc,fc->f", xbar, mesh.frame_e1)
    comp2 = np.einsum("fc,fc->f", xbar, mesh.frame_e2)
    push = comp1[:, None] * geom.dphi[:, 0] + comp2[:, None] * geom.dphi[:, 1]

    out = np.zeros_like(sphere_map.values)
    weight = (mesh.face_area / 3.0)[:, None] * push
    for corner in range(3):
        np.add.at(out, mesh.faces[:, corner], weight)
    out /= mesh.vertex_mass[:, None]
    return project_tangent(sphere_map, out)


def homothetic_reduction_check(mesh: DomainMesh, sphere_map: SphereMap,
                               profile: FProfile, x: np.ndarray):
    """Compare the second variation along dphi(x) with its identity-map
    reduction k^2 Q_I(x), the identity form taken at the rescaled density
    t* = m k^2 / 2.  Returns (lhs, rhs, rel_err).

    Raises NotHomotheticError when the pullback metric deviates from k^2 g
    by more than 1% in relative Frobenius norm.
    """
    fit = homothety_fit(mesh, map_geometry(mesh, sphere_map))
    if not fit.homothetic or fit.residual > HOMOTHETY_RESIDUAL_TOL:
        raise NotHomotheticError(
            f"pullback metric residual {fit.residual:.3e} exceeds "
            f"{HOMOTHETY_RESIDUAL_TOL}")

    section = pushforward_section(mesh, sphere_map, x)
    form = SecondVariationForm(mesh, sphere_map, profile)
    lhs = form.q(section)
    rhs = fit.k2 * _q_identity_at(mesh, profile, x, fit.k2)
    scale = max(abs(lhs), abs(rhs), form.magnitude(section))
    rel_err = abs(lhs - rhs) / scale if scale > 0.0 else 0.0
    return float(lhs), float(rhs), float(rel_err)
