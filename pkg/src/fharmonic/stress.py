"""Stress-energy tensor of the weighted energy and the index-bound verifier.

Per face, in the orthonormal frame where the domain metric is the identity,
the stress tensor of a map with density t and pullback metric G is

    S = 2 t F'(t) I  -  2 (F'(t) + t F''(t)) G.

Its smallest eigenvalue over all faces classifies the map
(PositiveDefinite / PositiveSemidefinite / Indefinite), and positivity is
what the index-bound theorem trades for at least n+1 negative Hessian
directions among the conformal sections.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .meshes import DomainMesh
from .profiles import FProfile, evaluate
from .spheremaps import SphereMap, map_geometry
from .variation import IndexReport, conformal_index_bound, energy_gradient

__all__ = [
    "StressReport",
    "diagonalization_check",
    "pointwise_inequality6",
    "stress_tensor",
    "verify_theorem1",
]

CLASSIFY_REL_EPS = 1e-10
DEFAULT_RESIDUAL_TOL = 1e-3


@dataclass
class StressReport:
    """Facewise stress tensors with their spectra and a global verdict."""

    tensors: np.ndarray
    eigenvalues: np.ndarray
    s_min: np.ndarray
    global_min: float
    classification: str
    scale: float

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "global_min": float(self.global_min),
            "scale": float(self.scale),
            "s_min": [float(x) for x in self.s_min],
            "eigenvalues": [[float(x) for x in row] for row in self.eigenvalues],
            "tensors": [[[float(x) for x in row] for row in t]
                        for t in self.tensors],
        }


def _stress_data(mesh: DomainMesh, sphere_map: SphereMap, profile: FProfile):
    geom = map_geometry(mesh, sphere_map)
    t = geom.density
    _, f1, f2 = evaluate(profile, t)
    eye = np.eye(2)[None, :, :]
    tensors = (2.0 * t * f1)[:, None, None] * eye \
        - (2.0 * (f1 + t * f2))[:, None, None] * geom.pullback
    scale = float(np.max(2.0 * t * f1, initial=0.0))
    return geom, t, f1, f2, tensors, scale


def stress_tensor(mesh: DomainMesh, sphere_map: SphereMap,
                  profile: FProfile) -> StressReport:
    """Facewise stress tensors, spectra, and the positivity classification.

    The classification threshold is relative: eps = 1e-10 * scale with
    scale = max over faces of |dphi|^2 F'(t).
    """
    _, _, _, _, tensors, scale = _stress_data(mesh, sphere_map, profile)
    eigenvalues = np.linalg.eigvalsh(tensors)
    s_min = eigenvalues[:, 0]
    global_min = float(np.min(s_min))
    eps = CLASSIFY_REL_EPS * scale
    if global_min > eps:
        classification = "PositiveDefinite"
    elif global_min >= -eps:
        classification = "PositiveSemidefinite"
    else:
        classification = "Indefinite"
    return StressReport(tensors=tensors, eigenvalues=eigenvalues, s_min=s_min,
                        global_min=global_min, classification=classification,
                        scale=scale)


def _face_conformal_unit(geom) -> np.ndarray:
    """Per-face unit vector u used to project ambient vectors to sections.

    u is the face value orthogonalized against the span of the differential
    rows, so <dphi(e_i), v - <v,u>u> = <dphi(e_i), v> holds exactly and the
    facewise inequality chain closes without discretization slack.  On a
    degenerate face (value inside the span) u is zero and no projection
    happens there.
    """
    rows = geom.dphi
    u1 = rows[:, 0]
    n1 = np.linalg.norm(u1, axis=1, keepdims=True)
    u1 = np.where(n1 > 1e-300, u1 / np.maximum(n1, 1e-300), 0.0)
    u2 = rows[:, 1] - np.einsum("fc,fc->f", rows[:, 1], u1)[:, None] * u1
    n2 = np.linalg.norm(u2, axis=1, keepdims=True)
    u2 = np.where(n2 > 1e-300, u2 / np.maximum(n2, 1e-300), 0.0)

    mean = geom.face_value
    perp = mean - np.einsum("fc,fc->f", mean, u1)[:, None] * u1 \
        - np.einsum("fc,fc->f", mean, u2)[:, None] * u2
    norm = np.linalg.norm(perp, axis=1, keepdims=True)
    return np.where(norm > 1e-12, perp / np.maximum(norm, 1e-300), 0.0)


def pointwise_inequality6(mesh: DomainMesh, sphere_map: SphereMap,
                          profile: FProfile, v: np.ndarray) -> np.ndarray:
    """Per-face margin of the pointwise spectral bound

        2 (F' + t F'') |dphi_v|^2 - F' |dphi|^2 |vbar|^2  <=  -s_min |vbar|^2

    where vbar is the conformal part of the ambient vector v at the face and
    dphi_v the differential of the scalar <v, phi>.  The bound asserts
    margin >= 0; facewise it is exact up to roundoff whenever
    F' + t F'' >= 0.
    """
    v = np.asarray(v, dtype=float)
    geom, t, f1, f2, tensors, _ = _stress_data(mesh, sphere_map, profile)
    s_min = np.linalg.eigvalsh(tensors)[:, 0]

    u = _face_conformal_unit(geom)
    vbar_sq = float(v @ v) - (u @ v) ** 2
    dphi_v_sq = np.einsum("fi,fi->f", geom.dphi @ v, geom.dphi @ v)
    quad = 2.0 * t * f1 * vbar_sq - 2.0 * (f1 + t * f2) * dphi_v_sq
    return quad - s_min * vbar_sq


def diagonalization_check(mesh: DomainMesh, sphere_map: SphereMap,
                          profile: FProfile) -> float:
    """Max facewise deviation of the spectral link between pullback and stress:
    2 (F' + t F'') mu_i + S_ii = |dphi|^2 F'(t) in the shared eigenframe."""
    geom, t, f1, f2, tensors, scale = _stress_data(mesh, sphere_map, profile)
    mu = np.linalg.eigvalsh(geom.pullback)
    s_eigs = np.linalg.eigvalsh(tensors)
    predicted = (2.0 * t * f1)[:, None] - 2.0 * (f1 + t * f2)[:, None] * mu
    predicted = np.sort(predicted, axis=1)
    return float(np.max(np.abs(predicted - s_eigs), initial=0.0))


def verify_theorem1(mesh: DomainMesh, sphere_map: SphereMap, profile: FProfile,
                    tol_eig: float | None = None,
                    tol_residual: float = DEFAULT_RESIDUAL_TOL) -> dict:
    """Check the stress-positivity index bound on one map.

    The theorem is an implication: a positive definite stress tensor at an
    F-harmonic map forces at least n+1 negative directions among the
    conformal sections.  The report never calls an unmet hypothesis a
    failure; theorem_consistent is false only in the refuting configuration
    (hypothesis met, conclusion absent).
    """
    stress = stress_tensor(mesh, sphere_map, profile)
    index: IndexReport = conformal_index_bound(mesh, sphere_map, profile, tol_eig)
    residual = energy_gradient(mesh, sphere_map, profile).sup_norm
    critical = residual <= tol_residual
    hypothesis_met = critical and stress.classification == "PositiveDefinite"
    required = sphere_map.ambient_dim
    consistent = not (hypothesis_met and index.negative_count < required)
    return {
        "stress": stress,
        "index": index,
        "residual_sup": residual,
        "critical": critical,
        "hypothesis_met": hypothesis_met,
        "required_count": required,
        "theorem_consistent": consistent,
    }
