"""Unit-sphere-valued maps on domain meshes and their first-order geometry.

A map is stored as one unit vector of R^(n+1) per domain vertex.  The
differential of the piecewise-linear interpolant is constant per face and
everything first-order derives from it: the energy density t = |dphi|^2/2,
the pulled-back metric (the Gram matrix of the differential in the face
frame), and homothety diagnostics.  Sections of the pulled-back tangent
bundle are plain (V, n+1) arrays orthogonal to the map at every vertex.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np

from .meshes import DomainMesh

__all__ = [
    "HomothetyFit",
    "MapGeometry",
    "SphereMap",
    "clifford_torus_map",
    "conformal_section",
    "custom_map",
    "equatorial_map",
    "homothety_fit",
    "identity_map",
    "load_map_json",
    "make_map",
    "map_geometry",
    "perturbed_map",
    "project_tangent",
]

logger = logging.getLogger(__name__)

RENORM_WARN_TOL = 1e-6
SECTION_TOL = 1e-10
HOMOTHETY_DEFAULT_TOL = 0.05


@dataclass
class SphereMap:
    """Vertex samples of a map into the unit sphere S^n in R^(n+1)."""

    values: np.ndarray  # (V, n+1), rows of unit norm
    kind: str = "Custom"

    @property
    def target_dim(self) -> int:
        """n, the dimension of the target sphere."""
        return self.values.shape[1] - 1

    @property
    def ambient_dim(self) -> int:
        return self.values.shape[1]


@dataclass
class MapGeometry:
    """Per-face first-order data of a map.

    dphi[f, i] is the derivative along frame axis e_i (an ambient vector),
    density is t = |dphi|^2 / 2, pullback is the 2x2 Gram matrix of dphi,
    and face_value is the normalized vertex average of the map on the face.
    """

    dphi: np.ndarray       # (F, 2, n+1)
    density: np.ndarray    # (F,)
    pullback: np.ndarray   # (F, 2, 2)
    face_value: np.ndarray  # (F, n+1)


@dataclass(frozen=True)
class HomothetyFit:
    """Least-squares fit of the pullback metric to k^2 * identity."""

    k2: float
    residual: float
    homothetic: bool


def _unit_rows(values: np.ndarray, what: str) -> np.ndarray:
    norms = np.linalg.norm(values, axis=1)
    if np.any(norms == 0.0):
        raise ValueError(f"{what} contains a zero vector")
    deviation = float(np.max(np.abs(norms - 1.0)))
    if deviation > RENORM_WARN_TOL:
        logger.warning("%s renormalized; worst norm deviation %.3e", what, deviation)
    return values / norms[:, None]


def identity_map(mesh: DomainMesh) -> SphereMap:
    """The identity of the round sphere, sampled at the mesh vertices."""
    if mesh.kind != "RoundSphere2":
        raise ValueError("identity map requires a RoundSphere2 mesh")
    return SphereMap(mesh.vertices.copy(), kind="IdentityS2")


def equatorial_map(mesh: DomainMesh, n: int) -> SphereMap:
    """Totally geodesic inclusion of S^2 into S^n, padding with zeros."""
    if mesh.kind != "RoundSphere2":
        raise ValueError("equatorial map requires a RoundSphere2 mesh")
    if n < 2:
        raise ValueError("equatorial target dimension must be >= 2")
    vals = np.zeros((mesh.num_vertices, n + 1))
    vals[:, :3] = mesh.vertices
    return SphereMap(vals, kind="Equatorial")


def clifford_torus_map(mesh: DomainMesh) -> SphereMap:
    """(u, v) -> (cos u, sin u, cos v, sin v) / sqrt(2), into S^3."""
    if mesh.kind != "FlatTorus2":
        raise ValueError("Clifford torus map requires a FlatTorus2 mesh")
    u, v = mesh.vertices[:, 0], mesh.vertices[:, 1]
    vals = np.stack([np.cos(u), np.sin(u), np.cos(v), np.sin(v)], axis=1)
    return SphereMap(vals / np.sqrt(2.0), kind="CliffordTorus")


def perturbed_map(mesh: DomainMesh, base: SphereMap, seed: int,
                  amplitude: float) -> SphereMap:
    """Deterministic tangent perturbation of a base map, renormalized."""
    if amplitude < 0.0:
        raise ValueError("perturbation amplitude must be >= 0")
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(base.values.shape)
    noise -= np.einsum("vi,vi->v", noise, base.values)[:, None] * base.values
    vals = base.values + amplitude * noise
    return SphereMap(vals / np.linalg.norm(vals, axis=1, keepdims=True),
                     kind="Perturbed")


def custom_map(mesh: DomainMesh, values: np.ndarray) -> SphereMap:
    """Wrap explicit per-vertex coordinates; rows are renormalized and a
    warning is logged when any norm deviates from 1 by more than 1e-6."""
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 2 or vals.shape[0] != mesh.num_vertices or vals.shape[1] < 3:
        raise ValueError(
            f"custom map needs shape ({mesh.num_vertices}, >=3), got {vals.shape}")
    return SphereMap(_unit_rows(vals, "custom map"), kind="Custom")


def load_map_json(mesh: DomainMesh, path: str) -> SphereMap:
    """Load a custom map from a JSON array with one row per vertex."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return custom_map(mesh, np.array(data, dtype=float))


def make_map(mesh: DomainMesh, kind: str, parameters: dict | None = None,
             perturbation: dict | None = None) -> SphereMap:
    """Config-driven constructor used by the command-line runner."""
    parameters = dict(parameters or {})
    if kind == "IdentityS2":
        base = identity_map(mesh)
    elif kind == "Equatorial":
        base = equatorial_map(mesh, **parameters)
        parameters = {}
    elif kind == "CliffordTorus":
        base = clifford_torus_map(mesh)
    elif kind == "Custom":
        base = load_map_json(mesh, **parameters)
        parameters = {}
    else:
        raise ValueError(f"unknown map kind {kind!r}")
    if parameters:
        raise ValueError(f"map kind {kind} takes no parameters {parameters}")
    if perturbation is not None:
        base = perturbed_map(mesh, base, **perturbation)
    return base


def map_geometry(mesh: DomainMesh, sphere_map: SphereMap) -> MapGeometry:
    """Differential, energy density, and pullback metric per face."""
    vals = sphere_map.values
    if vals.shape[0] != mesh.num_vertices:
        raise ValueError("map and mesh vertex counts differ")
    dphi = mesh.pl_rows(vals)
    pullback = np.einsum("fic,fjc->fij", dphi, dphi)
    density = 0.5 * (pullback[:, 0, 0] + pullback[:, 1, 1])
    mean = mesh.face_mean(vals)
    face_value = mean / np.linalg.norm(mean, axis=1, keepdims=True)
    return MapGeometry(dphi=dphi, density=density, pullback=pullback,
                       face_value=face_value)


def homothety_fit(mesh: DomainMesh, geom: MapGeometry,
                  tol: float = HOMOTHETY_DEFAULT_TOL) -> HomothetyFit:
    """Area-weighted least-squares fit pullback ~ k^2 * g.

    The residual is the worst face deviation ||pullback - k^2 I|| / k^2;
    a fit with k^2 <= 0 or residual above tol is reported non-homothetic.
    """
    total = float(np.sum(mesh.face_area))
    k2 = float(np.dot(mesh.face_area, geom.density)) / total
    if k2 <= 0.0:
        return HomothetyFit(k2=k2, residual=np.inf, homothetic=False)
    eye = np.eye(2)
    dev = geom.pullback - k2 * eye[None, :, :]
    residual = float(np.sqrt(np.max(np.einsum("fij,fij->f", dev, dev)))) / k2
    return HomothetyFit(k2=k2, residual=residual, homothetic=residual <= tol)


def conformal_section(sphere_map: SphereMap, v: np.ndarray) -> np.ndarray:
    """Section x -> v - <v, phi(x)> phi(x), the tangential part of a fixed
    ambient vector along the map.  Exactly orthogonal to the map."""
    v = np.asarray(v, dtype=float)
    if v.shape != (sphere_map.ambient_dim,):
        raise ValueError(f"ambient vector must have shape ({sphere_map.ambient_dim},)")
    phi = sphere_map.values
    return v[None, :] - (phi @ v)[:, None] * phi


def project_tangent(sphere_map: SphereMap, w: np.ndarray) -> np.ndarray:
    """Remove the radial component of w at every vertex."""
    w = np.asarray(w, dtype=float)
    if w.shape != sphere_map.values.shape:
        raise ValueError("section and map shapes differ")
    phi = sphere_map.values
    return w - np.einsum("vi,vi->v", w, phi)[:, None] * phi


def require_section(sphere_map: SphereMap, w: np.ndarray) -> np.ndarray:
    """Validate that w is orthogonal to the map at every vertex."""
    w = np.asarray(w, dtype=float)
    if w.shape != sphere_map.values.shape:
        raise ValueError("section and map shapes differ")
    radial = np.abs(np.einsum("vi,vi->v", w, sphere_map.values))
    bound = SECTION_TOL * max(1.0, float(np.max(np.linalg.norm(w, axis=1), initial=0.0)))
    if np.any(radial > bound):
        raise ValueError("section has a radial component at some vertex")
    return w
