"""Energy, tension residual, gradient flow, and second-variation forms.

The discrete energy is the face-area quadrature of F(t) with t the
piecewise-linear energy density.  The tension residual is the exact
(negative, mass-normalized, tangentially projected) gradient of that
discrete energy, so finite differences of the energy match the residual to
roundoff.  The second-variation form Q is assembled per face from

    F''(t) <grad w, dphi>^2
    + F'(t) ( |grad w|^2 - sum_i R(w, dphi(e_i), dphi(e_i), w) )

with the curvature term of the round target sphere written through the
Gauss equation, R(w, X, X, w) = |X|^2 |w|^2 - <X, w>^2.  Index reports
diagonalize the polarization of Q over a finite field family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .meshes import DomainMesh
from .profiles import FProfile, evaluate
from .spheremaps import (SphereMap, conformal_section, map_geometry,
                         project_tangent, require_section)

__all__ = [
    "IndexReport",
    "NoConvergenceError",
    "ResidualField",
    "SizeCapError",
    "SolveResult",
    "conformal_cross_check",
    "conformal_index_bound",
    "energy_gradient",
    "f_energy",
    "full_hessian_index",
    "hessian_on_fields",
    "q_conformal_closed",
    "second_variation_generic",
    "solve_f_harmonic",
]

MAX_BACKTRACKS = 40
NEGATIVE_COUNT_REL_TOL = 1e-3
DEFAULT_SIZE_CAP = 2000


class NoConvergenceError(RuntimeError):
    """Gradient flow stopped before reaching the residual tolerance."""

    def __init__(self, residual_sup: float, iterations: int):
        super().__init__(
            f"no convergence after {iterations} iterations; "
            f"residual sup-norm {residual_sup:.3e}")
        self.residual_sup = residual_sup
        self.iterations = iterations


class SizeCapError(ValueError):
    """Full Hessian request exceeds the configured basis-size cap."""


@dataclass
class ResidualField:
    """Discrete tension field: per-vertex descent direction and its sup norm."""

    values: np.ndarray
    sup_norm: float


@dataclass
class SolveResult:
    map: SphereMap
    iterations: int
    final_residual: float
    energy_history: list[float]


class SecondVariationForm:
    """Cached per-face data needed to evaluate Q(w) repeatedly."""

    def __init__(self, mesh: DomainMesh, sphere_map: SphereMap,
                 profile: FProfile):
        geom = map_geometry(mesh, sphere_map)
        self.mesh = mesh
        self.map = sphere_map
        self.dphi = geom.dphi
        self.density = geom.density
        self.face_value = geom.face_value
        _, f1, f2 = evaluate(profile, self.density)
        self.f1 = np.asarray(f1)
        self.f2 = np.asarray(f2)

    def parts(self, w: np.ndarray, face_idx=None):
        """The three quadrature pieces of Q(w) = second + grad - curvature.

        face_idx restricts the quadrature to a subset of faces; since every
        piece is a sum of per-face terms this slices exactly.
        """
        mesh = self.mesh
        idx = slice(None) if face_idx is None else face_idx
        fc = mesh.faces[idx]
        einv = mesh.einv[idx]
        pv = self.face_value[idx]
        dphi = self.dphi[idx]
        area = mesh.face_area[idx]

        d1 = w[fc[:, 1]] - w[fc[:, 0]]
        d2 = w[fc[:, 2]] - w[fc[:, 0]]
        rows = np.einsum("fij,fjc->fic", einv, np.stack([d1, d2], axis=1))
        rows = rows - np.einsum("fic,fc->fi", rows, pv)[:, :, None] * pv[:, None, :]

        inner = np.einsum("fic,fic->f", rows, dphi)
        grad_sq = np.einsum("fic,fic->f", rows, rows)

        wbar = (w[fc[:, 0]] + w[fc[:, 1]] + w[fc[:, 2]]) / 3.0
        wbar = wbar - np.einsum("fc,fc->f", wbar, pv)[:, None] * pv
        wbar_sq = np.einsum("fc,fc->f", wbar, wbar)
        along = np.einsum("fic,fc->fi", dphi, wbar)
        curvature = (2.0 * self.density[idx] * wbar_sq
                     - np.einsum("fi,fi->f", along, along))

        second = float(np.dot(area, self.f2[idx] * inner ** 2))
        grad = float(np.dot(area, self.f1[idx] * grad_sq))
        curv = float(np.dot(area, self.f1[idx] * curvature))
        return second, grad, curv

    def q(self, w: np.ndarray, face_idx=None) -> float:
        second, grad, curv = self.parts(w, face_idx)
        return second + grad - curv

    def magnitude(self, w: np.ndarray) -> float:
        """Sum of absolute quadrature pieces, a robust noise scale for Q(w)."""
        second, grad, curv = self.parts(w)
        return abs(second) + grad + curv


# ---------------------------------------------------------------------------
# energy and first variation
# ---------------------------------------------------------------------------

def f_energy(mesh: DomainMesh, sphere_map: SphereMap, profile: FProfile) -> float:
    """Total energy: face-area quadrature of F(density)."""
    geom = map_geometry(mesh, sphere_map)
    f, _, _ = evaluate(profile, geom.density)
    return float(np.dot(mesh.face_area, f))


def energy_gradient(mesh: DomainMesh, sphere_map: SphereMap,
                    profile: FProfile) -> ResidualField:
    """Discrete tension field r = -(grad E) / mass, projected tangent.

    r is the exact gradient of the discrete energy: for any section w,
    d/ds E(Pi(phi + s w)) at s = 0 equals -sum_x mass(x) <w(x), r(x)>.
    """
    geom = map_geometry(mesh, sphere_map)
    _, f1, _ = evaluate(profile, geom.density)

    # dE/d(vertex value): scatter area * F'(t) * <dphi, d(hat)> per face corner
    g1 = np.einsum("f,fi,fic->fc", mesh.face_area * f1, mesh.einv[:, :, 0], geom.dphi)
    g2 = np.einsum("f,fi,fic->fc", mesh.face_area * f1, mesh.einv[:, :, 1], geom.dphi)
    g0 = -(g1 + g2)

    grad = np.zeros_like(sphere_map.values)
    np.add.at(grad, mesh.faces[:, 0], g0)
    np.add.at(grad, mesh.faces[:, 1], g1)
    np.add.at(grad, mesh.faces[:, 2], g2)

    residual = -grad / mesh.vertex_mass[:, None]
    residual = project_tangent(sphere_map, residual)
    sup = float(np.max(np.linalg.norm(residual, axis=1)))
    return ResidualField(values=residual, sup_norm=sup)


def _default_step(mesh: DomainMesh, sphere_map: SphereMap,
                  profile: FProfile) -> float:
    geom = map_geometry(mesh, sphere_map)
    _, f1, _ = evaluate(profile, geom.density)
    return 1.0 / (float(np.max(f1 * 2.0 * geom.density)) + 1.0)


def solve_f_harmonic(mesh: DomainMesh, start: SphereMap, profile: FProfile,
                     tol: float = 1e-3, max_iter: int = 500,
                     step_rule: float | None = None) -> SolveResult:
    """Projected gradient descent with a halving line search.

    Each accepted step moves along the tension residual, renormalizes
    vertexwise, and never increases the energy.  The trial step is a
    spectral (Barzilai-Borwein) estimate from the last accepted step,
    seeded with the scale-aware default 1/(max F'(t)|dphi|^2 + 1); the
    monotone line search keeps either choice safe.  Plain descent with the
    default step needs O(1/h^2) iterations on fine meshes, which is what
    the spectral estimate avoids.  Raises NoConvergenceError (carrying the
    last residual) if the sup-norm tolerance is not reached within max_iter
    accepted steps.
    """
    phi = start.values.copy()
    current = SphereMap(phi, kind=start.kind)
    energy = f_energy(mesh, current, profile)
    history = [energy]
    res = energy_gradient(mesh, current, profile)
    mass = mesh.vertex_mass[:, None]
    prev_phi: np.ndarray | None = None
    prev_res: np.ndarray | None = None

    iterations = 0
    while res.sup_norm > tol:
        if iterations >= max_iter:
            raise NoConvergenceError(res.sup_norm, iterations)
        if step_rule is not None:
            trial = step_rule
        else:
            trial = _default_step(mesh, current, profile)
            if prev_phi is not None:
                d = phi - prev_phi
                y = prev_res - res.values
                dy = float(np.sum(mass * d * y))
                yy = float(np.sum(mass * y * y))
                if dy > 0.0 and yy > 0.0:
                    trial = dy / yy
        accepted = False
        for _ in range(MAX_BACKTRACKS):
            cand_vals = phi + trial * res.values
            cand_vals /= np.linalg.norm(cand_vals, axis=1, keepdims=True)
            cand = SphereMap(cand_vals, kind=start.kind)
            cand_energy = f_energy(mesh, cand, profile)
            if cand_energy <= energy:
                accepted = True
                break
            trial *= 0.5
        if not accepted:
            raise NoConvergenceError(res.sup_norm, iterations)
        prev_phi, prev_res = phi, res.values
        phi, current, energy = cand_vals, cand, cand_energy
        history.append(energy)
        iterations += 1
        res = energy_gradient(mesh, current, profile)

    return SolveResult(map=current, iterations=iterations,
                       final_residual=res.sup_norm, energy_history=history)


# ---------------------------------------------------------------------------
# second variation
# ---------------------------------------------------------------------------

def second_variation_generic(mesh: DomainMesh, sphere_map: SphereMap,
                             profile: FProfile, w: np.ndarray) -> float:
    """Quadrature of the second-variation integrand at a section w."""
    w = require_section(sphere_map, w)
    return SecondVariationForm(mesh, sphere_map, profile).q(w)


def q_conformal_closed(mesh: DomainMesh, sphere_map: SphereMap,
                       profile: FProfile, v: np.ndarray) -> float:
    """Closed form of Q on the conformal section of an ambient vector v:

        2 * int (t F'' + F') |d<v, phi>|^2  -  int F' |dphi|^2 |v - <v,phi>phi|^2

    valid at critical points; used to cross-validate the generic quadrature.
    """
    v = np.asarray(v, dtype=float)
    geom = map_geometry(mesh, sphere_map)
    _, f1, f2 = evaluate(profile, geom.density)
    along = geom.dphi @ v
    dscal_sq = np.einsum("fi,fi->f", along, along)
    vbar_sq = float(v @ v) - (geom.face_value @ v) ** 2
    first = 2.0 * np.dot(mesh.face_area, (geom.density * f2 + f1) * dscal_sq)
    second = np.dot(mesh.face_area, f1 * 2.0 * geom.density * vbar_sq)
    return float(first - second)


def conformal_cross_check(mesh: DomainMesh, sphere_map: SphereMap,
                          profile: FProfile, v: np.ndarray):
    """Compare the generic quadrature with the closed form on one conformal
    section.  Returns (q_generic, q_closed, rel_err) with the error
    normalized by the larger of the two magnitudes and the absolute
    quadrature scale of the generic form."""
    w = conformal_section(sphere_map, v)
    form = SecondVariationForm(mesh, sphere_map, profile)
    q_gen = form.q(w)
    q_closed = q_conformal_closed(mesh, sphere_map, profile, v)
    scale = max(abs(q_gen), abs(q_closed), form.magnitude(w))
    rel_err = abs(q_gen - q_closed) / scale if scale > 0.0 else 0.0
    return q_gen, q_closed, rel_err


# ---------------------------------------------------------------------------
# index reports
# ---------------------------------------------------------------------------

@dataclass
class IndexReport:
    """Hessian of the energy restricted to a finite family of sections."""

    basis: list[str]
    hessian: np.ndarray
    eigenvalues: np.ndarray
    negative_count: int
    tol_eig: float
    residual_sup: float

    def to_dict(self) -> dict:
        return {
            "basis": list(self.basis),
            "hessian": [[float(x) for x in row] for row in self.hessian],
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "negative_count": int(self.negative_count),
            "tol_eig": float(self.tol_eig),
            "residual_sup": float(self.residual_sup),
        }


def _finish_report(basis, hessian, tol_eig, residual_sup) -> IndexReport:
    eigenvalues = np.linalg.eigvalsh(hessian) if len(basis) else np.array([])
    max_abs = float(np.max(np.abs(eigenvalues), initial=0.0))
    tol_abs = NEGATIVE_COUNT_REL_TOL * max_abs if tol_eig is None else float(tol_eig)
    negative = int(np.sum(eigenvalues < -tol_abs))
    return IndexReport(basis=basis, hessian=hessian, eigenvalues=eigenvalues,
                       negative_count=negative, tol_eig=tol_abs,
                       residual_sup=residual_sup)


def hessian_on_fields(mesh: DomainMesh, sphere_map: SphereMap,
                      profile: FProfile, fields, labels=None,
                      tol_eig: float | None = None) -> IndexReport:
    """Polarize Q over the given sections: H_ab = (Q(a+b) - Q(a) - Q(b)) / 2.

    The upper triangle is computed and mirrored, so H is exactly symmetric.
    tol_eig = None resolves to 1e-3 of the largest eigenvalue magnitude.
    """
    fields = [require_section(sphere_map, w) for w in fields]
    k = len(fields)
    if labels is None:
        labels = [f"field_{i}" for i in range(k)]
    form = SecondVariationForm(mesh, sphere_map, profile)
    diag = [form.q(w) for w in fields]
    hessian = np.zeros((k, k))
    for a in range(k):
        hessian[a, a] = diag[a]
        for b in range(a + 1, k):
            q_ab = form.q(fields[a] + fields[b])
            hessian[a, b] = 0.5 * (q_ab - diag[a] - diag[b])
            hessian[b, a] = hessian[a, b]
    residual = energy_gradient(mesh, sphere_map, profile).sup_norm
    return _finish_report(list(labels), hessian, tol_eig, residual)


def conformal_index_bound(mesh: DomainMesh, sphere_map: SphereMap,
                          profile: FProfile,
                          tol_eig: float | None = None) -> IndexReport:
    """Index report on the n+1 conformal sections of the ambient basis."""
    dim = sphere_map.ambient_dim
    basis_vectors = np.eye(dim)
    fields = [conformal_section(sphere_map, basis_vectors[a]) for a in range(dim)]
    labels = [f"conformal_{a}" for a in range(dim)]
    return hessian_on_fields(mesh, sphere_map, profile, fields, labels, tol_eig)


def _vertex_tangent_bases(sphere_map: SphereMap) -> np.ndarray:
    """Orthonormal bases of the tangent spaces along the map, shape (V, n, C)."""
    phi = sphere_map.values
    dim = phi.shape[1]
    projector = np.eye(dim)[None, :, :] - phi[:, :, None] * phi[:, None, :]
    # SVD of the projector: the first n singular directions span the tangent space
    u = np.linalg.svd(projector)[0]
    return np.swapaxes(u[:, :, :dim - 1], 1, 2)


def full_hessian_index(mesh: DomainMesh, sphere_map: SphereMap,
                       profile: FProfile, tol_eig: float | None = None,
                       size_cap: int = DEFAULT_SIZE_CAP) -> IndexReport:
    """Index report over all per-vertex coordinate sections.

    The basis pairs every vertex with an orthonormal tangent basis at its
    image; the polarized Hessian entry of two coordinate sections vanishes
    identically unless the vertices share a face, so only shared-face
    restrictions of Q are evaluated.
    """
    nv = mesh.num_vertices
    n = sphere_map.target_dim
    size = nv * n
    if size > size_cap:
        raise SizeCapError(f"full Hessian size {size} exceeds cap {size_cap}")

    bases = _vertex_tangent_bases(sphere_map)
    form = SecondVariationForm(mesh, sphere_map, profile)

    incident: list[list[int]] = [[] for _ in range(nv)]
    for fi, f in enumerate(mesh.faces):
        for v in f:
            incident[v].append(fi)
    edges = set()
    for f in mesh.faces:
        a, b, c = int(f[0]), int(f[1]), int(f[2])
        edges.update({tuple(sorted((a, b))), tuple(sorted((b, c))),
                      tuple(sorted((a, c)))})

    hessian = np.zeros((size, size))
    dim = sphere_map.ambient_dim
    w = np.zeros((nv, dim))

    def q_single(v: int, k: int, faces: list[int]) -> float:
        w[v] = bases[v, k]
        val = form.q(w, np.asarray(faces))
        w[v] = 0.0
        return val

    # same-vertex blocks
    for v in range(nv):
        faces_v = incident[v]
        singles = [q_single(v, k, faces_v) for k in range(n)]
        for k in range(n):
            hessian[v * n + k, v * n + k] = singles[k]
            for l in range(k + 1, n):
                w[v] = bases[v, k] + bases[v, l]
                q_kl = form.q(w, np.asarray(faces_v))
                w[v] = 0.0
                val = 0.5 * (q_kl - singles[k] - singles[l])
                hessian[v * n + k, v * n + l] = val
                hessian[v * n + l, v * n + k] = val

    # adjacent-vertex blocks, restricted to the shared faces
    for x, y in sorted(edges):
        shared = np.asarray([fi for fi in incident[x] if y in mesh.faces[fi]])
        qx = [q_single(x, k, shared) for k in range(n)]
        qy = [q_single(y, l, shared) for l in range(n)]
        for k in range(n):
            for l in range(n):
                w[x] = bases[x, k]
                w[y] = bases[y, l]
                q_ab = form.q(w, shared)
                w[x] = 0.0
                w[y] = 0.0
                val = 0.5 * (q_ab - qx[k] - qy[l])
                hessian[x * n + k, y * n + l] = val
                hessian[y * n + l, x * n + k] = val

    labels = [f"v{v}_t{k}" for v in range(nv) for k in range(n)]
    residual = energy_gradient(mesh, sphere_map, profile).sup_norm
    return _finish_report(labels, hessian, tol_eig, residual)
