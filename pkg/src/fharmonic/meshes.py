"""Triangulated domain surfaces and their piecewise-linear calculus.

Two closed domains are supported:

* ``RoundSphere2`` -- the unit sphere in R^3, triangulated by recursive
  subdivision of an icosahedron with vertices re-projected onto the sphere.
* ``FlatTorus2`` -- the square torus R^2 / (2 pi Z)^2 on a regular N x N
  grid, each cell split along one diagonal.  Chart coordinate differences
  are wrapped to (-pi, pi] before any differencing.

Functions here implement the first-order calculus every other module rests
on: gradients of piecewise-linear interpolants are constant per face and
are expressed against a per-face orthonormal tangent frame {e1, e2}.  On
the sphere, derivative rows are paired with the in-plane frame axes, which
projects along the face normal; ambient-linear fields (rotations) therefore
differentiate exactly.  Face areas are flat-triangle areas, so the total
sphere area converges to 4 pi from below under refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DomainMesh",
    "build_domain",
    "build_flat_torus",
    "build_icosphere",
    "cauchy_schwarz_check",
    "covariant_derivative",
    "divergence",
    "export_off",
    "integrate",
    "lie_derivative_metric",
    "tangent_noise",
]

TWO_PI = 2.0 * np.pi


@dataclass
class DomainMesh:
    """A closed triangulated surface with precomputed face geometry.

    Attributes
    ----------
    kind : str
        "RoundSphere2" or "FlatTorus2".
    vertices : ndarray
        (V, 3) unit vectors for the sphere, (V, 2) chart points in
        [0, 2 pi)^2 for the torus.
    faces : ndarray
        (F, 3) vertex indices, consistently oriented (outward / positively
        in the chart).
    face_area : ndarray
        (F,) flat-triangle areas.
    frame_e1, frame_e2 : ndarray
        (F, d) orthonormal tangent pair spanning each face.
    face_normal : ndarray or None
        (F, 3) outward unit normals (sphere only).
    face_point : ndarray
        (F, d) evaluation point per face: the normalized flat centroid on
        the sphere, the chart centroid on the torus.
    einv : ndarray
        (F, 2, 2) inverse edge matrices; einv @ [f1-f0, f2-f0] gives the
        frame components of the gradient of a linear interpolant.
    vertex_mass : ndarray
        (V,) lumped masses (one third of incident face area).
    ricci_coeff : float
        Ricci curvature coefficient of the smooth domain (Ric = c * g):
        1 on the unit sphere, 0 on the flat torus.
    """

    kind: str
    vertices: np.ndarray
    faces: np.ndarray
    face_area: np.ndarray
    frame_e1: np.ndarray
    frame_e2: np.ndarray
    face_normal: np.ndarray | None
    face_point: np.ndarray
    einv: np.ndarray
    vertex_mass: np.ndarray
    ricci_coeff: float
    resolution: int = 0
    _frames: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._frames = np.stack([self.frame_e1, self.frame_e2], axis=1)

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def num_faces(self) -> int:
        return self.faces.shape[0]

    @property
    def embed_dim(self) -> int:
        return self.vertices.shape[1]

    def pl_rows(self, values: np.ndarray) -> np.ndarray:
        """Per-face derivative rows of the piecewise-linear interpolant.

        values has shape (V,) or (V, k); the result has shape (F, 2) or
        (F, 2, k), row i holding the derivative along frame axis e_i.
        """
        vals = np.asarray(values, dtype=float)
        d1 = vals[self.faces[:, 1]] - vals[self.faces[:, 0]]
        d2 = vals[self.faces[:, 2]] - vals[self.faces[:, 0]]
        diffs = np.stack([d1, d2], axis=1)
        return np.einsum("fij,fj...->fi...", self.einv, diffs)

    def face_mean(self, values: np.ndarray) -> np.ndarray:
        """Average of the three vertex values on each face."""
        vals = np.asarray(values, dtype=float)
        return (vals[self.faces[:, 0]] + vals[self.faces[:, 1]]
                + vals[self.faces[:, 2]]) / 3.0


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def build_icosphere(level: int) -> DomainMesh:
    """Subdivide an icosahedron `level` times and project to the unit sphere.

    Vertex/face counts are 10 * 4^level + 2 and 20 * 4^level.
    """
    if level < 0:
        raise ValueError("subdivision level must be >= 0")
    g = (1.0 + np.sqrt(5.0)) / 2.0
    verts = np.array([
        [-1, g, 0], [1, g, 0], [-1, -g, 0], [1, -g, 0],
        [0, -1, g], [0, 1, g], [0, -1, -g], [0, 1, -g],
        [g, 0, -1], [g, 0, 1], [-g, 0, -1], [-g, 0, 1],
    ], dtype=float)
    verts /= np.linalg.norm(verts, axis=1, keepdims=True)
    faces = np.array([
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ], dtype=np.int64)

    for _ in range(level):
        verts, faces = _subdivide(verts, faces)

    # enforce outward orientation
    p0, p1, p2 = verts[faces[:, 0]], verts[faces[:, 1]], verts[faces[:, 2]]
    out = np.einsum("fi,fi->f", np.cross(p1 - p0, p2 - p0), (p0 + p1 + p2) / 3.0)
    flip = out < 0.0
    faces[flip] = faces[flip][:, [0, 2, 1]]

    return _finish_sphere(verts, faces, level)


def _subdivide(verts: np.ndarray, faces: np.ndarray):
    """One 1-to-4 refinement with midpoints pushed onto the sphere."""
    cache: dict[tuple[int, int], int] = {}
    vert_list = [v for v in verts]

    def midpoint(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        idx = cache.get(key)
        if idx is None:
            m = vert_list[a] + vert_list[b]
            m /= np.linalg.norm(m)
            idx = len(vert_list)
            vert_list.append(m)
            cache[key] = idx
        return idx

    new_faces = []
    for a, b, c in faces:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        new_faces.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]])
    return np.array(vert_list), np.array(new_faces, dtype=np.int64)


def _finish_sphere(verts: np.ndarray, faces: np.ndarray, level: int) -> DomainMesh:
    p0, p1, p2 = verts[faces[:, 0]], verts[faces[:, 1]], verts[faces[:, 2]]
    d1, d2 = p1 - p0, p2 - p0
    normal = np.cross(d1, d2)
    norm_len = np.linalg.norm(normal, axis=1)
    area = 0.5 * norm_len
    normal = normal / norm_len[:, None]

    e1 = d1 / np.linalg.norm(d1, axis=1, keepdims=True)
    e2 = d2 - np.einsum("fi,fi->f", d2, e1)[:, None] * e1
    e2 /= np.linalg.norm(e2, axis=1, keepdims=True)

    einv = _edge_inverse(d1, d2, e1, e2)
    center = (p0 + p1 + p2) / 3.0
    face_point = center / np.linalg.norm(center, axis=1, keepdims=True)

    return DomainMesh(
        kind="RoundSphere2", vertices=verts, faces=faces, face_area=area,
        frame_e1=e1, frame_e2=e2, face_normal=normal, face_point=face_point,
        einv=einv, vertex_mass=_lump_mass(len(verts), faces, area),
        ricci_coeff=1.0, resolution=level,
    )


def build_flat_torus(n: int) -> DomainMesh:
    """Regular n x n grid on [0, 2 pi)^2 with each cell split by a diagonal.

    Total area is exactly 4 pi^2; all faces are congruent right triangles.
    """
    if n < 4:
        raise ValueError("torus grid resolution must be >= 4")
    h = TWO_PI / n
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    verts = np.stack([ii.ravel() * h, jj.ravel() * h], axis=1)

    def vid(i, j):
        return (i % n) * n + (j % n)

    faces = []
    for i in range(n):
        for j in range(n):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            faces.append([a, b, c])
            faces.append([a, c, d])
    faces = np.array(faces, dtype=np.int64)

    p0, p1, p2 = verts[faces[:, 0]], verts[faces[:, 1]], verts[faces[:, 2]]
    d1 = wrap_angle(p1 - p0)
    d2 = wrap_angle(p2 - p0)
    cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    if np.any(cross <= 0.0):
        raise AssertionError("torus faces must be positively oriented")
    area = 0.5 * cross

    f = faces.shape[0]
    e1 = np.tile(np.array([1.0, 0.0]), (f, 1))
    e2 = np.tile(np.array([0.0, 1.0]), (f, 1))
    einv = _edge_inverse(d1, d2, e1, e2)
    face_point = np.mod(p0 + (d1 + d2) / 3.0, TWO_PI)

    return DomainMesh(
        kind="FlatTorus2", vertices=verts, faces=faces, face_area=area,
        frame_e1=e1, frame_e2=e2, face_normal=None, face_point=face_point,
        einv=einv, vertex_mass=_lump_mass(len(verts), faces, area),
        ricci_coeff=0.0, resolution=n,
    )


def build_domain(kind: str, resolution: int) -> DomainMesh:
    if kind == "RoundSphere2":
        return build_icosphere(resolution)
    if kind == "FlatTorus2":
        return build_flat_torus(resolution)
    raise ValueError(f"unknown domain kind {kind!r}")


def wrap_angle(x: np.ndarray) -> np.ndarray:
    """Wrap chart differences into (-pi, pi]."""
    return x - TWO_PI * np.ceil(x / TWO_PI - 0.5)


def _edge_inverse(d1, d2, e1, e2) -> np.ndarray:
    """Inverse of the 2x2 edge matrix expressed in the face frame."""
    a = np.einsum("fi,fi->f", d1, e1)
    b = np.einsum("fi,fi->f", d1, e2)
    c = np.einsum("fi,fi->f", d2, e1)
    d = np.einsum("fi,fi->f", d2, e2)
    det = a * d - b * c
    einv = np.empty((len(a), 2, 2))
    einv[:, 0, 0] = d / det
    einv[:, 0, 1] = -b / det
    einv[:, 1, 0] = -c / det
    einv[:, 1, 1] = a / det
    return einv


def _lump_mass(nv: int, faces: np.ndarray, area: np.ndarray) -> np.ndarray:
    mass = np.zeros(nv)
    for k in range(3):
        np.add.at(mass, faces[:, k], area / 3.0)
    return mass


# ---------------------------------------------------------------------------
# tangent-field calculus
# ---------------------------------------------------------------------------

def _require_tangent(mesh: DomainMesh, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.shape != (mesh.num_vertices, mesh.embed_dim):
        raise ValueError(f"tangent field must have shape "
                         f"{(mesh.num_vertices, mesh.embed_dim)}, got {X.shape}")
    if mesh.kind == "RoundSphere2":
        radial = np.abs(np.einsum("vi,vi->v", X, mesh.vertices))
        bound = 1e-10 * max(1.0, float(np.max(np.linalg.norm(X, axis=1), initial=0.0)))
        if np.any(radial > bound):
            raise ValueError("field has a radial component at some vertex")
    return X


def covariant_derivative(mesh: DomainMesh, X: np.ndarray) -> np.ndarray:
    """Per-face matrix A with A[i, j] = <nabla_{e_i} X, e_j>.

    The derivative of the linear interpolant is paired against the in-plane
    frame, which realizes the Levi-Civita connection to first order on the
    sphere and exactly on the flat torus.
    """
    X = _require_tangent(mesh, X)
    rows = mesh.pl_rows(X)
    return np.einsum("fid,fjd->fij", rows, mesh._frames)


def divergence(mesh: DomainMesh, X: np.ndarray) -> np.ndarray:
    """Per-face divergence, the trace of the covariant derivative."""
    a = covariant_derivative(mesh, X)
    return a[:, 0, 0] + a[:, 1, 1]


def lie_derivative_metric(mesh: DomainMesh, X: np.ndarray) -> np.ndarray:
    """Per-face Lie derivative of the metric, (L_X g)_ij = A_ij + A_ji.

    Its trace equals 2 * divergence(X) exactly, by construction.
    """
    a = covariant_derivative(mesh, X)
    return a + np.swapaxes(a, 1, 2)


def cauchy_schwarz_check(mesh: DomainMesh, X: np.ndarray) -> np.ndarray:
    """Per-face margin |L_X g|^2 - (4/m)(div X)^2, nonnegative in dimension
    m = 2 with equality exactly on the conformal cone."""
    a = covariant_derivative(mesh, X)
    lie = a + np.swapaxes(a, 1, 2)
    div = a[:, 0, 0] + a[:, 1, 1]
    lie_sq = np.einsum("fij,fij->f", lie, lie)
    return lie_sq - 2.0 * div ** 2


def integrate(mesh: DomainMesh, density: np.ndarray) -> float:
    """Integral of a per-face density against the face areas."""
    density = np.asarray(density, dtype=float)
    if density.shape != (mesh.num_faces,):
        raise ValueError("density must be per-face")
    return float(np.dot(density, mesh.face_area))


def tangent_noise(mesh: DomainMesh, seed: int, amplitude: float = 1.0) -> np.ndarray:
    """Seeded random tangent field (ambient Gaussian projected per vertex)."""
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((mesh.num_vertices, mesh.embed_dim))
    if mesh.kind == "RoundSphere2":
        raw -= np.einsum("vi,vi->v", raw, mesh.vertices)[:, None] * mesh.vertices
    return amplitude * raw


def export_off(mesh: DomainMesh) -> str:
    """Serialize as OFF text; torus charts are embedded at z = 0."""
    lines = ["OFF", f"{mesh.num_vertices} {mesh.num_faces} 0"]
    verts = mesh.vertices
    if mesh.embed_dim == 2:
        verts = np.column_stack([verts, np.zeros(mesh.num_vertices)])
    for v in verts:
        lines.append(f"{v[0]:.17g} {v[1]:.17g} {v[2]:.17g}")
    for f in mesh.faces:
        lines.append(f"3 {f[0]} {f[1]} {f[2]}")
    return "\n".join(lines) + "\n"
