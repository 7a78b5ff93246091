"""Domain meshes and the piecewise-linear tangent-field calculus."""

import numpy as np
import pytest

from fharmonic import (build_domain, build_flat_torus, build_icosphere,
                       canonical_fields, cauchy_schwarz_check,
                       covariant_derivative, divergence, integrate,
                       lie_derivative_metric, tangent_noise)
from fharmonic.meshes import export_off, wrap_angle

from conftest import generic_field

ICO_AREA = 5.0 * np.sqrt(3.0) * 16.0 / (10.0 + 2.0 * np.sqrt(5.0))


def test_icosphere_counts(make_sphere):
    for level in range(4):
        mesh = make_sphere(level)
        assert mesh.num_vertices == 10 * 4 ** level + 2
        assert mesh.num_faces == 20 * 4 ** level
        assert mesh.kind == "RoundSphere2"


def test_icosahedron_flat_area():
    # flat-triangle area of the unrefined icosahedron, closed form
    mesh = build_icosphere(0)
    assert abs(float(np.sum(mesh.face_area)) - ICO_AREA) < 1e-12


def test_sphere_area_converges(make_sphere):
    errors = [abs(float(np.sum(make_sphere(level).face_area)) - 4.0 * np.pi)
              for level in range(5)]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    assert errors[4] <= 0.005 * 4.0 * np.pi


def test_sphere_vertices_unit_and_faces_outward(make_sphere):
    mesh = make_sphere(2)
    np.testing.assert_allclose(np.linalg.norm(mesh.vertices, axis=1), 1.0,
                               atol=1e-12)
    p = mesh.vertices[mesh.faces]
    normal = np.cross(p[:, 1] - p[:, 0], p[:, 2] - p[:, 0])
    assert np.all(np.einsum("fi,fi->f", normal, mesh.face_point) > 0.0)


def test_sphere_frames_orthonormal(make_sphere):
    mesh = make_sphere(2)
    np.testing.assert_allclose(np.linalg.norm(mesh.frame_e1, axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(mesh.frame_e2, axis=1), 1.0, atol=1e-12)
    dots = np.einsum("fi,fi->f", mesh.frame_e1, mesh.frame_e2)
    np.testing.assert_allclose(dots, 0.0, atol=1e-12)
    # frames span the face plane: both orthogonal to the face normal
    assert np.max(np.abs(np.einsum("fi,fi->f", mesh.frame_e1, mesh.face_normal))) < 1e-12


def test_negative_level_rejected():
    with pytest.raises(ValueError):
        build_icosphere(-1)


def test_torus_counts_and_area(make_torus):
    mesh = make_torus(8)
    assert mesh.num_vertices == 64
    assert mesh.num_faces == 128
    assert mesh.kind == "FlatTorus2"
    assert abs(float(np.sum(mesh.face_area)) - 4.0 * np.pi ** 2) < 1e-9
    # all cells congruent: every face is half a grid square
    h = 2.0 * np.pi / 8
    np.testing.assert_allclose(mesh.face_area, h * h / 2.0, rtol=1e-12)


def test_torus_minimum_resolution():
    with pytest.raises(ValueError):
        build_flat_torus(3)


def test_wrap_angle_seam():
    diffs = wrap_angle(np.array([2.0 * np.pi - 0.1, -2.0 * np.pi + 0.2, 0.3]))
    np.testing.assert_allclose(diffs, [-0.1, 0.2, 0.3], atol=1e-12)


def test_build_domain_dispatch():
    assert build_domain("RoundSphere2", 1).kind == "RoundSphere2"
    assert build_domain("FlatTorus2", 4).kind == "FlatTorus2"
    with pytest.raises(ValueError):
        build_domain("KleinBottle", 3)


def test_pl_rows_exact_on_linear_functions(make_sphere):
    # the PL gradient of an ambient-linear function is its in-plane part
    mesh = make_sphere(2)
    c = np.array([0.3, -1.2, 0.7])
    rows = mesh.pl_rows(mesh.vertices @ c)
    np.testing.assert_allclose(rows[:, 0], mesh.frame_e1 @ c, atol=1e-12)
    np.testing.assert_allclose(rows[:, 1], mesh.frame_e2 @ c, atol=1e-12)


def test_face_mean_constant(make_torus):
    mesh = make_torus(4)
    vals = np.full(mesh.num_vertices, 3.5)
    np.testing.assert_allclose(mesh.face_mean(vals), 3.5, atol=1e-14)


def test_vertex_mass_partitions_area(make_sphere):
    mesh = make_sphere(3)
    assert abs(float(np.sum(mesh.vertex_mass)) - float(np.sum(mesh.face_area))) < 1e-10
    assert np.all(mesh.vertex_mass > 0.0)


def test_integrate_constant(make_sphere):
    mesh = make_sphere(4)
    total = integrate(mesh, np.ones(mesh.num_faces))
    assert abs(total - 4.0 * np.pi) <= 0.005 * 4.0 * np.pi


def test_integrate_coordinate_square(make_sphere):
    mesh = make_sphere(5)
    density = mesh.face_mean(mesh.vertices[:, 2] ** 2)
    assert abs(integrate(mesh, density) - 4.0 * np.pi / 3.0) <= 0.01 * 4.0 * np.pi / 3.0


def test_integrate_linear_and_shape_guard(make_torus):
    mesh = make_torus(4)
    a = np.linspace(0.0, 1.0, mesh.num_faces)
    b = np.ones(mesh.num_faces)
    assert abs(integrate(mesh, 2.0 * a + b)
               - (2.0 * integrate(mesh, a) + integrate(mesh, b))) < 1e-12
    with pytest.raises(ValueError):
        integrate(mesh, np.ones(mesh.num_faces + 1))


def test_killing_fields_differentiate_exactly(make_sphere):
    # rotations are ambient-linear: the discrete covariant derivative is
    # exactly antisymmetric and trace-free
    mesh = make_sphere(4)
    fields = canonical_fields(2)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        x = fields.killing_field(a, b, mesh.vertices)
        deriv = covariant_derivative(mesh, x)
        assert np.max(np.abs(deriv + np.swapaxes(deriv, 1, 2))) < 1e-12
        assert np.max(np.abs(divergence(mesh, x))) < 1e-12


def test_conformal_fields_symmetric_derivative(make_sphere):
    mesh = make_sphere(4)
    fields = canonical_fields(2)
    for a in range(3):
        x = fields.conformal_field(a, mesh.vertices)
        deriv = covariant_derivative(mesh, x)
        assert np.max(np.abs(deriv - np.swapaxes(deriv, 1, 2))) < 0.03


def test_conformal_divergence_value(make_sphere):
    # div(e_a - <e_a,y>y) = -2 x_a on the unit 2-sphere
    mesh = make_sphere(4)
    fields = canonical_fields(2)
    for a in range(3):
        div = divergence(mesh, fields.conformal_field(a, mesh.vertices))
        predicted = -2.0 * mesh.face_point[:, a]
        assert np.max(np.abs(div - predicted)) < 0.01


def test_conformal_lie_derivative_is_conformal(make_sphere):
    # in dimension 2 a conformal field satisfies L_x g = div(x) g
    mesh = make_sphere(4)
    fields = canonical_fields(2)
    eye = np.eye(2)[None, :, :]
    for a in range(3):
        x = fields.conformal_field(a, mesh.vertices)
        lie = lie_derivative_metric(mesh, x)
        dev = lie - divergence(mesh, x)[:, None, None] * eye
        assert np.max(np.abs(dev)) < 0.08


def test_lie_trace_is_twice_divergence(make_torus, make_sphere):
    for mesh in (make_torus(8), make_sphere(3)):
        x = tangent_noise(mesh, seed=9)
        lie = lie_derivative_metric(mesh, x)
        trace = lie[:, 0, 0] + lie[:, 1, 1]
        np.testing.assert_allclose(trace, 2.0 * divergence(mesh, x), atol=1e-12)


def test_torus_shear_derivative(make_torus):
    # X = sin(u) d/du has L_X g = diag(2 cos u, 0); the off-diagonal and the
    # v-row vanish exactly, the diagonal matches at the face point to O(h)
    mesh = make_torus(32)
    x = np.zeros((mesh.num_vertices, 2))
    x[:, 0] = np.sin(mesh.vertices[:, 0])
    lie = lie_derivative_metric(mesh, x)
    assert np.max(np.abs(lie[:, 0, 1])) == 0.0
    assert np.max(np.abs(lie[:, 1, 1])) == 0.0
    assert np.max(np.abs(lie[:, 0, 0] - 2.0 * np.cos(mesh.face_point[:, 0]))) < 0.1


def test_radial_field_rejected(make_sphere):
    mesh = make_sphere(2)
    with pytest.raises(ValueError):
        covariant_derivative(mesh, mesh.vertices.copy())


def test_field_shape_guard(make_torus):
    mesh = make_torus(4)
    with pytest.raises(ValueError):
        divergence(mesh, np.zeros((mesh.num_vertices, 3)))


def test_cauchy_schwarz_nonnegative_everywhere(make_sphere, make_torus):
    sphere = make_sphere(4)
    fields = list(canonical_fields(2).sample(sphere.vertices).values())
    fields.append(generic_field(sphere))
    fields.extend(tangent_noise(sphere, seed=s) for s in range(3))
    for x in fields:
        assert np.min(cauchy_schwarz_check(sphere, x)) >= -1e-10
    torus = make_torus(16)
    for s in range(3):
        assert np.min(cauchy_schwarz_check(torus, tangent_noise(torus, seed=s))) >= -1e-10


def test_cauchy_schwarz_equality_on_conformal(make_sphere):
    mesh = make_sphere(4)
    fields = canonical_fields(2)
    for a in range(3):
        x = fields.conformal_field(a, mesh.vertices)
        margin = cauchy_schwarz_check(mesh, x)
        deriv = covariant_derivative(mesh, x)
        lie = deriv + np.swapaxes(deriv, 1, 2)
        scale = np.max(np.einsum("fij,fij->f", lie, lie)
                       + 2.0 * divergence(mesh, x) ** 2)
        assert np.max(np.abs(margin)) <= 1e-2 * scale


def test_cauchy_schwarz_strict_off_conformal(make_torus):
    mesh = make_torus(32)
    x = np.zeros((mesh.num_vertices, 2))
    x[:, 0] = np.sin(mesh.vertices[:, 0])
    margin = cauchy_schwarz_check(mesh, x)
    assert np.min(margin) > 0.0


def test_tangent_noise_deterministic_and_tangent(make_sphere):
    mesh = make_sphere(3)
    a = tangent_noise(mesh, seed=5, amplitude=0.2)
    b = tangent_noise(mesh, seed=5, amplitude=0.2)
    np.testing.assert_array_equal(a, b)
    radial = np.abs(np.einsum("vi,vi->v", a, mesh.vertices))
    assert np.max(radial) < 1e-10
    c = tangent_noise(mesh, seed=6, amplitude=0.2)
    assert np.max(np.abs(a - c)) > 0.0


def test_export_off_round_trip(make_torus, make_sphere):
    for mesh in (make_torus(4), make_sphere(0)):
        text = export_off(mesh)
        lines = text.strip().split("\n")
        assert lines[0] == "OFF"
        nv, nf, _ = (int(t) for t in lines[1].split())
        assert (nv, nf) == (mesh.num_vertices, mesh.num_faces)
        coords = np.array([[float(t) for t in ln.split()] for ln in lines[2:2 + nv]])
        assert coords.shape == (nv, 3)
        if mesh.embed_dim == 2:
            assert np.all(coords[:, 2] == 0.0)
        first_face = [int(t) for t in lines[2 + nv].split()]
        assert first_face[0] == 3
