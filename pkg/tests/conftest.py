"""Shared fixtures.

Mesh construction dominates test time, so the builders are cached for the
whole session and handed to tests as factory fixtures.  Meshes and maps are
treated as immutable by every test; nothing here may mutate them.
"""

import functools

import numpy as np
import pytest

from fharmonic import (FProfile, build_flat_torus, build_icosphere,
                       clifford_torus_map, identity_map)


@functools.lru_cache(maxsize=None)
def _sphere(level):
    return build_icosphere(level)


@functools.lru_cache(maxsize=None)
def _torus(n):
    return build_flat_torus(n)


@pytest.fixture(scope="session")
def make_sphere():
    return _sphere


@pytest.fixture(scope="session")
def make_torus():
    return _torus


@pytest.fixture(scope="session")
def linear():
    return FProfile.linear()


@pytest.fixture(scope="session")
def sqrt_shift():
    return FProfile.sqrt_shift()


@pytest.fixture(scope="session")
def clifford16(make_torus):
    mesh = make_torus(16)
    return mesh, clifford_torus_map(mesh)


@pytest.fixture(scope="session")
def clifford32(make_torus):
    mesh = make_torus(32)
    return mesh, clifford_torus_map(mesh)


@pytest.fixture(scope="session")
def identity3(make_sphere):
    mesh = make_sphere(3)
    return mesh, identity_map(mesh)


@pytest.fixture(scope="session")
def identity4(make_sphere):
    mesh = make_sphere(4)
    return mesh, identity_map(mesh)


def generic_field(mesh):
    """Smooth non-conformal tangent test field x2 * (e1 - x1 y) on S^2."""
    y = mesh.vertices
    return y[:, 1, None] * (np.eye(3)[0][None, :] - y[:, 0, None] * y)
