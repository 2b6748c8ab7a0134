import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modwedge.cones import (
    LorentzCone,
    NonnegQuadraticCone,
    PolyhedralCone,
    ProductCone,
    PSDCone,
    SL2InvariantCone,
    cone_from_json,
    image_under_linear_map,
    sym_from_vec,
    vec_from_sym,
)
from modwedge.errors import ValidationError

CATALOG = [
    LorentzCone(4),
    LorentzCone(3, time_axis=2),
    PSDCone(3),
    NonnegQuadraticCone(2),
    PolyhedralCone([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -0.5]]),
    SL2InvariantCone(1),
    SL2InvariantCone(-1),
    ProductCone([LorentzCone(2), PSDCone(2)]),
    image_under_linear_map(LorentzCone(3), [[1, 2, 0], [0, 1, 0], [0, 0, 3]]),
]
IDS = [c.kind + str(i) for i, c in enumerate(CATALOG)]


@pytest.mark.parametrize("cone", CATALOG, ids=IDS)
def test_catalog_laws(cone):
    rng = np.random.default_rng(5)
    assert cone.contains(np.zeros(cone.dim))
    assert not cone.interior_contains(np.zeros(cone.dim))
    assert cone.interior_contains(cone.interior_point())
    for _ in range(200):
        x, y = cone.sample(rng), cone.sample(rng)
        assert cone.contains(x) and cone.contains(2 * x)
        t = rng.random()
        assert cone.contains(t * x + (1 - t) * y)


@pytest.mark.parametrize("cone", CATALOG, ids=IDS)
def test_interior_has_margin(cone):
    rng = np.random.default_rng(6)
    eps = cone.margin_tol
    for _ in range(100):
        x = cone.sample(rng)
        x /= np.linalg.norm(x)
        if not cone.interior_contains(x):
            continue
        u = rng.standard_normal(cone.dim)
        u /= np.linalg.norm(u)
        assert cone.contains(x + eps * u) and cone.contains(x - eps * u)


@pytest.mark.parametrize("cone", CATALOG, ids=IDS)
def test_json_round_trip(cone):
    back = cone_from_json(cone.to_json())
    rng = np.random.default_rng(1)
    for _ in range(50):
        x = rng.standard_normal(cone.dim)
        assert back.contains(x) == cone.contains(x)


def test_lorentz_values():
    c = LorentzCone(4)
    assert c.interior_contains([1, 0.5, 0, 0])
    assert c.contains([1, 1, 0, 0]) and not c.interior_contains([1, 1, 0, 0])
    assert not c.contains([0, 1, 0, 0]) and not c.contains([-1, 0, 0, 0])


def test_psd_coordinates(rng):
    s = rng.standard_normal((3, 3))
    s = s + s.T
    assert np.allclose(sym_from_vec(vec_from_sym(s), 3), s)
    # the coordinates are orthonormal for the trace form
    t = rng.standard_normal((3, 3))
    t = t + t.T
    assert np.isclose(vec_from_sym(s) @ vec_from_sym(t), np.trace(s @ t))


def test_sl2_cone_is_ad_invariant(rng):
    c = SL2InvariantCone(1)
    basis = [np.diag([0.5, -0.5]), np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([[0.0, 0.0], [1.0, 0.0]])]

    def coords(m):
        return np.array([2 * m[0, 0], m[0, 1], m[1, 0]])

    # z = (e - f)/2 generates rotations and lies inside
    assert c.interior_contains([0, 0.5, -0.5])
    for _ in range(200):
        x = c.sample(rng)
        m = np.tensordot(x, np.array(basis), axes=1)
        g = rng.standard_normal((2, 2))
        g /= np.sqrt(abs(np.linalg.det(g)))
        if np.linalg.det(g) < 0:
            g[:, 0] *= -1
        assert c.contains(coords(g @ m @ np.linalg.inv(g)), 1e-9)
        # -tau_h: (a, b, c) -> (-a, b, c)
        assert c.contains([-x[0], x[1], x[2]])
    # a^2 + bc (without the 1/4) is not Ad-invariant: it changes sign along an Ad(g) orbit
    x = np.array([0.0, 1.0, -0.3])
    m = np.tensordot(x, np.array(basis), axes=1)
    g = np.array([[1.0, 2.0], [0.0, 1.0]])
    y = coords(g @ m @ np.linalg.inv(g))
    assert x[0] ** 2 + x[1] * x[2] <= 0 and y[0] ** 2 + y[1] * y[2] > 0


def test_polyhedral_rejects_degenerate():
    with pytest.raises(ValidationError):
        PolyhedralCone([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ValidationError):
        PolyhedralCone([[1, 0], [-1, 0], [0, 1]])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=4, max_size=4), st.floats(0.01, 100))
def test_homogeneity(x, s):
    c = LorentzCone(4)
    x = np.array(x)
    assert c.contains(x) == c.contains(s * x)
    assert c.interior_contains(x) == c.interior_contains(s * x)
