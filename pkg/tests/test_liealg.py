import numpy as np
import pytest

from modwedge.cones import ConeSpec, LorentzCone, SL2InvariantCone
from modwedge.errors import InvarianceViolated, NotInAlgebra, NotSkewHermitian, UnknownAlgebra
from modwedge.liealg import (
    LieAlgebraSpec,
    Symmetry,
    ad_matrix,
    automorphism_defect,
    catalog,
    cone_graded_parts,
    euler_check,
    grading_check,
    grading_defect,
    h_k,
    rep_positive_cone_contains,
    symmetric_euler_search,
    tau_h_matrix,
)

NAMES = ["sl2", "sl3", "sl4", "gl3", "so(1,3)", "so(2,3)", "sp4", "sp6", "aff1", "poincare3", "poincare4",
         "oscillator", "hcsp2"]


@pytest.mark.parametrize("name", NAMES)
def test_catalog_closed_and_jacobi(name):
    g = catalog(name)
    g.structure_constants()  # raises NotInAlgebra when a bracket leaves the span
    assert g.jacobi_defect() < 1e-12


def test_catalog_dimensions():
    dims = {"sl3": 8, "gl3": 9, "so(1,3)": 6, "sp4": 10, "poincare4": 10, "oscillator": 4, "hcsp2": 7}
    for name, d in dims.items():
        assert catalog(name).dim == d
    with pytest.raises(UnknownAlgebra):
        catalog("e8")


def test_ad_basics():
    g = catalog("sl2")
    assert np.allclose(ad_matrix(g, np.zeros(3)), 0)
    ev = np.sort(np.linalg.eigvals(ad_matrix(g, g.named("h"))).real)
    assert np.allclose(ev, [-1, 0, 1])


def test_ad_is_bracket(rng):
    g = catalog("sp4")
    x, y = rng.standard_normal(g.dim), rng.standard_normal(g.dim)
    assert np.allclose(ad_matrix(g, x) @ y, g.bracket(x, y))


def test_poincare_boost_grading():
    g = catalog("poincare4")
    chk = euler_check(g, g.named("boost"))
    assert chk.is_euler
    # boost in the (0,1) plane fixes e2, e3 translations and so(1,1) + so(2);
    # the eigencount is the oracle
    ev = np.linalg.eigvals(ad_matrix(g, g.named("boost"))).real
    counts = {k: int(np.sum(np.isclose(ev, k))) for k in (-1, 0, 1)}
    assert chk.datum.dims() == counts == {-1: 3, 0: 4, 1: 3}


def test_euler_examples():
    sl2 = catalog("sl2")
    assert euler_check(sl2, sl2.named("h")).is_euler
    e = euler_check(sl2, sl2.named("e"))
    ad_e = ad_matrix(sl2, sl2.named("e"))
    # nilpotent: (ad e)^2 != 0 but every eigenvalue is 0
    assert np.linalg.norm(ad_e @ ad_e) > 0.5 and not e.is_euler
    assert not euler_check(sl2, np.zeros(3)).is_euler
    with pytest.raises(NotInAlgebra):
        euler_check(sl2, np.eye(2))


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2), (6, 3)])
def test_sl_n_h_k(n, k):
    g = catalog(f"sl{n}")
    assert euler_check(g, g.named(f"h{k}")).is_euler
    ev = sorted(set(np.round(np.diag(h_k(n, k)), 12)))
    assert np.allclose(ev, sorted({1 - k / n, -k / n}))


def test_tau_examples():
    sl2 = catalog("sl2")
    d = euler_check(sl2, sl2.named("h")).datum
    assert np.allclose(tau_h_matrix(d), np.diag([1, -1, -1]))
    p = catalog("poincare4")
    d = euler_check(p, p.named("boost")).datum
    tau = tau_h_matrix(d)
    # translations are the last four basis vectors
    assert np.allclose(tau[-4:, -4:], np.diag([-1, -1, 1, 1]))
    assert np.allclose(tau @ tau, np.eye(p.dim))


@pytest.mark.parametrize("name,el", [("sl2", "h"), ("sl4", "h1"), ("sp4", "h2"), ("poincare4", "boost"),
                                     ("hcsp2", "h"), ("oscillator", "h"), ("so(2,3)", "boost")])
def test_grading_and_automorphism(name, el):
    g = catalog(name)
    d = euler_check(g, g.named(el)).datum
    assert grading_defect(g, d) < 1e-9
    assert automorphism_defect(g, tau_h_matrix(d)) < 1e-9
    assert np.allclose(d.p_minus + d.p_zero + d.p_plus, np.eye(g.dim))
    assert np.allclose(d.operator, d.p_plus - d.p_minus)


def test_center_shift():
    g = catalog("oscillator")
    h = g.named("h") + 2.5 * g.named("z")
    assert np.allclose(ad_matrix(g, g.named("z")), 0)
    assert euler_check(g, h).is_euler


def test_hcsp():
    g = catalog("hcsp2")
    d = euler_check(g, g.named("h")).datum
    assert d.dims() == {-1: 1, 0: 3, 1: 3}
    for lam in (0.5, 1.0, -2.0):
        x = g.named("hs") + lam * g.named("z")
        ev = np.linalg.eigvals(ad_matrix(g, x)).real
        assert np.any(np.isclose(ev, 0.5)) and np.any(np.isclose(ev, -0.5))
        assert not euler_check(g, x).is_euler
    res = symmetric_euler_search(g, d)
    assert res.symmetric is Symmetry.REFUTED


def test_symmetric_search_examples():
    sl2 = catalog("sl2")
    res = symmetric_euler_search(sl2, euler_check(sl2, sl2.named("h")).datum)
    assert res.symmetric is Symmetry.CONFIRMED
    sl3 = catalog("sl3")
    res = symmetric_euler_search(sl3, euler_check(sl3, sl3.named("h1")).datum)
    assert res.symmetric is Symmetry.REFUTED
    gl2 = catalog("gl2")
    h = gl2.named("h1") + 0.7 * gl2.named("one")
    res = symmetric_euler_search(gl2, euler_check(gl2, h).datum)
    assert res.symmetric is Symmetry.REFUTED


def test_symmetric_witness_is_valid():
    g = catalog("sl4")
    d = euler_check(g, g.named("h2")).datum
    res = symmetric_euler_search(g, d, seed=3)
    assert res.symmetric is Symmetry.CONFIRMED and res.residual < 1e-9


# ---- cones on gradings


def boost_datum(d=4):
    h = np.zeros((d, d))
    h[0, 1] = h[1, 0] = 1.0
    return grading_check(h).datum


def test_minkowski_graded_parts():
    cones = cone_graded_parts(LorentzCone(4), boost_datum())
    e0, e1 = np.eye(4)[0], np.eye(4)[1]
    assert cones.plus.interior_contains(e1 + e0) and cones.plus.contains(3 * (e1 + e0))
    assert not cones.plus.contains(e1 - e0) and not cones.plus.contains(-(e1 + e0))
    assert cones.minus.interior_contains(e1 - e0)
    assert not cones.minus.contains(e0 - e1)


def test_sl2_graded_parts():
    g = catalog("sl2")
    d = euler_check(g, g.named("h")).datum
    cones = cone_graded_parts(SL2InvariantCone(1), d)
    assert cones.plus.interior_contains([0, 1, 0]) and not cones.plus.contains([0, -1, 0])
    assert cones.minus.interior_contains([0, 0, 1]) and not cones.minus.contains([0, 0, -1])
    # the projection identity p_{+-1}(C) = +-C_+-
    rng = np.random.default_rng(2)
    c = SL2InvariantCone(1)
    for _ in range(200):
        x = c.sample(rng)
        assert cones.plus.contains(d.p_plus @ x) and cones.minus.contains(-(d.p_minus @ x))


class RayCone(ConeSpec):
    """R_+ e_0 in R^2, a cone inside the 0-eigenspace."""

    kind = "ray"
    dim = 2

    def margin(self, x):
        return min(x[0], -abs(x[1]))

    def interior_point(self):
        return np.array([1.0, 0.0])

    def sample(self, rng):
        return np.array([rng.exponential(), 0.0])


def test_zero_part_cone():
    d = grading_check(np.diag([0.0, 1.0])).datum
    # -tau_h is -1 on the 0-eigenspace, so a pointed cone there is never invariant
    with pytest.raises(InvarianceViolated):
        cone_graded_parts(RayCone(), d)
    cones = cone_graded_parts(RayCone(), d, check=False)
    assert cones.plus.contains([0, 0]) and not cones.plus.contains([0, 1]) and not cones.plus.contains([0, -1])
    assert not cones.plus.interior_contains([0, 1])


def test_graded_parts_rejects_non_invariant():
    # the Lorentz cone with time axis 2 is not invariant under the (0,1) boost flow
    with pytest.raises(InvarianceViolated) as err:
        cone_graded_parts(LorentzCone(3, time_axis=2), boost_datum(3))
    assert err.value.witness is not None


# ---- positive cones of representations


def test_rep_cone_u1():
    gens = [np.array([[1j]])]
    assert rep_positive_cone_contains(gens, [0.0])
    assert rep_positive_cone_contains(gens, [1.0])
    assert not rep_positive_cone_contains(gens, [-1.0])
    with pytest.raises(NotSkewHermitian):
        rep_positive_cone_contains([np.array([[1.0]])], [1.0])


def test_rep_cone_oscillator():
    m = 8
    a = np.diag(np.sqrt(np.arange(1, m)), 1)
    q = 1j * (a + a.T) / np.sqrt(2)
    p = (a - a.T) / np.sqrt(2)
    z = 1j * np.eye(m)
    gens = [q, p, z]
    assert rep_positive_cone_contains(gens, [0, 0, 1])
    assert not rep_positive_cone_contains(gens, [0, 0, -1])
    assert not rep_positive_cone_contains(gens, [1, 0, 0])


def test_json_round_trip():
    g = catalog("sp4")
    back = LieAlgebraSpec.from_json(g.to_json())
    assert np.allclose(back.structure_constants(), g.structure_constants())


def test_search_uses_compact_part_of_so():
    g = catalog("so(1,3)")
    d = euler_check(g, g.named("boost")).datum
    res = symmetric_euler_search(g, d)
    assert res.symmetric is Symmetry.CONFIRMED
    w = np.array(res.witness)
    h = g.element(g.named("boost"))
    assert np.allclose(w @ h @ np.linalg.inv(w), -h, atol=1e-9)
    # the word lives in the compact part SO(3): w is orthogonal
    assert np.allclose(w @ w.T, np.eye(4), atol=1e-9)
