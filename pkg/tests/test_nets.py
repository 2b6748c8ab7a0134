import json

import numpy as np
import pytest
from scipy.linalg import expm, null_space

from modwedge import nets
from modwedge.errors import EquivarianceViolated, NotPositive, NotUnitary, ValidationError
from modwedge.hilbert import (
    apply_linear,
    conjugation,
    flip_conjugation,
    is_subspace,
    random_unitary,
    real_form,
    realify,
    subspace_distance,
    subspaces_equal,
)
from modwedge.io import dumps
from modwedge.modular import SpectralModel, modular_pair, random_standard_subspace, spectral_model_build


@pytest.fixture(scope="module")
def toy():
    return nets.toy_scenario()


@pytest.fixture(scope="module")
def toy_nets(toy):
    scenario, build = toy
    v = build.subspace
    return nets.net_max(scenario.regions, scenario.rep, v), nets.net_min(scenario.regions, scenario.rep, v)


def test_bgl_trivial():
    res = nets.bgl_pair(np.zeros((3, 3)), conjugation(3))
    np.testing.assert_allclose(res.pair.delta, np.eye(3), atol=1e-14)
    assert subspaces_equal(res.subspace, real_form(3))


def test_bgl_diagonal_matches_spectral_model():
    p = 0.7
    res = nets.bgl_pair(np.diag([p, -p]), flip_conjugation(1))
    np.testing.assert_allclose(res.pair.delta, np.diag([np.exp(-2 * np.pi * p), np.exp(2 * np.pi * p)]), atol=1e-12)
    build = spectral_model_build(SpectralModel(((p, 1.0), (-p, 1.0))))
    assert subspace_distance(res.subspace, build.subspace) < 1e-12
    # Delta^{-it/2pi} = e^{itA} at t = 1
    np.testing.assert_allclose(res.pair.power(-1j / (2 * np.pi)), expm(1j * np.diag([p, -p])), atol=1e-12)


def test_bgl_rejects_non_equivariant():
    with pytest.raises(EquivarianceViolated):
        nets.bgl_pair(np.diag([1.0, 0.5]), flip_conjugation(1))


def test_sv_contains(rng):
    res = nets.bgl_pair(np.diag([0.3, 1.0, -0.3, -1.0]), nets.AntilinearOp(np.eye(4)[[2, 3, 0, 1]]))
    v = res.subspace
    assert nets.sv_contains(np.eye(4), v)
    for t in (0.3, 1.0, 2.0):
        assert nets.sv_contains(res.pair.modular_group(t), v)
    for _ in range(20):
        assert not nets.sv_contains(random_unitary(4, rng), v)
    with pytest.raises(NotUnitary):
        nets.sv_contains(2 * np.eye(4), v)


def test_modular_objects_transport(rng):
    # U V is standard with Delta_{UV} = U Delta_V U^{-1}
    for _ in range(10):
        v = random_standard_subspace(4, rng)
        u = random_unitary(4, rng)
        pv, puv = modular_pair(v), modular_pair(apply_linear(u, v))
        np.testing.assert_allclose(puv.delta, u @ pv.delta @ u.conj().T, atol=1e-9)


def test_standard_pair_examples():
    build = spectral_model_build(SpectralModel(((0.5, 1.0), (-0.5, 1.0))))
    zero = nets.standard_pair_check(np.zeros((2, 2)), build.pair, s_grid=(-1.0, 0.5))
    assert zero.passes and zero.commutation_ok
    neg = nets.standard_pair_check(np.diag([1.0, -2.0]), build.pair)
    assert not neg.positive and neg.min_eigenvalue == pytest.approx(-2.0)
    with pytest.raises(NotPositive):
        nets.standard_pair_check(np.diag([1.0, -2.0]), build.pair, strict=True)


def test_standard_pair_forces_zero_in_finite_dimension():
    # P >= 0 commuting with Delta and with J: positive, but e^{itP} V ⊆ V fails for t > 0
    build = spectral_model_build(SpectralModel(((0.5, 1.0), (-0.5, 1.0))))
    rep = nets.standard_pair_check(np.eye(2), build.pair, s_grid=(0.5,))
    assert rep.positive
    assert rep.inclusion[0][1] < 1e-12
    assert not rep.inclusion_ok
    assert not rep.commutation_ok


def test_toy_wedge_values(toy, toy_nets):
    scenario, build = toy
    mx, mn = toy_nets
    assert subspace_distance(mx["W"], build.subspace) < 1e-8
    assert subspace_distance(mn["W"], build.subspace) < 1e-8
    assert mx["O_spread"].dim == 2 * scenario.rep.n  # empty intersection
    assert mn["O_small"].dim == 0  # empty sum


def test_toy_isotony_and_sandwich(toy, toy_nets):
    scenario, _ = toy
    mx, mn = toy_nets
    for small, big in nets.TOY_ORDER:
        assert is_subspace(mx[small], mx[big])
        assert is_subspace(mn[small], mn[big])
    for r in scenario.regions:
        assert is_subspace(mn[r.label], mx[r.label])


def test_toy_covariance(toy, toy_nets):
    mx, _ = toy_nets
    moved, _ = nets.toy_scenario(rotation_steps=1)
    moved_mx = nets.net_max(moved.regions, moved.rep, toy[1].subspace)
    u = expm(1j * 2 * np.pi / nets.TOY_ANGLES * nets.toy_rotation_generator())
    for label in mx:
        assert subspace_distance(moved_mx[label], apply_linear(u, mx[label])) < 1e-8


def test_bw_check_toy_and_counterexample(toy):
    scenario, build = toy
    v = build.subspace
    assert nets.bw_check(scenario.rep, v).holds
    rep = nets.RepSample(scenario.rep.generator, scenario.rep.j, list(scenario.rep.elements))
    rep.add(nets.j_anticommuting_counterexample(rep.n))
    res = nets.bw_check(rep, v)
    assert not res.holds and res.witness == "counterexample_i" and res.defect > 0.1


def test_counterexample_structure(toy):
    _, build = toy
    u = nets.j_anticommuting_counterexample(4).matrix
    j = build.pair.j
    np.testing.assert_allclose(u @ build.pair.delta, build.pair.delta @ u)
    np.testing.assert_allclose(j.matrix @ np.conj(u), -u @ j.matrix)


def test_intersection_matches_stacked_solve(rng):
    # x in U1 V ∩ U2 V  iff  x = B1 c1 = B2 c2 over the reals
    v = random_standard_subspace(3, rng)
    reg = [nets.Region("O", ("a", "b"))]
    rep = nets.RepSample(np.zeros((3, 3)), conjugation(3))
    rep.add(nets.RepElement("a", np.eye(3), False))
    rep.add(nets.RepElement("b", np.diag([1, 1, 1j]), False))
    got = nets.net_max(reg, rep, v)["O"]
    b1, b2 = realify(v.frame), realify(np.diag([1, 1, 1j]) @ v.frame)
    ns = null_space(np.hstack([b1, -b2]))
    assert got.dim == ns.shape[1] >= 1
    oracle = b1 @ ns[: v.dim]
    assert np.linalg.norm(oracle - got.projector() @ oracle) < 1e-10


def test_sum_matches_span_oracle(rng):
    v = random_standard_subspace(4, rng)
    u1, u2 = random_unitary(4, rng), random_unitary(4, rng)
    rep = nets.RepSample(np.zeros((4, 4)), conjugation(4))
    rep.add(nets.RepElement("x", u1, False))
    rep.add(nets.RepElement("y", u2, False))
    got = nets.net_min([nets.Region("U", contains=("x", "y"))], rep, v)["U"]
    stacked = np.hstack([realify(u1 @ v.frame), realify(u2 @ v.frame)])
    assert got.dim == np.linalg.matrix_rank(stacked, tol=1e-9)
    assert np.linalg.norm(stacked - got.projector() @ stacked) < 1e-10


def test_scenario_json_round_trip(toy):
    scenario, build = toy
    text = dumps(scenario.to_json())
    back = nets.Scenario.from_json(json.loads(text))
    assert [r.label for r in back.regions] == [r.label for r in scenario.regions]
    a = nets.net_max(scenario.regions, scenario.rep, build.subspace)
    b = nets.net_max(back.regions, back.rep, build.subspace)
    for k in a:
        assert subspace_distance(a[k], b[k]) < 1e-12
    back.rep.validate()


def test_scenario_unknown_label(toy):
    obj = toy[0].to_json()
    obj["regions"][0]["covered_by"] = ["nope"]
    with pytest.raises(ValidationError):
        nets.Scenario.from_json(obj)
