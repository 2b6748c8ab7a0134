"""Acceptance checks 1-13, each returning a pass flag and the measured worst cases.

Every check draws from its own generator seeded by (seed, check number), so
checks can run alone or together with identical results.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from scipy.linalg import expm

from . import causal, fock, nets, rootdata
from .errors import OffSurface
from .hilbert import apply_linear, is_subspace, subspace_distance
from .liealg import catalog
from .modular import (
    KMSFunctionData,
    graph_subspace,
    kms_function,
    kms_measure_classify,
    modular_pair,
    random_standard_subspace,
    standard_from_pair,
    symplectic_complement,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    metrics: dict = field(default_factory=dict)

    def line(self):
        return f"criterion {self.number:2d} [{'PASS' if self.passed else 'FAIL'}] {self.name}"

    def to_json(self):
        return {"number": self.number, "name": self.name, "passed": self.passed, "metrics": self.metrics}


def _rng(seed, number):
    return np.random.default_rng([seed, number])


def _corpus(seed, per_n=200, sizes=range(2, 9)):
    rng = _rng(seed, 1)
    return [random_standard_subspace(n, rng) for n in sizes for _ in range(per_n)]


def check_modular_round_trip(seed=0):
    start = time.perf_counter()
    worst_dist = worst_rel = 0.0
    for v in _corpus(seed):
        p = modular_pair(v)
        worst_rel = max(worst_rel, p.modular_residual())
        worst_dist = max(worst_dist, subspace_distance(standard_from_pair(p), v))
    fast = time.perf_counter() - start < 5.0
    ok = worst_dist < 1e-8 and worst_rel < 1e-9 and fast
    return CriterionResult(1, "modular round trip", ok,
                           {"max_subspace_distance": worst_dist, "max_modular_residual": worst_rel,
                            "cases": 1400, "under_5s": fast})


def _random_positive(rng, n):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return x @ x.conj().T / n + 0.5 * np.eye(n)


def check_graph_law(seed=0):
    rng = _rng(seed, 2)
    n_flip = None
    worst_delta = worst_j = 0.0
    for k in range(50):
        n = 1 + k % 6
        a = _random_positive(rng, n)
        p = modular_pair(graph_subspace(a))
        a2 = a @ a
        expected = np.zeros((2 * n, 2 * n), dtype=complex)
        expected[:n, :n] = a2
        expected[n:, n:] = np.conj(np.linalg.inv(a2))
        n_flip = np.block([[np.zeros((n, n)), np.eye(n)], [np.eye(n), np.zeros((n, n))]])
        worst_delta = max(worst_delta, float(np.linalg.norm(p.delta - expected, 2)))
        worst_j = max(worst_j, float(np.linalg.norm(p.j.matrix - n_flip, 2)))
    ok = worst_delta < 1e-9 and worst_j < 1e-9
    return CriterionResult(2, "graph law", ok, {"max_delta_error": worst_delta, "max_j_error": worst_j})


def check_complement_laws(seed=0):
    worst = {"delta": 0.0, "j": 0.0, "jv": 0.0, "double": 0.0}
    for v in _corpus(seed):
        p = modular_pair(v)
        vc = symplectic_complement(v)
        q = modular_pair(vc)
        worst["delta"] = max(worst["delta"], float(np.linalg.norm(q.delta - p.inverse(), 2)))
        worst["j"] = max(worst["j"], float(np.linalg.norm(q.j.matrix - p.j.matrix, 2)))
        worst["jv"] = max(worst["jv"], subspace_distance(p.j.apply_subspace(v), vc))
        worst["double"] = max(worst["double"], subspace_distance(symplectic_complement(vc), v))
    ok = all(x < 1e-8 for x in worst.values())
    return CriterionResult(3, "complement laws", ok, {f"max_{k}_error": x for k, x in worst.items()})


def _kms_atoms(rng, beta):
    atoms = []
    for _ in range(rng.integers(1, 5)):
        lam, mu = rng.uniform(0.05, 2.0), rng.uniform(0.1, 2.0)
        atoms += [(lam, mu), (-lam, np.exp(-beta * lam) * mu)]
    if rng.random() < 0.5:
        atoms.append((0.0, rng.uniform(0.1, 1.0)))
    return atoms


def check_kms(seed=0):
    rng = _rng(seed, 4)
    t = np.linspace(-3, 3, 21)
    worst, accepted, rejected = 0.0, 0, 0
    for _ in range(100):
        beta = rng.uniform(0.2, 4.0)
        data = KMSFunctionData(_kms_atoms(rng, beta), beta)
        accepted += kms_measure_classify(data).is_kms
        worst = max(worst, float(np.max(np.abs(kms_function(data, 1j * beta + t) - np.conj(kms_function(data, t))))))
    min_violation = np.inf
    for _ in range(100):
        beta = rng.uniform(0.2, 4.0)
        atoms = _kms_atoms(rng, beta)
        # shift one negative-side weight: the violation is exactly the shift
        i = 1 + 2 * int(rng.integers(len(atoms) // 2))
        lam, mu = atoms[i]
        atoms[i] = (lam, mu + rng.uniform(1e-3, 0.1))
        data = KMSFunctionData(atoms, beta)
        res = kms_measure_classify(data)
        min_violation = min(min_violation, res.max_violation)
        rejected += not res.is_kms
    ok = worst < 1e-10 and accepted == 100 and rejected == 100 and min_violation >= 1e-3
    return CriterionResult(4, "KMS classification", ok,
                           {"max_boundary_error": worst, "accepted": accepted, "rejected": rejected,
                            "min_perturbed_violation": float(min_violation)})


def golden_table() -> str:
    return resources.files("modwedge").joinpath("testdata/classification_table.csv").read_text()


def check_root_table(seed=0):
    ok = rootdata.classification_table() == golden_table()
    return CriterionResult(5, "root classification table", ok, {"rows": golden_table().count("\n") - 1})


def cross_check_cases():
    cases = [(f"sl{n}", f"h{k}") for n in range(2, 7) for k in range(1, n)]
    cases += [(f"so(1,{d})", "boost") for d in range(2, 6)]
    cases += [("sp4", "h1"), ("sp4", "h2")]
    return cases


def check_cross(seed=0):
    bad = []
    for g, h in cross_check_cases():
        if not rootdata.cross_check_matrix(g, h, seed=seed).agree:
            bad.append(f"{g}:{h}")
    return CriterionResult(6, "matrix/root cross-check", not bad,
                           {"cases": len(cross_check_cases()), "disagreements": bad})


def check_affine(seed=0):
    rng = _rng(seed, 7)
    disagreements, rindler_mismatch = {}, 0
    for space in causal.affine_catalog():
        m = space.h.shape[0]
        bad = 0
        for _ in range(10_000):
            x = rng.standard_normal(m) * 10.0 ** rng.uniform(-2, 2)
            got = space.contains(x, 1e-12)
            bad += got != space.oracle(x, 1e-12)
            if space.name.startswith("minkowski"):
                rindler_mismatch += got != causal.rindler_contains(x)
        disagreements[space.name] = bad
    ok = not any(disagreements.values()) and rindler_mismatch == 0
    return CriterionResult(7, "affine wedge equivalence", ok,
                           {"disagreements": disagreements, "rindler_mismatches": rindler_mismatch})


def check_rindler(seed=0):
    rng = _rng(seed, 8)
    escaped_members, missing_witness = 0, 0
    for k in range(1000):
        d = 2 + k % 3
        v, lam = causal.rindler_member_sample(d, rng)
        pts = causal.rindler_sample_points(d, rng, 100)
        if not causal.rindler_compression_contains(v, lam) or not all(causal.rindler_contains(lam @ x + v) for x in pts):
            escaped_members += 1
    for k in range(1000):
        d = 2 + k % 3
        v, lam = causal.rindler_nonmember_sample(d, rng)
        w = causal.rindler_escape_witness(v, lam, rng)
        if causal.rindler_compression_contains(v, lam) or w is None:
            missing_witness += 1
    ok = escaped_members == 0 and missing_witness == 0
    return CriterionResult(8, "Rindler compression semigroup", ok,
                           {"member_failures": escaped_members, "nonmember_failures": missing_witness})


def _ds_predicate(x, d):
    try:
        return causal.ds_positivity_contains(x, d)
    except OffSurface:
        return False


def check_de_sitter(seed=0):
    rng = _rng(seed, 9)
    mismatches = 0
    for k in range(10_000):
        d = 2 + k % 3
        y = rng.standard_normal(d + 1) * 2
        sp = y[1:] / np.linalg.norm(y[1:]) * np.sqrt(1 + y[0] ** 2)
        x = np.concatenate([[y[0]], sp])
        if k % 4 == 3:
            x = x * rng.uniform(1.01, 2.0)  # off the surface
        on = causal.ds_defect(x) <= causal.SURFACE_TOL * max(1.0, float(x @ x))
        mismatches += _ds_predicate(x, d) != (on and causal.rindler_contains(x))
    worst_quadric = 0.0
    for k in range(1000):
        d = 2 + k % 3
        t = rng.standard_normal(d + 1) * rng.uniform(0.1, 3)
        t[1] = 0.0
        p = causal.ds_exp(t, d)
        worst_quadric = max(worst_quadric, causal.ds_defect(p) / max(1.0, float(p @ p)))
    flow_exits = 0
    for _ in range(200):
        g0 = causal.random_stabilizer_element(2, rng)
        p = causal.ds_wedge_sample(g0, rng.uniform(-1.5, 1.5, size=1), 2)["point"]
        for t in np.linspace(-3, 3, 13):
            flow_exits += not causal.ds_positivity_contains(causal.boost(3, t) @ p, 2)
    ok = mismatches == 0 and worst_quadric < 1e-10 and flow_exits == 0
    return CriterionResult(9, "de Sitter wedge", ok,
                           {"predicate_mismatches": mismatches, "max_quadric_defect": worst_quadric,
                            "flow_exits": flow_exits})


def _random_sl2(rng):
    m = rng.standard_normal((2, 2))
    if np.linalg.det(m) < 0:
        m[:, 0] *= -1
    return m / np.sqrt(np.linalg.det(m))


def check_sl2_covering(seed=0):
    rng = _rng(seed, 10)
    worst_hom = 0.0
    for _ in range(1000):
        a, b = _random_sl2(rng), _random_sl2(rng)
        lab = causal.sl2_to_so12(a @ b)
        err = float(np.linalg.norm(lab - causal.sl2_to_so12(a) @ causal.sl2_to_so12(b)))
        worst_hom = max(worst_hom, err / max(1.0, float(np.linalg.norm(lab))))
    kernel = float(np.linalg.norm(causal.sl2_to_so12(-np.eye(2)) - np.eye(3)))
    worst_rot = max(float(np.linalg.norm(causal.sl2_to_so12(causal.r_theta(th)) - causal.rotation_12(th)))
                    for th in np.linspace(0, 2 * np.pi, 20))
    worst_det = 0.0
    for _ in range(1000):
        x = rng.standard_normal(3) * 3
        worst_det = max(worst_det, abs(4 * np.linalg.det(causal.phi(x)) - causal.lorentz_form(x)))
    ok = worst_hom < 1e-10 and kernel < 1e-12 and worst_rot < 1e-10 and worst_det < 1e-10
    return CriterionResult(10, "SL2 covering", ok,
                           {"max_homomorphism_residual": worst_hom, "kernel_residual": kernel,
                            "max_rotation_residual": worst_rot, "max_determinant_residual": float(worst_det)})


def check_group_wedge(seed=0):
    rng = _rng(seed, 11)
    g = catalog("sl2")
    cone, h0 = g.cones["invariant"], g.named("h")
    e, h, f = (g.element(g.named(k)) for k in "ehf")
    inside = reversed_inside = 0
    for _ in range(1000):
        s, t, u = rng.exponential(), rng.normal(), rng.exponential()
        inside += causal.group_type_wedge_contains(expm(s * e) @ expm(t * h) @ expm(u * f), h0, cone, g)
        reversed_inside += causal.group_type_wedge_contains(expm(-s * e) @ expm(t * h) @ expm(-u * f), h0, cone, g)
    ok = inside == 1000 and reversed_inside == 0
    return CriterionResult(11, "group-type wedge inclusion", ok,
                           {"product_set_inside": inside, "reversed_inside": reversed_inside})


def check_nets(seed=0):
    scenario, build = nets.toy_scenario()
    v = build.subspace
    mx = nets.net_max(scenario.regions, scenario.rep, v)
    mn = nets.net_min(scenario.regions, scenario.rep, v)
    dist_max = subspace_distance(mx["W"], v)
    dist_min = subspace_distance(mn["W"], v)
    isotony = all(is_subspace(mx[a], mx[b]) and is_subspace(mn[a], mn[b]) for a, b in nets.TOY_ORDER)
    sandwich = all(is_subspace(mn[r.label], mx[r.label]) for r in scenario.regions)
    moved, _ = nets.toy_scenario(rotation_steps=1)
    moved_mx = nets.net_max(moved.regions, moved.rep, v)
    u = expm(1j * 2 * np.pi / nets.TOY_ANGLES * nets.toy_rotation_generator())
    covariance = max(subspace_distance(moved_mx[k], apply_linear(u, mx[k])) for k in mx)
    bw_plain = nets.bw_check(scenario.rep, v)
    with_counter = nets.RepSample(scenario.rep.generator, scenario.rep.j, list(scenario.rep.elements))
    with_counter.add(nets.j_anticommuting_counterexample(with_counter.n))
    bw_counter = nets.bw_check(with_counter, v)
    ok = (dist_max < 1e-8 and dist_min < 1e-8 and isotony and sandwich and covariance < 1e-8
          and bw_plain.holds and not bw_counter.holds and bw_counter.witness == "counterexample_i")
    return CriterionResult(12, "nets", ok,
                           {"net_max_W_distance": dist_max, "net_min_W_distance": dist_min, "isotony": isotony,
                            "sandwich": sandwich, "covariance_distance": covariance,
                            "bw_holds_on_toy": bw_plain.holds, "bw_witness": bw_counter.witness})


def _rv(rng, d, r):
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z) * r


def check_fock(seed=0):
    rng = _rng(seed, 13)
    worst_inner = 0.0
    for _ in range(200):
        d = int(rng.integers(1, 4))
        v, w = _rv(rng, d, rng.uniform(0, 1)), _rv(rng, d, rng.uniform(0, 1))
        worst_inner = max(worst_inner, abs(fock.exp_inner(v, w, 20) - np.exp(np.vdot(v, w))))
    pairs = [(_rv(rng, 1, rng.uniform(0, 0.5)), _rv(rng, 1, rng.uniform(0, 0.5))) for _ in range(20)]
    pairs += [(_rv(rng, 2, rng.uniform(0, 0.5)), _rv(rng, 2, rng.uniform(0, 0.5))) for _ in range(3)]
    pairs.append((np.array([0.5]), np.array([0.5 * np.exp(0.29j)])))  # worst relative phase found by scanning
    worst_weyl = max(fock.weyl_relation_residual(x, y, 20) for x, y in pairs)
    worst_paths = 0.0
    for k in range(20):
        d = 1 + k % 2
        space = fock.fock_space(d, 16)
        x, v = _rv(rng, d, rng.uniform(0, 0.5)), _rv(rng, d, rng.uniform(0, 0.5))
        formula = fock.weyl_apply(x, fock.ExpVector(v, 16)).coefficients()
        matrix = fock.weyl_apply(x, space.exp_coefficients(v), 16)
        worst_paths = max(worst_paths, float(np.linalg.norm(formula - matrix)))
    ok = worst_inner < 1e-12 and worst_weyl < 1e-8 and worst_paths < 1e-8
    return CriterionResult(13, "Fock space", ok,
                           {"max_exp_inner_error": float(worst_inner), "max_weyl_residual": worst_weyl,
                            "max_path_difference": worst_paths})


CHECKS = {
    1: check_modular_round_trip,
    2: check_graph_law,
    3: check_complement_laws,
    4: check_kms,
    5: check_root_table,
    6: check_cross,
    7: check_affine,
    8: check_rindler,
    9: check_de_sitter,
    10: check_sl2_covering,
    11: check_group_wedge,
    12: check_nets,
    13: check_fock,
}


def run_checks(numbers=None, seed=0):
    numbers = sorted(CHECKS) if numbers is None else numbers
    return [CHECKS[k](seed) for k in numbers]
