"""Standard subspaces attached to regions: BGL pairs, the endomorphism test
U(g)V ⊆ V, standard pairs, and the minimal and maximal nets over a finite
sample of group elements.

A scenario lists unitaries U(g) by label, each tagged with whether g lies in
the compression semigroup S_W of the reference wedge, and regions listing the
labels g with O ⊆ gW (covered_by) and with gW ⊆ O (contains). The geometric
side is decided by :mod:`modwedge.causal`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from . import causal
from .errors import EquivarianceViolated, NotPositive, NotUnitary, ValidationError
from .hilbert import (
    DEFAULT_TOL,
    AntilinearOp,
    RealSubspace,
    apply_linear,
    full_space,
    is_subspace,
    is_unitary,
    real_intersect,
    real_sum,
    zero_subspace,
)
from .io import decode_matrix, encode_matrix, frame_to_json
from .modular import TWO_PI, ModularPair, SpectralModel, hermitian_function, spectral_model_build, standard_from_pair


@dataclass(frozen=True, eq=False)
class RepElement:
    label: str
    matrix: np.ndarray
    in_sw: bool


@dataclass(eq=False)
class RepSample:
    generator: np.ndarray
    j: AntilinearOp
    elements: list = field(default_factory=list)

    def __post_init__(self):
        self.generator = np.asarray(self.generator, dtype=complex)
        if not isinstance(self.j, AntilinearOp):
            self.j = AntilinearOp(self.j)
        self._by_label = {e.label: e for e in self.elements}
        if len(self._by_label) != len(self.elements):
            raise ValidationError("duplicate element labels")

    @property
    def n(self):
        return self.generator.shape[0]

    def __getitem__(self, label) -> RepElement:
        try:
            return self._by_label[label]
        except KeyError:
            raise ValidationError(f"unknown element label {label!r}") from None

    def add(self, element: RepElement):
        if element.label in self._by_label:
            raise ValidationError(f"duplicate element label {element.label!r}")
        self.elements.append(element)
        self._by_label[element.label] = element

    def validate(self, tol=DEFAULT_TOL):
        for e in self.elements:
            if not is_unitary(e.matrix, tol):
                raise NotUnitary(f"element {e.label!r} is not unitary")
        if not self.j.is_involution(tol):
            raise ValidationError("J is not an involution")
        resid = float(np.linalg.norm(self.j.conjugate(self.generator) + self.generator, 2))
        if resid > tol * max(1.0, float(np.linalg.norm(self.generator, 2))):
            raise EquivarianceViolated(resid)


@dataclass
class BGLPair:
    pair: ModularPair
    subspace: RealSubspace


def bgl_pair(a, j: AntilinearOp, tol=DEFAULT_TOL) -> BGLPair:
    """Delta = e^{-2 pi A}, J as given, and V = Fix(J Delta^{1/2})."""
    a = np.asarray(a, dtype=complex)
    resid = float(np.linalg.norm(j.conjugate(a) + a, 2))
    if resid > tol * max(1.0, float(np.linalg.norm(a, 2))):
        raise EquivarianceViolated(resid)
    delta = hermitian_function(a, lambda w: np.exp(-TWO_PI * w))
    pair = ModularPair(delta, j)
    return BGLPair(pair, standard_from_pair(pair, tol))


def inclusion_defect(inner: RealSubspace, outer: RealSubspace) -> float:
    """|(1 - P_outer) P_inner|, zero iff inner ⊆ outer."""
    if inner.dim == 0:
        return 0.0
    r = inner.real_frame
    return float(np.linalg.norm(r - outer.projector() @ r, 2))


def sv_contains(u, v: RealSubspace, tol=None) -> bool:
    """U V ⊆ V."""
    u = np.asarray(u, dtype=complex)
    tol = v.tol if tol is None else tol
    if not is_unitary(u, max(tol, DEFAULT_TOL)):
        raise NotUnitary("U is not unitary")
    return is_subspace(apply_linear(u, v), v, tol)


@dataclass
class StandardPairReport:
    positive: bool
    min_eigenvalue: float
    inclusion: list  # (t, defect)
    inclusion_ok: bool
    commutation: list | None  # (s, t, residual)
    commutation_ok: bool | None

    @property
    def passes(self) -> bool:
        return self.positive and self.inclusion_ok and self.commutation_ok is not False

    def to_json(self):
        return {
            "positive": self.positive,
            "min_eigenvalue": self.min_eigenvalue,
            "inclusion": [{"t": t, "defect": d} for t, d in self.inclusion],
            "inclusion_ok": self.inclusion_ok,
            "commutation": None if self.commutation is None
            else [{"s": s, "t": t, "residual": r} for s, t, r in self.commutation],
            "commutation_ok": self.commutation_ok,
            "passes": self.passes,
        }


def standard_pair_check(p, pair: ModularPair, t_grid=(0.0, 0.5, 1.0, 2.0), s_grid=None, tol=1e-8,
                        strict=False) -> StandardPairReport:
    """Checks for (V, e^{itP}) to be a standard pair.

    (i) P >= 0; (ii) e^{itP} V ⊆ V for t >= 0 on the grid; (iii) when
    ``s_grid`` is given, Delta^{-is/2pi} e^{itP} Delta^{is/2pi} = e^{i e^s t P}.
    In finite dimension (iii) forces P = 0, so any nonzero P fails it.
    With ``strict`` a negative eigenvalue raises instead of being reported.
    """
    p = np.asarray(p, dtype=complex)
    eig = np.linalg.eigvalsh(0.5 * (p + p.conj().T))
    lowest = float(eig[0]) if eig.size else 0.0
    positive = lowest >= -tol
    if strict and not positive:
        raise NotPositive(f"P has eigenvalue {lowest:.6g}")
    v = standard_from_pair(pair)
    inclusion = []
    for t in t_grid:
        if t < 0:
            continue
        inclusion.append((float(t), inclusion_defect(apply_linear(expm(1j * t * p), v), v)))
    inclusion_ok = all(d <= tol for _, d in inclusion)
    commutation, commutation_ok = None, None
    if s_grid is not None:
        commutation = []
        for s in s_grid:
            d_minus = pair.power(-1j * s / TWO_PI)
            d_plus = pair.power(1j * s / TWO_PI)
            for t in t_grid:
                lhs = d_minus @ expm(1j * t * p) @ d_plus
                rhs = expm(1j * np.exp(s) * t * p)
                commutation.append((float(s), float(t), float(np.linalg.norm(lhs - rhs, 2))))
        commutation_ok = all(r <= tol for _, _, r in commutation)
    return StandardPairReport(positive, lowest, inclusion, inclusion_ok, commutation, commutation_ok)


# ------------------------------------------------------------------ nets


@dataclass(frozen=True)
class Region:
    label: str
    covered_by: tuple = ()
    contains: tuple = ()


class NetAssignment(dict):
    """Region label -> RealSubspace."""

    def to_json(self):
        return {label: frame_to_json(v) for label, v in self.items()}


def _image(rep: RepSample, label, v):
    return apply_linear(rep[label].matrix, v)


def net_max(regions, rep: RepSample, v: RealSubspace) -> NetAssignment:
    """H(O) = ∩ U(g)V over g with O ⊆ gW; the empty intersection is the full space."""
    out = NetAssignment()
    for region in regions:
        acc = full_space(rep.n, v.tol)
        for label in sorted(region.covered_by):
            acc = real_intersect(acc, _image(rep, label, v))
        out[region.label] = acc
    return out


def net_min(regions, rep: RepSample, v: RealSubspace) -> NetAssignment:
    """H(O) = Σ U(g)V over g with gW ⊆ O; the empty sum is {0}."""
    out = NetAssignment()
    for region in regions:
        acc = zero_subspace(rep.n, v.tol)
        for label in sorted(region.contains):
            acc = real_sum(acc, _image(rep, label, v))
        out[region.label] = acc
    return out


@dataclass
class BWResult:
    holds: bool
    witness: str | None = None
    defect: float = 0.0


def bw_check(rep: RepSample, v: RealSubspace, tol=None) -> BWResult:
    """Every sampled element tagged in S_W maps V into itself."""
    tol = v.tol if tol is None else tol
    worst = BWResult(True)
    for e in sorted(rep.elements, key=lambda e: e.label):
        if not e.in_sw:
            continue
        d = inclusion_defect(apply_linear(e.matrix, v), v)
        if d > tol and (worst.holds or d > worst.defect):
            worst = BWResult(False, e.label, d)
    return worst


# -------------------------------------------------------------- scenarios


@dataclass(eq=False)
class Scenario:
    rep: RepSample
    regions: list

    def to_json(self):
        return {
            "generator": encode_matrix(self.rep.generator),
            "j_matrix": encode_matrix(self.rep.j.matrix),
            "elements": [
                {"label": e.label, "matrix": encode_matrix(e.matrix), "in_SW": bool(e.in_sw)}
                for e in self.rep.elements
            ],
            "regions": [
                {"label": r.label, "covered_by": list(r.covered_by), "contains": list(r.contains)}
                for r in self.regions
            ],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            elements = [RepElement(e["label"], decode_matrix(e["matrix"]), bool(e["in_SW"])) for e in obj["elements"]]
            rep = RepSample(decode_matrix(obj["generator"]), AntilinearOp(decode_matrix(obj["j_matrix"])), elements)
            regions = [Region(r["label"], tuple(r.get("covered_by", ())), tuple(r.get("contains", ())))
                       for r in obj["regions"]]
        except (KeyError, TypeError) as err:
            raise ValidationError(f"malformed scenario ({err})") from err
        for r in regions:
            for label in r.covered_by + r.contains:
                rep[label]
        return cls(rep, regions)


TOY_ATOMS = ((1.0, 1.0), (-1.0, 1.0), (0.5, 1.0), (-0.5, 1.0))
TOY_ANGLES = 12
TOY_RADII = (0.5, 1.5)
TOY_TIMES = (0.0, 0.5)


def toy_rotation_generator():
    """Integer-spectrum M acting on the (0.5, -0.5) spectral pair, so e^{2 pi i M} = 1."""
    m = np.zeros((4, 4), dtype=complex)
    m[2, 3] = m[3, 2] = 1.0
    return m


def toy_regions(rotation=0.0):
    """Double cones O_small ⊂ O_big ⊂ W_R, a rotated wedge, and a region meeting no wedge, rotated by ``rotation``."""
    r = causal.rotation_12(rotation)
    cones = {
        "O_small": (np.array([0.0, 2.0, 0.0]), 0.4),
        "O_big": (np.array([0.0, 2.0, 0.0]), 1.0),
        "O_spread": (np.array([0.0, 0.0, 0.0]), 3.0),
    }
    out = {label: ("cone", [r @ p for p in causal.double_cone_points(c, rad)]) for label, (c, rad) in cones.items()}
    out["W"] = ("wedge", (np.zeros(3), r))
    out["W_rot"] = ("wedge", (np.zeros(3), r @ causal.rotation_12(2 * np.pi / TOY_ANGLES * 3)))
    return out


# isotony pairs (smaller, larger) on the region poset
TOY_ORDER = (("O_small", "O_big"), ("O_big", "W"), ("O_small", "W"))


def toy_elements():
    """Sampled Poincaré elements g = (a, R_theta b_t) with translations on a rotation-invariant grid."""
    out = []
    shifts = [np.zeros(3)]
    for rad in TOY_RADII:
        for k in range(TOY_ANGLES):
            a = 2 * np.pi * k / TOY_ANGLES
            shifts.append(np.array([0.0, rad * np.cos(a), rad * np.sin(a)]))
    for i, a in enumerate(shifts):
        for k in range(TOY_ANGLES):
            for m, t in enumerate(TOY_TIMES):
                lam = causal.rotation_12(2 * np.pi * k / TOY_ANGLES) @ causal.boost(3, t)
                out.append((f"g{i:02d}_r{k:02d}_t{m}", (a, lam), k, t))
    return out


def toy_scenario(rotation_steps=0, eps=1e-6):
    """Spectral-model toy: U(a, R_theta b_t) = e^{i theta M} e^{i t A}.

    Translations act trivially, which is forced for a finite-dimensional
    positive-energy representation. Regions are rotated by
    ``rotation_steps`` multiples of 2 pi / 12.
    """
    build = spectral_model_build(SpectralModel(TOY_ATOMS))
    a_gen = build.generator
    m = toy_rotation_generator()
    rep = RepSample(a_gen, build.pair.j)
    for label, g, k, t in toy_elements():
        u = expm(1j * (2 * np.pi * k / TOY_ANGLES) * m) @ expm(1j * t * a_gen)
        rep.add(RepElement(label, u, causal.rindler_compression_contains(*g)))
    geometry = {label: g for label, g, _, _ in toy_elements()}
    regions = []
    for label, (kind, data) in toy_regions(2 * np.pi / TOY_ANGLES * rotation_steps).items():
        if kind == "cone":
            covered = tuple(l for l, g in geometry.items() if causal.wedge_covers_points(g, data, eps))
            contains = ()  # wedges are unbounded, never inside a double cone
        else:
            covered = tuple(l for l, g in geometry.items() if causal.wedge_inside_wedge(data, g))
            contains = tuple(l for l, g in geometry.items() if causal.wedge_inside_wedge(g, data))
        regions.append(Region(label, covered, contains))
    return Scenario(rep, regions), build


def j_anticommuting_counterexample(n) -> RepElement:
    """U = i 1 commutes with Delta and anticommutes with any antilinear J."""
    return RepElement("counterexample_i", 1j * np.eye(n), True)
