"""Matrix Lie algebras, Euler elements and 3-gradings.

An element of g is handled through its coordinate vector in the basis of a
:class:`LieAlgebraSpec`; ``spec.element(x)`` turns coordinates into a matrix.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from .cones import ConeSpec, SectionCone, SL2InvariantCone
from .errors import InvarianceViolated, NotInAlgebra, NotSkewHermitian, UnknownAlgebra

EULER_TOL = 1e-9


def _unit(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1.0
    return m


@dataclass(eq=False)
class LieAlgebraSpec:
    name: str
    basis: list
    cones: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)

    def __post_init__(self):
        self.basis = [np.asarray(b, dtype=float) for b in self.basis]
        self._flat = np.column_stack([b.ravel() for b in self.basis])
        self._pinv = np.linalg.pinv(self._flat)
        self._structure = None

    @property
    def dim(self):
        return len(self.basis)

    @property
    def matrix_size(self):
        return self.basis[0].shape[0]

    def element(self, x):
        x = np.asarray(x, dtype=float)
        return np.tensordot(x, np.array(self.basis), axes=1)

    def coords(self, m, tol=1e-9):
        m = np.asarray(m, dtype=float)
        x = self._pinv @ m.ravel()
        resid = float(np.linalg.norm(self._flat @ x - m.ravel()))
        if resid > tol * max(1.0, float(np.linalg.norm(m))):
            raise NotInAlgebra(f"matrix is not in {self.name} (residual {resid:.3e})")
        return x

    def bracket(self, x, y):
        a, b = self.element(x), self.element(y)
        return self.coords(a @ b - b @ a)

    def structure_constants(self):
        """c[i, j, k] with [X_i, X_j] = sum_k c[i, j, k] X_k."""
        if self._structure is None:
            d = self.dim
            c = np.zeros((d, d, d))
            for i in range(d):
                for j in range(d):
                    a, b = self.basis[i], self.basis[j]
                    c[i, j] = self.coords(a @ b - b @ a)
            self._structure = c
        return self._structure

    def jacobi_defect(self):
        c = self.structure_constants()
        # [[X_i, X_j], X_k] + cyclic, expanded in structure constants
        t = np.einsum("ijm,mkn->ijkn", c, c)
        cyc = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
        return float(np.max(np.abs(cyc)))

    def named(self, name):
        if name not in self.elements:
            raise NotInAlgebra(f"{self.name} has no named element {name!r}")
        return np.asarray(self.elements[name], dtype=float)

    def to_json(self):
        return {"name": self.name, "matrix_size": self.matrix_size, "basis": [b.tolist() for b in self.basis]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["name"], [np.array(b, dtype=float) for b in obj["basis"]])


def ad_matrix(g: LieAlgebraSpec, x) -> np.ndarray:
    """Matrix of y -> [x, y] in the basis of g."""
    c = g.structure_constants()
    return np.einsum("i,ijk->kj", np.asarray(x, dtype=float), c)


# --------------------------------------------------------------------- catalog


def _sl(n):
    basis = [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    basis += [_unit(n, k, k) - _unit(n, k + 1, k + 1) for k in range(n - 1)]
    return basis


def h_k(n, k):
    return np.diag([(n - k) / n] * k + [-k / n] * (n - k))


def _sl_spec(n):
    if n == 2:
        g = LieAlgebraSpec("sl2", [np.diag([0.5, -0.5]), _unit(2, 0, 1), _unit(2, 1, 0)])
        g.cones["invariant"] = SL2InvariantCone(1)
        g.elements.update(h=[1, 0, 0], e=[0, 1, 0], f=[0, 0, 1])
    else:
        g = LieAlgebraSpec(f"sl{n}", _sl(n))
    for k in range(1, n):
        g.elements[f"h{k}"] = g.coords(h_k(n, k))
    return g


def _gl_spec(n):
    g = LieAlgebraSpec(f"gl{n}", [_unit(n, i, j) for i in range(n) for j in range(n)])
    for k in range(1, n):
        g.elements[f"h{k}"] = g.coords(h_k(n, k))
    g.elements["one"] = g.coords(np.eye(n))
    return g


def _so_spec(p, q):
    n = p + q
    eta = np.diag([1.0] * p + [-1.0] * q)
    # X = eta A with A antisymmetric satisfies X^T eta + eta X = 0
    basis = [eta @ (_unit(n, i, j) - _unit(n, j, i)) for i in range(n) for j in range(i + 1, n)]
    g = LieAlgebraSpec(f"so({p},{q})", basis)
    if p >= 1 and q >= 1:
        g.elements["boost"] = g.coords(_unit(n, 0, p) + _unit(n, p, 0))
    return g


def _sp_spec(n):
    z = np.zeros((n, n))
    basis = []
    for i in range(n):
        for j in range(n):
            a = _unit(n, i, j)
            basis.append(np.block([[a, z], [z, -a.T]]))
    for i in range(n):
        for j in range(i, n):
            s = _unit(n, i, j) + _unit(n, j, i) if i != j else _unit(n, i, i)
            basis.append(np.block([[z, s], [z, z]]))
            basis.append(np.block([[z, z], [s, z]]))
    g = LieAlgebraSpec(f"sp{2 * n}", basis)
    for k in range(1, n):
        d = np.diag([1.0] * k + [0.0] * (n - k))
        g.elements[f"h{k}"] = g.coords(np.block([[d, z], [z, -d]]))
    g.elements[f"h{n}"] = g.coords(0.5 * np.block([[np.eye(n), z], [z, -np.eye(n)]]))
    return g


def _affine_line():
    g = LieAlgebraSpec("aff1", [_unit(2, 0, 0), _unit(2, 0, 1)])
    g.elements["h"] = [1.0, 0.0]
    return g


def _poincare(d):
    """R^{1,d-1} semidirect so(1,d-1) as (d+1) x (d+1) matrices [[X, v], [0, 0]]."""
    lor = _so_spec(1, d - 1)
    basis = []
    for x in lor.basis:
        m = np.zeros((d + 1, d + 1))
        m[:d, :d] = x
        basis.append(m)
    for i in range(d):
        basis.append(_unit(d + 1, i, d))
    g = LieAlgebraSpec(f"poincare{d}", basis)
    boost = np.zeros((d + 1, d + 1))
    boost[:d, :d] = _unit(d, 0, 1) + _unit(d, 1, 0)
    g.elements["boost"] = g.coords(boost)
    return g


def _oscillator():
    """Heisenberg algebra span{q, p, z} extended by an Euler element h, inside sl3."""
    h = np.diag([1.0, -2.0, 1.0]) / 3.0
    g = LieAlgebraSpec("oscillator", [h, _unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)])
    g.elements.update(h=[1, 0, 0, 0], q=[0, 1, 0, 0], p=[0, 0, 1, 0], z=[0, 0, 0, 1])
    return g


def _hcsp():
    """heis(R^2, omega) semidirect (sp2 + R id) as 4 x 4 matrices.

    The Heisenberg vector v sits as [[0, (L v)^T, 0], [0, 0, v], [0, 0, 0]]
    with L = -Omega/2, so that [v, v'] = omega(v, v') z with z = E_03.
    """
    om = np.array([[0.0, 1.0], [-1.0, 0.0]])
    lm = -0.5 * om

    def heis(v):
        m = np.zeros((4, 4))
        m[0, 1:3] = lm @ v
        m[1:3, 3] = v
        return m

    def sp(x):
        m = np.zeros((4, 4))
        m[1:3, 1:3] = x
        return m

    basis = [
        _unit(4, 0, 3),
        heis(np.array([1.0, 0.0])),
        heis(np.array([0.0, 1.0])),
        sp(np.diag([0.5, -0.5])),
        sp(_unit(2, 0, 1)),
        sp(_unit(2, 1, 0)),
        np.diag([1.0, 0.0, 0.0, -1.0]),
    ]
    g = LieAlgebraSpec("hcsp2", basis)
    g.elements.update(
        h=[0, 0, 0, 1, 0, 0, 0.5],
        hs=[0, 0, 0, 1, 0, 0, 0],
        jacobi=[1, 0, 0, 1, 0, 0, 0],
        z=[1, 0, 0, 0, 0, 0, 0],
        D=[0, 0, 0, 0, 0, 0, 1],
    )
    return g


_CATALOG_PATTERNS = [
    (r"sl(\d+)", lambda m: _sl_spec(int(m[1]))),
    (r"gl(\d+)", lambda m: _gl_spec(int(m[1]))),
    (r"so\((\d+),(\d+)\)", lambda m: _so_spec(int(m[1]), int(m[2]))),
    (r"sp(\d+)", lambda m: _sp_spec(int(m[1]) // 2)),
    (r"aff1", lambda m: _affine_line()),
    (r"poincare(\d+)", lambda m: _poincare(int(m[1]))),
    (r"oscillator", lambda m: _oscillator()),
    (r"hcsp2", lambda m: _hcsp()),
]


def catalog(name: str) -> LieAlgebraSpec:
    """Built-in algebras: sl<n>, gl<n>, so(p,q), sp<2n>, aff1, poincare<d>, oscillator, hcsp2."""
    key = name.replace(" ", "").lower()
    for pat, build in _CATALOG_PATTERNS:
        m = re.fullmatch(pat, key)
        if m:
            if pat == r"sp(\d+)" and int(m[1]) % 2:
                break
            return build(m)
    raise UnknownAlgebra(f"no catalog algebra named {name!r}")


# --------------------------------------------------------------- Euler data


@dataclass
class EulerDatum:
    """Spectral data of a diagonalizable operator with spectrum in {-1, 0, 1}.

    ``operator`` is ad h for Lie-algebra elements, or any matrix acting on a
    vector space in the affine setting; ``h`` holds the coordinates when known.
    """

    h: np.ndarray | None
    operator: np.ndarray
    spectrum: list
    p_minus: np.ndarray
    p_zero: np.ndarray
    p_plus: np.ndarray

    @property
    def tau(self):
        return tau_h_matrix(self)

    def projection(self, k):
        return {-1: self.p_minus, 0: self.p_zero, 1: self.p_plus}[k]

    def dims(self):
        return {k: int(round(np.trace(self.projection(k)))) for k in (-1, 0, 1)}


@dataclass
class EulerCheck:
    is_euler: bool
    reason: str
    datum: EulerDatum | None = None


def _kernel_dim(m, tol):
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0:
        return 0
    scale = max(1.0, float(s[0]))
    return int(np.sum(s <= tol * scale))


def grading_check(op, tol=EULER_TOL, h=None) -> EulerCheck:
    op = np.asarray(op, dtype=float)
    d = op.shape[0]
    if np.max(np.abs(op), initial=0.0) <= tol:
        return EulerCheck(False, "operator vanishes")
    ev = np.linalg.eigvals(op)
    if np.max(np.abs(ev.imag)) > 1e3 * tol:
        return EulerCheck(False, "non-real eigenvalues")
    ev = ev.real
    if np.any(np.min(np.abs(ev[:, None] - np.array([-1.0, 0.0, 1.0])[None, :]), axis=1) > 1e3 * tol):
        return EulerCheck(False, "eigenvalue outside {-1, 0, 1}")
    eye = np.eye(d)
    kernels = {lam: _kernel_dim(op - lam * eye, 1e3 * tol) for lam in (-1, 0, 1)}
    if sum(kernels.values()) != d:
        return EulerCheck(False, "not diagonalizable")
    proj = {}
    for lam in (-1, 0, 1):
        p = eye.copy()
        for mu in (-1, 0, 1):
            if mu != lam:
                p = p @ (op - mu * eye) / (lam - mu)
        proj[lam] = p
    spectrum = sorted(k for k, v in kernels.items() for _ in range(v))
    datum = EulerDatum(None if h is None else np.asarray(h, dtype=float), op, spectrum, proj[-1], proj[0], proj[1])
    return EulerCheck(True, "ok", datum)


def euler_check(g: LieAlgebraSpec, h, tol=EULER_TOL) -> EulerCheck:
    """Euler test for h given by coordinates or as a matrix of the defining representation."""
    h = np.asarray(h, dtype=float)
    if h.ndim == 2:
        h = g.coords(h)
    elif h.shape != (g.dim,):
        raise NotInAlgebra(f"expected {g.dim} coordinates, got shape {h.shape}")
    return grading_check(ad_matrix(g, h), tol, h)


def tau_h_matrix(datum: EulerDatum) -> np.ndarray:
    return datum.p_zero - datum.p_plus - datum.p_minus


def grading_defect(g: LieAlgebraSpec, datum: EulerDatum) -> float:
    """max over basis pairs of the component of [g_i, g_j] outside g_{i+j}."""
    worst = 0.0
    eye = np.eye(g.dim)
    c = g.structure_constants()
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            target = datum.projection(i + j) if abs(i + j) <= 1 else np.zeros_like(eye)
            pi, pj = datum.projection(i), datum.projection(j)
            for a in range(g.dim):
                for b in range(g.dim):
                    br = np.einsum("i,j,ijk->k", pi[:, a], pj[:, b], c)
                    worst = max(worst, float(np.linalg.norm(br - target @ br)))
    return worst


def automorphism_defect(g: LieAlgebraSpec, m) -> float:
    """max |m[x, y] - [m x, m y]| over basis pairs."""
    c = g.structure_constants()
    lhs = np.einsum("ijk,lk->ijl", c, m)
    rhs = np.einsum("ai,bj,abk->ijk", m, m, c)
    return float(np.max(np.abs(lhs - rhs)))


# ------------------------------------------------------------------- cones


@dataclass
class GradedCones:
    plus: SectionCone
    minus: SectionCone


def cone_graded_parts(cone: ConeSpec, datum: EulerDatum, samples=200, rng=None, tol=1e-9, check=True) -> GradedCones:
    """C_+ = C ∩ g_1 and C_- = -C ∩ g_{-1}, after sampled invariance checks.

    Under e^{R ad h}- and (-tau_h)-invariance one has
    C° ∩ (g_1 + g_{-1}) = ri(C_+) x ri(C ∩ g_{-1}), so relative interiors are
    tested by adding a fixed point of the opposite open part.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    minus_tau = -tau_h_matrix(datum)
    for _ in range(samples if check else 0):
        x = cone.sample(rng)
        t = rng.uniform(-2.0, 2.0)
        flow = datum.p_plus * np.exp(t) + datum.p_zero + datum.p_minus * np.exp(-t)
        for image, what in ((flow @ x, f"e^(t ad h), t={t:.3f}"), (minus_tau @ x, "-tau_h")):
            if not cone.contains(image, tol):
                raise InvarianceViolated(f"cone not invariant under {what}", witness=x)
        for k in (1, -1):
            if not cone.contains(datum.projection(k) @ x, tol):
                raise InvarianceViolated(f"p_{k}(C) not inside C", witness=x)
    u = cone.interior_point()
    plus = SectionCone(cone, datum.p_plus, 1, datum.p_minus @ u)
    minus = SectionCone(cone, datum.p_minus, -1, datum.p_plus @ u)
    return GradedCones(plus, minus)


def rep_positive_cone_contains(generators, x, tol=1e-9) -> bool:
    """-i sum x_k pi(X_k) >= 0 for skew-Hermitian pi(X_k)."""
    gens = [np.asarray(m, dtype=complex) for m in generators]
    for k, m in enumerate(gens):
        if np.linalg.norm(m + m.conj().T) > tol * max(1.0, np.linalg.norm(m)):
            raise NotSkewHermitian(f"generator {k} is not skew-Hermitian")
    op = -1j * np.tensordot(np.asarray(x, dtype=float), np.array(gens), axes=1)
    op = 0.5 * (op + op.conj().T)
    return bool(np.linalg.eigvalsh(op)[0] >= -tol)


# --------------------------------------------------------------- symmetry


class Symmetry(enum.Enum):
    CONFIRMED = "confirmed"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass
class SymmetryResult:
    symmetric: Symmetry
    reason: str
    witness: list | None = None  # group element g as a matrix
    residual: float | None = None


def _rational_multiset(values, denom=1 << 20):
    return sorted(Fraction(round(v * denom), denom) for v in values)


def symmetric_euler_search(g: LieAlgebraSpec, datum: EulerDatum, budget=40, seed=0, tol=1e-9) -> SymmetryResult:
    """Tri-state test of -h in Inn(g) h.

    Refutations use conjugation invariants (eigenvalues of h on the defining
    module and the grading dimensions). Confirmation searches words
    exp(X_1) exp(X_2) with X_i in the transpose-skew part of g when that part
    is nonzero (it contains a maximal compact subalgebra for the catalog's
    transpose-stable algebras), otherwise in all of g.
    """
    hm = g.element(datum.h)
    ev = np.linalg.eigvals(hm)
    if np.max(np.abs(ev.imag)) < 1e-6:
        if _rational_multiset(ev.real) != _rational_multiset(-ev.real):
            return SymmetryResult(Symmetry.REFUTED, "eigenvalues of h and -h differ on the defining module")
    dims = datum.dims()
    if dims[1] != dims[-1]:
        return SymmetryResult(Symmetry.REFUTED, "dim g_1 != dim g_-1")

    kmats = []
    for b in g.basis:
        try:
            g.coords(0.5 * (b - b.T))
            kmats.append(0.5 * (b - b.T))
        except NotInAlgebra:
            continue
    search = list(g.basis)
    if kmats:
        u, s, _ = np.linalg.svd(np.column_stack([m.ravel() for m in kmats]), full_matrices=False)
        search = [u[:, i].reshape(hm.shape) for i in range(int(np.sum(s > 1e-9 * s[0])))]
    rng = np.random.default_rng(seed)
    nrm = np.linalg.norm(hm)

    basis = np.array(search)
    m = len(search)

    def word(t):
        return expm(np.tensordot(t[:m], basis, axes=1)) @ expm(np.tensordot(t[m:], basis, axes=1))

    def residual(t):
        w = word(t)
        return (w @ hm @ np.linalg.inv(w) + hm).ravel() / nrm

    best = None
    for _ in range(budget):
        t0 = rng.uniform(-np.pi, np.pi, 2 * m)
        res = least_squares(residual, t0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        r = float(np.linalg.norm(res.fun))
        if best is None or r < best[0]:
            best = (r, res.x)
        if r < tol:
            return SymmetryResult(Symmetry.CONFIRMED, "found g with Ad(g)h = -h", word(res.x).tolist(), r)
    return SymmetryResult(Symmetry.UNKNOWN, "search budget exhausted", None, best[0])
