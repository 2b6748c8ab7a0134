"""Modular objects of standard subspaces.

Conventions: the Tomita operator of a standard subspace V is the antilinear
involution T(v + iw) = v - iw, with polar decomposition T = J Delta^{1/2}.
One-parameter groups are normalised by Delta^{-it/2pi} = e^{itA}, i.e.
Delta = e^{-2 pi A}.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    AsymmetricAtoms,
    IllConditioned,
    ModularRelationViolated,
    NegativeWeight,
    NotStandard,
)
from .hilbert import (
    DEFAULT_TOL,
    AntilinearOp,
    RealSubspace,
    multiply_by_i,
    random_unitary,
    real_intersect,
    complexify,
    real_orthogonal_complement,
    real_orthonormalize,
    real_sum,
    realify,
)

TWO_PI = 2 * np.pi


def hermitian_function(a, fn, clamp_tol=None):
    """fn(a) for Hermitian ``a`` via eigendecomposition.

    With ``clamp_tol`` set, eigenvalues are clamped below at
    clamp_tol * max-eigenvalue (used before fractional/negative powers).
    """
    a = np.asarray(a, dtype=complex)
    w, u = np.linalg.eigh(0.5 * (a + a.conj().T))
    if clamp_tol is not None:
        floor = clamp_tol * np.max(w)
        if np.any(w < floor):
            warnings.warn("clamping near-zero eigenvalues of a positive operator", RuntimeWarning)
            w = np.maximum(w, floor)
    return (u * fn(w)) @ u.conj().T


@dataclass(frozen=True, eq=False)
class ModularPair:
    delta: np.ndarray
    j: AntilinearOp

    def __post_init__(self):
        d = np.array(self.delta, dtype=complex)
        d.setflags(write=False)
        object.__setattr__(self, "delta", d)
        if not isinstance(self.j, AntilinearOp):
            object.__setattr__(self, "j", AntilinearOp(self.j))

    @property
    def n(self):
        return self.delta.shape[0]

    def power(self, s):
        """Delta^s for complex s."""
        return hermitian_function(self.delta, lambda w: np.exp(s * np.log(w)), clamp_tol=1e-300)

    def inverse(self):
        return hermitian_function(self.delta, lambda w: 1.0 / w)

    def modular_residual(self) -> float:
        """|J Delta J - Delta^{-1}| in operator norm."""
        return float(np.linalg.norm(self.j.conjugate(self.delta) - self.inverse(), 2))

    def modular_group(self, t):
        """Delta^{it}."""
        return self.power(1j * t)

    def tomita(self) -> AntilinearOp:
        """S = J Delta^{1/2}."""
        return AntilinearOp(self.j.matrix @ np.conj(self.power(0.5)))


def standardness_defects(v: RealSubspace):
    """(cyclic defect, separating defect) as real dimensions missing / in excess."""
    n = v.ambient_dim
    cyc = 2 * n - real_sum(v, multiply_by_i(v)).dim
    sep = real_intersect(v, multiply_by_i(v)).dim
    return cyc, sep


def tomita_operator(v: RealSubspace) -> AntilinearOp:
    """Antilinear M with M conj(B) = B for the frame B of V."""
    cyc, sep = standardness_defects(v)
    if cyc or sep or v.dim != v.ambient_dim:
        raise NotStandard(cyc, sep)
    b = v.frame
    cond = np.linalg.cond(b)
    if not np.isfinite(cond) or cond > 1.0 / v.tol:
        raise IllConditioned(float(cond))
    m = np.linalg.solve(np.conj(b).T, b.T).T  # B conj(B)^{-1}
    return AntilinearOp(m)


def modular_pair(v: RealSubspace) -> ModularPair:
    t = tomita_operator(v)
    m = t.matrix
    delta = m.T @ np.conj(m)
    delta = 0.5 * (delta + delta.conj().T)
    inv_sqrt = hermitian_function(delta, lambda w: w ** -0.5, clamp_tol=v.tol)
    j = AntilinearOp(m @ np.conj(inv_sqrt))
    return ModularPair(delta, j)


def standard_from_pair(pair: ModularPair, tol=DEFAULT_TOL) -> RealSubspace:
    """Fix(J Delta^{1/2}), the range of the real projector (1 + S)/2."""
    resid = pair.modular_residual()
    scale = max(1.0, float(np.linalg.norm(pair.delta, 2)), float(np.linalg.norm(pair.inverse(), 2)))
    if resid > tol * scale:
        raise ModularRelationViolated(resid)
    n = pair.n
    eye = np.eye(n, dtype=complex)
    basis = np.hstack([eye, 1j * eye])
    # Fix(J Delta^{1/2}) = Delta^{-1/4} Fix(J); J is antiunitary so Fix(J) is well conditioned
    fix_j = real_orthonormalize(0.5 * (basis + pair.j(basis)), tol)
    if fix_j.dim != n:
        raise ModularRelationViolated(resid)
    q, _ = np.linalg.qr(realify(pair.power(-0.25) @ fix_j.frame))
    return RealSubspace(n, complexify(q), tol)


def random_standard_subspace(n, rng, spread=1.0, tol=DEFAULT_TOL) -> RealSubspace:
    """g R^n with g = u exp(H), u Haar-unitary and |H| = spread.

    Bounding |H| bounds cond(g) by e^{2 spread}, which keeps Delta away from
    the regime where absolute residuals are dominated by rounding.
    """
    h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = 0.5 * (h + h.conj().T)
    h *= spread / np.linalg.norm(h, 2)
    g = random_unitary(n, rng) @ hermitian_function(h, np.exp)
    return real_orthonormalize(g, tol)


def symplectic_complement(v: RealSubspace) -> RealSubspace:
    """V' = {w : Im<v, w> = 0 for all v in V} = i (V^perp_R)."""
    return multiply_by_i(real_orthogonal_complement(v))


def graph_subspace(a, tol=DEFAULT_TOL) -> RealSubspace:
    """Graph of a Hermitian positive matrix as a real subspace of C^n (+) C^n.

    The second summand carries the conjugate complex structure, so the graph
    is realised as {(v, conj(A v))}.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    cols = np.vstack([np.hstack([eye, 1j * eye]), np.conj(a @ np.hstack([eye, 1j * eye]))])
    return real_orthonormalize(cols, tol)


# --------------------------------------------------------------------- KMS


DEFAULT_KMS_GRID = tuple(np.linspace(-3.0, 3.0, 21)) + (0.5j * np.pi, 1j * np.pi)


@dataclass
class KMSOrbitResult:
    member: bool
    residual: float
    values: np.ndarray
    residuals: np.ndarray


def orbit_map(pair: ModularPair, xi, z):
    """alpha^xi(z) = Delta^{-iz/2pi} xi."""
    return pair.power(-1j * z / TWO_PI) @ np.asarray(xi, dtype=complex)


def kms_orbit_check(pair: ModularPair, xi, grid=DEFAULT_KMS_GRID, tol=1e-9) -> KMSOrbitResult:
    """Membership of xi in Fix(J Delta^{1/2}) through the boundary value at pi i.

    Per grid point z the residual |alpha(Re z + pi i) - J alpha(Re z)| / |xi|
    is reported; ``values`` holds alpha(z).
    """
    xi = np.asarray(xi, dtype=complex)
    norm = float(np.linalg.norm(xi))
    scale = norm if norm > 0 else 1.0
    boundary = pair.power(0.5) @ xi - pair.j(xi)
    member = float(np.linalg.norm(boundary)) <= tol * scale
    values, residuals = [], []
    for z in grid:
        z = complex(z)
        values.append(orbit_map(pair, xi, z))
        t = z.real
        r = orbit_map(pair, xi, t + 1j * np.pi) - pair.j(orbit_map(pair, xi, t))
        residuals.append(float(np.linalg.norm(r)) / scale)
    residuals = np.array(residuals)
    return KMSOrbitResult(member, float(residuals.max(initial=0.0)), np.array(values), residuals)


@dataclass(frozen=True)
class SpectralModel:
    """Finite spectral model: atoms (p, w) with the support symmetric under p -> -p."""

    atoms: tuple
    beta: float = TWO_PI

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple((float(p), float(w)) for p, w in self.atoms))


@dataclass(frozen=True)
class KMSFunctionData:
    atoms: tuple
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple((float(l), float(m)) for l, m in self.atoms))


def _pairing(ps):
    """Index permutation sending the k-th atom at p to the k-th atom at -p."""
    groups = {}
    for i, p in enumerate(ps):
        groups.setdefault(p, []).append(i)
    perm = np.empty(len(ps), dtype=int)
    for p, idx in groups.items():
        partner = groups.get(-p, [])
        if len(partner) != len(idx):
            raise AsymmetricAtoms(f"atom at {p} has no partner at {-p}")
        perm[idx] = partner
    return perm


@dataclass
class SpectralBuild:
    generator: np.ndarray
    pair: ModularPair
    subspace: RealSubspace


def spectral_model_build(model: SpectralModel, tol=DEFAULT_TOL) -> SpectralBuild:
    """A = diag(p), Delta = e^{-2 pi A}, (J f)(p) = conj f(-p), V = Fix(J Delta^{1/2})."""
    ps = np.array([p for p, _ in model.atoms])
    perm = _pairing(ps)
    m = len(ps)
    a = np.diag(ps).astype(complex)
    jm = np.zeros((m, m), dtype=complex)
    jm[perm, np.arange(m)] = 1.0
    j = AntilinearOp(jm)
    pair = ModularPair(np.diag(np.exp(-TWO_PI * ps)).astype(complex), j)
    resid = float(np.linalg.norm(j.conjugate(a) + a, 2))
    if resid > tol * max(1.0, float(np.max(np.abs(ps), initial=0.0))):
        raise AsymmetricAtoms(f"J A J != -A (residual {resid:.3e})")
    return SpectralBuild(a, pair, standard_from_pair(pair, tol))


@dataclass
class KMSClassification:
    is_kms: bool
    max_violation: float
    model: SpectralModel | None = None
    embedding: np.ndarray | None = None


def _merge_atoms(atoms):
    merged = {}
    for lam, mu in atoms:
        if mu < 0:
            raise NegativeWeight(f"weight {mu} at {lam} is negative")
        merged[lam] = merged.get(lam, 0.0) + mu
    return merged


def kms_violation(data: KMSFunctionData) -> float:
    """max over lambda >= 0 of |mu(-lambda) - e^{-beta lambda} mu(lambda)|.

    The condition at -lambda is the same equation rescaled, so each pair
    {lambda, -lambda} is evaluated once, from its nonnegative side.
    """
    mu = _merge_atoms(data.atoms)
    worst = 0.0
    for lam in {abs(l) for l in mu}:
        v = abs(mu.get(-lam, 0.0) - np.exp(-data.beta * lam) * mu.get(lam, 0.0))
        worst = max(worst, float(v))
    return worst


def kms_function(data: KMSFunctionData, z):
    """psi(z) = sum mu_j e^{i z lambda_j}, entire in z."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for lam, mu in data.atoms:
        out = out + mu * np.exp(1j * z * lam)
    return out


def kms_measure_classify(data: KMSFunctionData, tol=DEFAULT_TOL) -> KMSClassification:
    mu = _merge_atoms(data.atoms)
    total = sum(mu.values())
    violation = kms_violation(data)
    if violation > tol * max(1.0, total):
        return KMSClassification(False, violation)
    support = sorted(l for l, m in mu.items() if m > 0)
    # Delta^{-it/beta} = e^{itA} * (2pi/beta) scaling: p = beta lambda / 2pi
    model = SpectralModel(tuple((data.beta * l / TWO_PI, mu[l]) for l in support), data.beta)
    embedding = np.sqrt(np.array([mu[l] for l in support], dtype=complex))
    return KMSClassification(True, violation, model, embedding)


def realized_kms_function(result: KMSClassification, t):
    """<j(1), Delta^{-it/beta} j(1)> in the spectral realization."""
    build = spectral_model_build(result.model)
    beta = result.model.beta
    vec = result.embedding
    return np.array(
        [np.vdot(vec, build.pair.power(-1j * tt / beta) @ vec) for tt in np.atleast_1d(t)]
    )
