"""Bosonic Fock space over C^d truncated at total degree N.

Occupation basis |alpha>, |alpha| <= N, orthonormal. With this normalization
a_i^+ |alpha> = sqrt(alpha_i + 1) |alpha + e_i> and Exp(v) has coefficients
v^alpha / sqrt(alpha!), so that <Exp(v), Exp(w)> = e^{<v, w>}.
The inner product is conjugate-linear in the first slot.

Truncation errors concentrate near degree N, so operator identities are
checked on the degree <= N/2 block.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import DimensionMismatch, TruncationBudgetExceeded, ValidationError

DEFAULT_TAIL_TOL = 1e-6
WEYL_PAD = 10


def _multi_indices(d, n):
    out = []
    for deg in range(n + 1):
        # compositions of deg into d parts, lexicographically descending
        for bars in itertools.combinations(range(deg + d - 1), d - 1):
            parts, prev = [], -1
            for b in bars + (deg + d - 1,):
                parts.append(b - prev - 1)
                prev = b
            out.append(tuple(parts))
    return out


def exp_tail_bound(r, n):
    """sqrt(sum_{k>n} r^{2k}/k!), the norm of the part of Exp(v) above degree n for |v| = r."""
    r2 = float(r) ** 2
    term = r2 ** (n + 1) / math.factorial(n + 1)
    total, k = 0.0, n + 1
    while term > 1e-300 and (total == 0.0 or term > 1e-18 * total):
        total += term
        k += 1
        term *= r2 / k
    return math.sqrt(total)


@dataclass(frozen=True)
class TruncatedFock:
    modes: int
    max_degree: int

    def __post_init__(self):
        if self.modes < 1 or self.max_degree < 0:
            raise ValidationError("need at least one mode and a nonnegative degree")

    @cached_property
    def basis(self):
        return _multi_indices(self.modes, self.max_degree)

    @cached_property
    def index(self):
        return {a: k for k, a in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    @cached_property
    def degrees(self):
        return np.array([sum(a) for a in self.basis])

    def low_block(self, cutoff=None):
        """Indices of basis vectors of degree <= cutoff (default N // 2)."""
        cutoff = self.max_degree // 2 if cutoff is None else cutoff
        return np.flatnonzero(self.degrees <= cutoff)

    def creation(self, i):
        m = np.zeros((self.dim, self.dim))
        for k, a in enumerate(self.basis):
            up = a[:i] + (a[i] + 1,) + a[i + 1:]
            j = self.index.get(up)
            if j is not None:
                m[j, k] = math.sqrt(a[i] + 1)
        return m

    def annihilation(self, i):
        return self.creation(i).T

    @cached_property
    def _ladders(self):
        return [self.creation(i) for i in range(self.modes)]

    def _check_modes(self, x):
        x = np.asarray(x, dtype=complex).ravel()
        if x.size != self.modes:
            raise DimensionMismatch(f"expected a vector of C^{self.modes}")
        return x

    def weyl(self, x):
        """Compression to degree <= N of U(x) = exp(sum x_i a_i^+ - conj(x_i) a_i).

        Exponentiating the generator truncated at N itself reflects amplitude
        at the top degree; the exponential is taken in a padded space and then
        cut back, which reproduces the exact matrix elements.
        """
        return self.padded_weyl(x)[: self.dim, : self.dim]

    def padded_weyl(self, x):
        x = self._check_modes(x)
        work = fock_space(self.modes, self.max_degree + max(WEYL_PAD, self.max_degree // 2))
        gen = np.zeros((work.dim, work.dim), dtype=complex)
        for xi, up in zip(x, work._ladders):
            gen += xi * up - np.conj(xi) * up.T
        return expm(gen)

    def exp_coefficients(self, v):
        v = self._check_modes(v)
        return np.array([np.prod(v ** np.array(a)) / math.sqrt(_fact_multi(a)) for a in self.basis])

    def vacuum(self):
        out = np.zeros(self.dim, dtype=complex)
        out[0] = 1.0
        return out


@lru_cache(maxsize=None)
def _fact_multi(a):
    return math.prod(math.factorial(k) for k in a)


@lru_cache(maxsize=16)
def fock_space(modes, n) -> TruncatedFock:
    return TruncatedFock(modes, n)


@dataclass(frozen=True, eq=False)
class ExpVector:
    """Exp(v) together with a scalar prefactor, truncated at degree N."""

    v: np.ndarray
    max_degree: int
    scale: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "v", np.asarray(self.v, dtype=complex).ravel())

    @property
    def space(self) -> TruncatedFock:
        return fock_space(self.v.size, self.max_degree)

    def coefficients(self):
        return self.scale * self.space.exp_coefficients(self.v)

    def tail_bound(self):
        return abs(self.scale) * exp_tail_bound(np.linalg.norm(self.v), self.max_degree)


def exp_inner(v, w, n):
    """sum_{k<=n} <v,w>^k / k!, the truncated <Exp(v), Exp(w)>."""
    z = complex(np.vdot(np.asarray(v, dtype=complex), np.asarray(w, dtype=complex)))
    total, term = 0j, 1 + 0j
    for k in range(n + 1):
        total += term
        term *= z / (k + 1)
    return total


def exp_inner_bound(v, w, n):
    """|v|^{n+1} |w|^{n+1} / (n+1)! e^{|v||w|}, bounding |exp_inner - e^{<v,w>}|."""
    r = float(np.linalg.norm(v) * np.linalg.norm(w))
    return r ** (n + 1) / math.factorial(n + 1) * math.exp(r)


def weyl_apply(x, psi, n=None, tol=DEFAULT_TAIL_TOL):
    """U(x) psi.

    For an :class:`ExpVector` the closed formula
    U(x) Exp(v) = e^{-<x,v> - |x|^2/2} Exp(v + x) is used and an ExpVector is
    returned; otherwise psi is a coefficient vector and the truncated matrix
    exponential is applied.
    """
    x = np.asarray(x, dtype=complex).ravel()
    if isinstance(psi, ExpVector):
        out = ExpVector(psi.v + x, psi.max_degree,
                        psi.scale * np.exp(-np.vdot(x, psi.v) - 0.5 * np.vdot(x, x).real))
        bound = out.tail_bound()
        if bound > tol:
            raise TruncationBudgetExceeded(bound, tol)
        return out
    if n is None:
        raise ValidationError("max degree is required for a coefficient vector")
    space = fock_space(x.size, n)
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (space.dim,):
        raise DimensionMismatch(f"expected {space.dim} coefficients")
    return space.weyl(x) @ psi


def _low_norm(space: TruncatedFock, m):
    """Operator norm of the compression of m to the degree <= N/2 block."""
    block = space.low_block()
    return float(np.linalg.norm(m[np.ix_(block, block)], 2))


def weyl_relation_residual(x, y, n):
    """|U(x)U(y) - e^{-i Im<x,y>} U(x+y)| on the degree <= N/2 block."""
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    space = fock_space(x.size, n)
    phase = np.exp(-1j * np.vdot(x, y).imag)
    return _low_norm(space, space.weyl(x) @ space.weyl(y) - phase * space.weyl(x + y))


def commutator_residual(x, y, n):
    """|U(x)U(y) - U(y)U(x)| on the degree <= N/2 block."""
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    space = fock_space(x.size, n)
    ux, uy = space.weyl(x), space.weyl(y)
    return _low_norm(space, ux @ uy - uy @ ux)


def heisenberg_product(z1, v1, z2, v2):
    """(z1, v1)(z2, v2) = (z1 z2 e^{-i Im<v1,v2>}, v1 + v2)."""
    v1 = np.asarray(v1, dtype=complex)
    v2 = np.asarray(v2, dtype=complex)
    return z1 * z2 * np.exp(-1j * np.vdot(v1, v2).imag), v1 + v2


def heisenberg_law_check(z1, v1, z2, v2, n=20, tol=1e-12):
    """Residual of U^(z1,v1) U^(z2,v2) - U^((z1,v1)(z2,v2)) with U^(z, v) = z U(v)."""
    if abs(abs(z1) - 1) > tol or abs(abs(z2) - 1) > tol:
        raise ValidationError("central parameters must have modulus 1")
    v1 = np.asarray(v1, dtype=complex).ravel()
    v2 = np.asarray(v2, dtype=complex).ravel()
    space = fock_space(v1.size, n)
    z, v = heisenberg_product(z1, v1, z2, v2)
    lhs = z1 * z2 * space.weyl(v1) @ space.weyl(v2)
    return _low_norm(space, lhs - z * space.weyl(v))


def weyl_tail(x, n):
    """|(1 - P_N) U(x) P_{<=N/2}|, the weight U(x) pushes out of the truncation from the controlled block."""
    x = np.asarray(x, dtype=complex).ravel()
    space = fock_space(x.size, n)
    u = space.padded_weyl(x)
    return float(np.linalg.norm(u[space.dim:, space.low_block()], 2))


def unitarity_defect(x, n):
    """|U(x)^* U(x) - 1| on the controlled block; equals weyl_tail(x, n)^2 up to rounding."""
    x = np.asarray(x, dtype=complex).ravel()
    space = fock_space(x.size, n)
    u = space.weyl(x)
    return _low_norm(space, u.conj().T @ u - np.eye(space.dim))


def vacuum_cyclicity_rank(vectors, n, cutoff=2, tol=1e-8):
    """Numerical rank of {P_{<=cutoff} U(v) Omega} and the dimension of that block."""
    vectors = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    space = fock_space(vectors[0].size, n)
    block = space.low_block(cutoff)
    cols = np.column_stack([(space.weyl(v) @ space.vacuum())[block] for v in vectors])
    s = np.linalg.svd(cols, compute_uv=False)
    return int(np.sum(s > tol * s[0])), block.size


def fock_vector_to_json(space: TruncatedFock, psi):
    return {",".join(map(str, a)): [float(c.real), float(c.imag)] for a, c in zip(space.basis, psi)}
