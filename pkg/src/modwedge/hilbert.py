"""Real subspaces of finite-dimensional complex Hilbert spaces.

A real subspace of C^n is stored through a frame: an n x k complex matrix
whose columns are orthonormal for the real inner product Re<z, w>.  All
rank decisions go through the realification C^n -> R^2n, z -> (Re z, Im z),
under which Re<z, w> becomes the Euclidean dot product.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ZeroInput

DEFAULT_TOL = 1e-9


def realify(z):
    """Stack real and imaginary parts: (n, ...) complex -> (2n, ...) real."""
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag], axis=0)


def complexify(r):
    r = np.asarray(r, dtype=float)
    n = r.shape[0] // 2
    return r[:n] + 1j * r[n:]


def realify_operator(a):
    """Real 2n x 2n matrix of the complex-linear map z -> a z."""
    a = np.asarray(a, dtype=complex)
    return np.block([[a.real, -a.imag], [a.imag, a.real]])


def _rank(s, tol):
    if s.size == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


@dataclass(frozen=True, eq=False)
class RealSubspace:
    ambient_dim: int
    frame: np.ndarray
    tol: float = DEFAULT_TOL
    _real: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        frame = np.asarray(self.frame, dtype=complex).reshape(self.ambient_dim, -1)
        frame.setflags(write=False)
        object.__setattr__(self, "frame", frame)
        real = realify(frame)
        real.setflags(write=False)
        object.__setattr__(self, "_real", real)

    @property
    def dim(self) -> int:
        """Real dimension."""
        return self.frame.shape[1]

    @property
    def real_frame(self) -> np.ndarray:
        return self._real

    def projector(self) -> np.ndarray:
        """Real-orthogonal projector on R^2n."""
        return self._real @ self._real.T

    def gram_defect(self) -> float:
        g = self._real.T @ self._real
        return float(np.max(np.abs(g - np.eye(self.dim)), initial=0.0))

    def contains_vector(self, z, tol=None) -> bool:
        tol = self.tol if tol is None else tol
        r = realify(z)
        resid = r - self._real @ (self._real.T @ r)
        return float(np.linalg.norm(resid)) <= tol * max(1.0, float(np.linalg.norm(r)))

    def __repr__(self):
        return f"RealSubspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def zero_subspace(n, tol=DEFAULT_TOL) -> RealSubspace:
    return RealSubspace(n, np.zeros((n, 0), dtype=complex), tol)


def full_space(n, tol=DEFAULT_TOL) -> RealSubspace:
    eye = np.eye(n, dtype=complex)
    return RealSubspace(n, np.hstack([eye, 1j * eye]), tol)


def real_form(n, tol=DEFAULT_TOL) -> RealSubspace:
    """The canonical real form R^n of C^n."""
    return RealSubspace(n, np.eye(n, dtype=complex), tol)


def _from_real_columns(n, cols, tol):
    return RealSubspace(n, complexify(cols), tol)


def real_orthonormalize(vectors, tol=DEFAULT_TOL) -> RealSubspace:
    """Real span of ``vectors`` (columns of a matrix, or a list of vectors).

    Rank is decided from singular values relative to the largest one;
    raises :class:`ZeroInput` when every vector is numerically zero.
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        mat = np.asarray(vectors, dtype=complex)
    else:
        vecs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
        if not vecs:
            raise ZeroInput("no vectors given")
        n = vecs[0].size
        if any(v.size != n for v in vecs):
            raise DimensionMismatch("vectors have different ambient dimensions")
        mat = np.column_stack(vecs)
    n = mat.shape[0]
    if mat.shape[1] == 0:
        raise ZeroInput("no vectors given")
    u, s, _ = np.linalg.svd(realify(mat), full_matrices=False)
    if s[0] <= tol:
        raise ZeroInput("all input vectors vanish")
    k = _rank(s, tol)
    return _from_real_columns(n, u[:, :k], tol)


def span(vectors, n, tol=DEFAULT_TOL) -> RealSubspace:
    """Like :func:`real_orthonormalize` but returns {0} for empty/zero input."""
    mat = np.asarray(vectors, dtype=complex).reshape(n, -1)
    if mat.shape[1] == 0 or np.max(np.abs(mat)) <= tol:
        return zero_subspace(n, tol)
    return real_orthonormalize(mat, tol)


def _check_same_ambient(v, w):
    if v.ambient_dim != w.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {v.ambient_dim} != {w.ambient_dim}")


def real_sum(v: RealSubspace, w: RealSubspace) -> RealSubspace:
    _check_same_ambient(v, w)
    tol = max(v.tol, w.tol)
    return span(np.hstack([v.frame, w.frame]), v.ambient_dim, tol)


def real_intersect(v: RealSubspace, w: RealSubspace) -> RealSubspace:
    """V intersect W via the principal-angle sines of V against W."""
    _check_same_ambient(v, w)
    tol = max(v.tol, w.tol)
    n = v.ambient_dim
    if v.dim == 0 or w.dim == 0:
        return zero_subspace(n, tol)
    qv, qw = v.real_frame, w.real_frame
    off = qv - qw @ (qw.T @ qv)
    _, s, vh = np.linalg.svd(off, full_matrices=True)
    s_full = np.zeros(v.dim)
    s_full[: s.size] = s
    keep = s_full <= tol
    if not np.any(keep):
        return zero_subspace(n, tol)
    cols = qv @ vh[keep].T
    # re-orthonormalize to wash out rounding
    q, _ = np.linalg.qr(cols)
    return _from_real_columns(n, q, tol)


def multiply_by_i(v: RealSubspace) -> RealSubspace:
    return RealSubspace(v.ambient_dim, 1j * v.frame, v.tol)


def apply_linear(u, v: RealSubspace) -> RealSubspace:
    """Image of V under the complex-linear map z -> u z."""
    u = np.asarray(u, dtype=complex)
    return span(u @ v.frame, v.ambient_dim, v.tol)


def real_orthogonal_complement(v: RealSubspace) -> RealSubspace:
    n = v.ambient_dim
    proj = v.projector()
    u, s, _ = np.linalg.svd(np.eye(2 * n) - proj)
    k = int(np.sum(s > 0.5))
    return _from_real_columns(n, u[:, :k], v.tol)


def is_cyclic(v: RealSubspace) -> bool:
    return real_sum(v, multiply_by_i(v)).dim == 2 * v.ambient_dim


def is_separating(v: RealSubspace) -> bool:
    return real_intersect(v, multiply_by_i(v)).dim == 0


def is_standard(v: RealSubspace) -> bool:
    return v.dim == v.ambient_dim and is_separating(v) and is_cyclic(v)


def subspace_distance(v: RealSubspace, w: RealSubspace) -> float:
    """Operator-norm distance between the real-orthogonal projectors."""
    _check_same_ambient(v, w)
    return float(np.linalg.norm(v.projector() - w.projector(), 2))


def is_subspace(inner: RealSubspace, outer: RealSubspace, tol=None) -> bool:
    """True when ``inner`` is contained in ``outer``."""
    _check_same_ambient(inner, outer)
    tol = max(inner.tol, outer.tol) if tol is None else tol
    if inner.dim == 0:
        return True
    q = outer.real_frame
    resid = inner.real_frame - q @ (q.T @ inner.real_frame)
    return float(np.linalg.norm(resid, 2)) <= tol


def subspaces_equal(v: RealSubspace, w: RealSubspace, tol=None) -> bool:
    tol = max(v.tol, w.tol) if tol is None else tol
    return v.dim == w.dim and subspace_distance(v, w) <= tol


@dataclass(frozen=True, eq=False)
class AntilinearOp:
    """The antilinear map z -> M conj(z).

    Composition is (M1, M2) -> M1 conj(M2) and the adjoint is M^T, which
    follows from <T^dagger eta, xi> = <T xi, eta>.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self):
        return self.matrix.shape[0]

    def __call__(self, z):
        return self.matrix @ np.conj(np.asarray(z, dtype=complex))

    def compose(self, other):
        """self o other; the result is complex-linear, returned as a matrix."""
        if isinstance(other, AntilinearOp):
            return self.matrix @ np.conj(other.matrix)
        # antilinear o linear is antilinear
        return AntilinearOp(self.matrix @ np.conj(np.asarray(other, dtype=complex)))

    def adjoint(self):
        return AntilinearOp(self.matrix.T)

    def involution_defect(self) -> float:
        return float(np.linalg.norm(self.matrix @ np.conj(self.matrix) - np.eye(self.n), 2))

    def is_involution(self, tol=DEFAULT_TOL) -> bool:
        return self.involution_defect() <= tol

    def conjugate(self, a):
        """J a J for a complex matrix a (a complex-linear result)."""
        return self.matrix @ np.conj(np.asarray(a, dtype=complex)) @ np.conj(self.matrix)

    def apply_subspace(self, v: RealSubspace) -> RealSubspace:
        return span(self(v.frame), v.ambient_dim, v.tol)


def conjugation(n) -> AntilinearOp:
    """Entrywise complex conjugation on C^n."""
    return AntilinearOp(np.eye(n))


def flip_conjugation(n) -> AntilinearOp:
    """(v, w) -> (conj w, conj v) on C^n (+) C^n."""
    z, e = np.zeros((n, n)), np.eye(n)
    return AntilinearOp(np.block([[z, e], [e, z]]))


def random_unitary(n, rng) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def is_unitary(u, tol=DEFAULT_TOL) -> bool:
    u = np.asarray(u, dtype=complex)
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), 2)) <= tol
