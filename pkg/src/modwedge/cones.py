"""Closed convex cones in coordinate space R^d.

Every cone is described by a margin function m with C = {m >= 0} and
C° = {m > 0}; membership tests compare m against ``tol * |x|`` so that they
are positively homogeneous.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import ValidationError

MARGIN_TOL = 1e-12


class ConeSpec:
    kind = "abstract"
    margin_tol = MARGIN_TOL

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def margin(self, x) -> float:
        raise NotImplementedError

    def interior_point(self) -> np.ndarray:
        raise NotImplementedError

    def sample(self, rng) -> np.ndarray:
        """A random point of the interior."""
        raise NotImplementedError

    def _scale(self, x, tol):
        tol = self.margin_tol if tol is None else tol
        return tol * float(np.linalg.norm(x))

    def contains(self, x, tol=None) -> bool:
        x = np.asarray(x, dtype=float)
        return self.margin(x) >= -self._scale(x, tol)

    def interior_contains(self, x, tol=None) -> bool:
        x = np.asarray(x, dtype=float)
        return self.margin(x) > self._scale(x, tol)

    def to_json(self) -> dict:
        raise NotImplementedError


class LorentzCone(ConeSpec):
    """{x : x_t >= |x_rest|} with t the time axis."""

    kind = "lorentz"

    def __init__(self, d, time_axis=0):
        self.d, self.time_axis = int(d), int(time_axis)

    @property
    def dim(self):
        return self.d

    def margin(self, x):
        rest = np.delete(x, self.time_axis)
        return float(x[self.time_axis] - np.linalg.norm(rest))

    def interior_point(self):
        e = np.zeros(self.d)
        e[self.time_axis] = 1.0
        return e

    def sample(self, rng):
        x = rng.standard_normal(self.d)
        x[self.time_axis] = np.linalg.norm(np.delete(x, self.time_axis)) + rng.exponential()
        return x

    def to_json(self):
        return {"kind": self.kind, "dim": self.d, "time_axis": self.time_axis}


def sym_from_vec(x, n):
    """Symmetric matrix from coordinates in the orthonormal basis E_ii, (E_ij + E_ji)/sqrt2."""
    s = np.zeros((n, n))
    iu = np.triu_indices(n)
    s[iu] = x
    off = ~np.eye(n, dtype=bool)
    s[off & np.triu(np.ones((n, n), dtype=bool))] /= math.sqrt(2)
    return s + np.triu(s, 1).T


def vec_from_sym(s):
    s = np.asarray(s, dtype=float)
    n = s.shape[0]
    w = np.where(np.eye(n, dtype=bool), 1.0, math.sqrt(2))
    return (s * w)[np.triu_indices(n)]


class PSDCone(ConeSpec):
    kind = "psd"

    def __init__(self, n):
        self.n = int(n)

    @property
    def dim(self):
        return self.n * (self.n + 1) // 2

    def margin(self, x):
        return float(np.linalg.eigvalsh(sym_from_vec(x, self.n))[0])

    def interior_point(self):
        return vec_from_sym(np.eye(self.n))

    def sample(self, rng):
        g = rng.standard_normal((self.n, self.n))
        return vec_from_sym(g @ g.T + rng.exponential() * np.eye(self.n))

    def to_json(self):
        return {"kind": self.kind, "n": self.n}


class NonnegQuadraticCone(ConeSpec):
    """Nonnegative quadratic forms sum_{i<=j} c_ij x_i x_j on R^d, in monomial coordinates."""

    kind = "nonneg_quadratic"

    def __init__(self, d):
        self.d = int(d)

    @property
    def dim(self):
        return self.d * (self.d + 1) // 2

    def gram(self, c):
        s = np.zeros((self.d, self.d))
        s[np.triu_indices(self.d)] = c
        return 0.5 * (s + s.T)

    def margin(self, x):
        return float(np.linalg.eigvalsh(self.gram(x))[0])

    def _coords(self, s):
        w = np.where(np.eye(self.d, dtype=bool), 1.0, 2.0)
        return (s * w)[np.triu_indices(self.d)]

    def interior_point(self):
        return self._coords(np.eye(self.d))

    def sample(self, rng):
        g = rng.standard_normal((self.d, self.d))
        return self._coords(g @ g.T + rng.exponential() * np.eye(self.d))

    def to_json(self):
        return {"kind": self.kind, "d": self.d}


class PolyhedralCone(ConeSpec):
    """Cone spanned by finitely many generators; must be generating (full-dimensional).

    Facets are found by brute force over (d-1)-subsets of generators, which is
    fine at the sizes used here.
    """

    kind = "polyhedral"

    def __init__(self, generators):
        g = np.atleast_2d(np.asarray(generators, dtype=float))
        self.generators = g
        d = g.shape[1]
        if np.linalg.matrix_rank(g) < d:
            raise ValidationError("polyhedral cone is not generating")
        normals = []
        for idx in itertools.combinations(range(len(g)), d - 1):
            sub = g[list(idx)]
            if d > 1 and np.linalg.matrix_rank(sub) < d - 1:
                continue
            nvec = np.linalg.svd(sub)[2][-1] if d > 1 else np.ones(1)
            vals = g @ nvec
            if np.any(vals < -1e-12):
                if np.any(vals > 1e-12):
                    continue
                nvec = -nvec
            if not any(np.allclose(nvec, m) for m in normals):
                normals.append(nvec / np.linalg.norm(nvec))
        self.normals = np.array(normals)
        # pointed iff no generator g has -g inside as well
        if any(np.all(self.normals @ -v >= -1e-12) for v in g if np.any(v)):
            raise ValidationError("polyhedral cone is not pointed")

    @property
    def dim(self):
        return self.generators.shape[1]

    def margin(self, x):
        return float(np.min(self.normals @ x))

    def interior_point(self):
        return self.generators.sum(axis=0)

    def sample(self, rng):
        return rng.exponential(size=len(self.generators)) @ self.generators

    def to_json(self):
        return {"kind": self.kind, "generators": self.generators.tolist()}


class LinearPreimageCone(ConeSpec):
    """{x : P x in base} for an invertible square P."""

    kind = "image_under_linear_map"

    def __init__(self, base: ConeSpec, preimage_map):
        self.base = base
        self.p = np.asarray(preimage_map, dtype=float)
        self.p_inv = np.linalg.inv(self.p)

    @property
    def dim(self):
        return self.p.shape[1]

    def margin(self, x):
        return self.base.margin(self.p @ x)

    def interior_point(self):
        return self.p_inv @ self.base.interior_point()

    def sample(self, rng):
        return self.p_inv @ self.base.sample(rng)

    def to_json(self):
        return {"kind": self.kind, "base": self.base.to_json(), "map": self.p_inv.tolist()}


def image_under_linear_map(base: ConeSpec, linear_map) -> LinearPreimageCone:
    """L(C) for invertible L."""
    return LinearPreimageCone(base, np.linalg.inv(np.asarray(linear_map, dtype=float)))


class SL2InvariantCone(LinearPreimageCone):
    """{a h + b e + c f : a^2/4 + bc <= 0, sign (b - c) >= 0} in the basis (h, e, f).

    With h = diag(1,-1)/2 the quadratic form a^2/4 + bc is -det, hence
    Ad-invariant; in the coordinates t = (b - c)/2, s = (b + c)/2 the cone is
    the forward Lorentz cone t >= |(a/2, s)|.
    """

    kind = "sl2_invariant"

    def __init__(self, sign=1):
        self.sign = 1 if sign >= 0 else -1
        p = np.array([[0.0, 0.5, -0.5], [0.5, 0.0, 0.0], [0.0, 0.5, 0.5]])
        p[0] *= self.sign
        super().__init__(LorentzCone(3), p)

    def to_json(self):
        return {"kind": self.kind, "sign": self.sign}


class ProductCone(ConeSpec):
    kind = "product"

    def __init__(self, parts):
        self.parts = list(parts)
        self.offsets = np.cumsum([0] + [p.dim for p in self.parts])

    @property
    def dim(self):
        return int(self.offsets[-1])

    def _blocks(self, x):
        return [x[a:b] for a, b in zip(self.offsets[:-1], self.offsets[1:])]

    def margin(self, x):
        return min(p.margin(b) for p, b in zip(self.parts, self._blocks(x)))

    def contains(self, x, tol=None):
        x = np.asarray(x, dtype=float)
        return all(p.contains(b, tol) for p, b in zip(self.parts, self._blocks(x)))

    def interior_contains(self, x, tol=None):
        x = np.asarray(x, dtype=float)
        return all(p.interior_contains(b, tol) for p, b in zip(self.parts, self._blocks(x)))

    def interior_point(self):
        return np.concatenate([p.interior_point() for p in self.parts])

    def sample(self, rng):
        return np.concatenate([p.sample(rng) for p in self.parts])

    def to_json(self):
        return {"kind": self.kind, "parts": [p.to_json() for p in self.parts]}


class SectionCone(ConeSpec):
    """sign * C intersected with the range of a projector, in ambient coordinates.

    ``anchor`` is a point with C° ∩ (range + anchor) equal to the relative
    interior shifted by anchor; see :func:`liealg.cone_graded_parts`.
    """

    kind = "section"

    def __init__(self, parent: ConeSpec, projector, sign, anchor, tol=1e-9):
        self.parent = parent
        self.projector = np.asarray(projector, dtype=float)
        self.sign = sign
        self.anchor = np.asarray(anchor, dtype=float)
        self.subspace_tol = tol

    @property
    def dim(self):
        return self.parent.dim

    def in_subspace(self, x):
        x = np.asarray(x, dtype=float)
        off = x - self.projector @ x
        return float(np.linalg.norm(off)) <= self.subspace_tol * max(1.0, float(np.linalg.norm(x)))

    def margin(self, x):
        return self.parent.margin(self.sign * np.asarray(x, dtype=float))

    def contains(self, x, tol=None):
        return self.in_subspace(x) and self.parent.contains(self.sign * np.asarray(x, dtype=float), tol)

    def interior_contains(self, x, tol=None):
        if not self.in_subspace(x):
            return False
        x = np.asarray(x, dtype=float)
        scale = float(np.linalg.norm(x))
        if not np.any(self.projector) or scale == 0.0:
            return False
        # scaling the anchor with |x| keeps the test positively homogeneous
        return self.parent.interior_contains(self.sign * x + scale * self.anchor, tol)

    def interior_point(self):
        return self.sign * (self.projector @ self.parent.interior_point())

    def sample(self, rng):
        return self.sign * (self.projector @ self.parent.sample(rng))

    def to_json(self):
        return {
            "kind": self.kind,
            "parent": self.parent.to_json(),
            "projector": self.projector.tolist(),
            "sign": self.sign,
        }


def cone_from_json(obj) -> ConeSpec:
    kind = obj["kind"]
    if kind == "lorentz":
        return LorentzCone(obj["dim"], obj.get("time_axis", 0))
    if kind == "psd":
        return PSDCone(obj["n"])
    if kind == "nonneg_quadratic":
        return NonnegQuadraticCone(obj["d"])
    if kind == "polyhedral":
        return PolyhedralCone(obj["generators"])
    if kind == "sl2_invariant":
        return SL2InvariantCone(obj.get("sign", 1))
    if kind == "product":
        return ProductCone([cone_from_json(p) for p in obj["parts"]])
    if kind == "image_under_linear_map":
        return image_under_linear_map(cone_from_json(obj["base"]), obj["map"])
    raise ValidationError(f"unknown cone kind {kind!r}")
