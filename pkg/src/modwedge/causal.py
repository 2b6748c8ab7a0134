"""Wedge regions in causal homogeneous spaces.

Spaces covered: affine spaces (E, C) with a linear Euler element, Minkowski
space and its Rindler wedge, de Sitter space dS^d inside R^{1,d}, AdS^2,
group-type spaces (G with an Ad-invariant cone), the conformal quadric, and
the circle via the Cayley transform.

Minkowski coordinates are (x_0, x_1, ..., x_{d-1}) with x_0 the time
coordinate; the Euler element is the boost in the (x_0, x_1) plane and the
standard right wedge is x_1 > |x_0|.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import expm

from .cones import ConeSpec, LorentzCone, PSDCone, vec_from_sym, sym_from_vec
from .errors import (
    ConeInvarianceViolated,
    InvarianceViolated,
    NotLorentz,
    NotOnQuadric,
    NotUnimodular,
    OffSurface,
    ValidationError,
)
from .liealg import EulerDatum, GradedCones, LieAlgebraSpec, cone_graded_parts, grading_check

SURFACE_TOL = 1e-8


def minkowski_metric(d):
    return np.diag([1.0] + [-1.0] * (d - 1))


def lorentz_form(x, y=None):
    """x_0 y_0 - sum_{i>0} x_i y_i."""
    x = np.asarray(x, dtype=float)
    y = x if y is None else np.asarray(y, dtype=float)
    return float(x[0] * y[0] - x[1:] @ y[1:])


def boost_generator(d):
    h = np.zeros((d, d))
    h[0, 1] = h[1, 0] = 1.0
    return h


def boost(d, t):
    b = np.eye(d)
    b[0, 0] = b[1, 1] = np.cosh(t)
    b[0, 1] = b[1, 0] = np.sinh(t)
    return b


# ------------------------------------------------------------------- affine


@dataclass(eq=False)
class AffineCausalSpace:
    """E = R^m with a constant cone field C and a linear Euler element h."""

    name: str
    h: np.ndarray
    cone: ConeSpec

    @cached_property
    def datum(self) -> EulerDatum:
        chk = grading_check(self.h)
        if not chk.is_euler:
            raise ValidationError(f"h is not diagonalizable with spectrum in {{-1, 0, 1}} ({chk.reason})")
        return chk.datum

    @cached_property
    def graded(self) -> GradedCones:
        try:
            return cone_graded_parts(self.cone, self.datum)
        except InvarianceViolated as err:
            raise ConeInvarianceViolated(str(err), err.witness) from err

    def contains(self, x, tol=None) -> bool:
        """x_1 in C_+° and x_-1 in C_-° for the h-eigencomponents of x."""
        x = np.asarray(x, dtype=float)
        d = self.datum
        return self.graded.plus.interior_contains(d.p_plus @ x, tol) and self.graded.minus.interior_contains(
            d.p_minus @ x, tol
        )

    def oracle(self, x, tol=None) -> bool:
        """The defining test h.x in C°."""
        return self.cone.interior_contains(self.h @ np.asarray(x, dtype=float), tol)


def affine_positivity_contains(h, cone: ConeSpec, x, tol=None) -> bool:
    return AffineCausalSpace("adhoc", np.asarray(h, dtype=float), cone).contains(x, tol)


def sym_space(n, k) -> AffineCausalSpace:
    """Sym_n(R) with the PSD cone and h X = (D X + X D)/2, D = diag(1_k, -1_{n-k})."""
    dd = np.diag([1.0] * k + [-1.0] * (n - k))
    m = n * (n + 1) // 2
    h = np.zeros((m, m))
    for j, e in enumerate(np.eye(m)):
        s = sym_from_vec(e, n)
        h[:, j] = vec_from_sym(0.5 * (dd @ s + s @ dd))
    return AffineCausalSpace(f"sym{n}_{k}", h, PSDCone(n))


def minkowski_space(d) -> AffineCausalSpace:
    return AffineCausalSpace(f"minkowski{d}", boost_generator(d), LorentzCone(d))


def affine_catalog():
    return [minkowski_space(2), minkowski_space(3), minkowski_space(4), sym_space(2, 1), sym_space(3, 1), sym_space(4, 2)]


def rindler_contains(x) -> bool:
    x = np.asarray(x, dtype=float)
    return bool(x[1] > abs(x[0]))


# --------------------------------------------------------- Rindler semigroup


def is_lorentz(lam, tol=1e-9) -> bool:
    lam = np.asarray(lam, dtype=float)
    eta = minkowski_metric(lam.shape[0])
    return float(np.linalg.norm(lam.T @ eta @ lam - eta)) <= tol * max(1.0, float(np.linalg.norm(lam)) ** 2)


def rindler_compression_contains(v, lam, tol=1e-9) -> bool:
    """(v, Lambda) maps W_R into itself.

    Exact criterion: v in the closed wedge, Lambda commutes with
    tau = diag(-1, -1, 1, ..., 1), and the (x_0, x_1) block of Lambda lies in
    SO(1,1)^up x {1, time reflection}, which for O(1,1) means entry (1,1) > 0.
    """
    v = np.asarray(v, dtype=float)
    lam = np.asarray(lam, dtype=float)
    d = lam.shape[0]
    if not is_lorentz(lam, tol):
        raise NotLorentz("Lambda does not preserve the Minkowski metric")
    if v[1] < abs(v[0]) - tol * max(1.0, float(np.linalg.norm(v))):
        return False
    tau = np.diag([-1.0, -1.0] + [1.0] * (d - 2))
    if np.linalg.norm(lam @ tau - tau @ lam) > tol * max(1.0, float(np.linalg.norm(lam))):
        return False
    return bool(lam[1, 1] > 0)


def rindler_sample_points(d, rng, count):
    """Points of W_R on several scales."""
    pts = []
    for _ in range(count):
        x1 = rng.exponential() * 10.0 ** rng.uniform(-2, 2)
        x0 = rng.uniform(-1, 1) * x1
        rest = rng.standard_normal(d - 2) * 10.0 ** rng.uniform(-2, 2)
        pts.append(np.concatenate([[x0, x1], rest]))
    return pts


def rindler_member_sample(d, rng):
    """(v, Lambda) in the compression semigroup: closed-wedge translation, boost, optional time reflection."""
    x1 = rng.exponential()
    v = np.concatenate([[rng.uniform(-1, 1) * x1, x1], rng.standard_normal(d - 2)])
    lam = np.eye(d)
    lam[:2, :2] = boost(2, rng.uniform(-3, 3))
    if rng.random() < 0.5:
        lam[:2, :2] = np.diag([-1.0, 1.0]) @ lam[:2, :2]
    if d > 2:
        a = rng.standard_normal((d - 2, d - 2))
        q, _ = np.linalg.qr(a)
        lam[2:, 2:] = q
    return v, lam


def rindler_nonmember_sample(d, rng):
    """(v, Lambda) outside the semigroup, cycling through three failure modes."""
    v, lam = rindler_member_sample(d, rng)
    mode = rng.integers(3) if d > 2 else rng.integers(2)
    if mode == 0:
        # translation strictly outside the closed wedge: |v_0| > v_1
        v1 = rng.uniform(-1, 1)
        v0 = rng.choice([-1.0, 1.0]) * (abs(v1) + 0.1 + rng.exponential())
        v = np.concatenate([[v0, v1], rng.standard_normal(d - 2)])
    elif mode == 1:
        lam = np.diag([1.0, -1.0] + [1.0] * (d - 2)) @ lam
    else:
        # rotate e_1 into a transverse direction
        th = rng.uniform(0.2, np.pi - 0.2)
        r = np.eye(d)
        r[1, 1] = r[2, 2] = np.cos(th)
        r[2, 1], r[1, 2] = np.sin(th), -np.sin(th)
        lam = r @ lam
    return v, lam


def rindler_escape_witness(v, lam, rng, tries=2000):
    """A point x of W_R with Lambda x + v outside W_R, or None."""
    v = np.asarray(v, dtype=float)
    lam = np.asarray(lam, dtype=float)
    d = lam.shape[0]
    for x in _escape_candidates(d, rng, tries):
        if rindler_contains(x) and not rindler_contains(lam @ x + v):
            return x
    return None


def _escape_candidates(d, rng, tries):
    # near-apex points expose bad translations, far points expose bad linear parts
    yield np.eye(d)[1] * 1e-9
    for x in rindler_sample_points(d, rng, tries):
        yield x
        yield x * 1e6
        near = x.copy()
        near[0] = np.sign(x[0] or 1.0) * x[1] * (1 - 1e-3)
        yield near * 1e6


def poincare_compose(g1, g2):
    """(v1, L1)(v2, L2) = (v1 + L1 v2, L1 L2)."""
    (v1, l1), (v2, l2) = g1, g2
    return np.asarray(v1) + np.asarray(l1) @ np.asarray(v2), np.asarray(l1) @ np.asarray(l2)


def poincare_inverse(g):
    v, lam = g
    li = np.linalg.inv(lam)
    return -li @ np.asarray(v), li


def rindler_margin(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(x[1] - abs(x[0]))


def wedge_covers_points(g, points, eps=1e-6) -> bool:
    """Every point lies in g W_R = v + Lambda W_R with margin eps in the pulled-back coordinates."""
    v, lam = g
    li = np.linalg.inv(lam)
    return all(rindler_margin(li @ (np.asarray(x) - v)) > eps for x in points)


def wedge_inside_wedge(g, h, tol=1e-9) -> bool:
    """g W_R contained in h W_R, i.e. h^-1 g in the compression semigroup."""
    return rindler_compression_contains(*poincare_compose(poincare_inverse(h), g), tol=tol)


def double_cone_points(center, radius, count=48):
    """Extreme points of {|x_0 - c_0| + |x_sp - c_sp| <= r} in R^{1,2}: the two tips and the equator circle."""
    c = np.asarray(center, dtype=float)
    pts = [c + radius * np.array([1.0, 0.0, 0.0]), c - radius * np.array([1.0, 0.0, 0.0])]
    for a in np.linspace(0, 2 * np.pi, count, endpoint=False):
        pts.append(c + radius * np.array([0.0, np.cos(a), np.sin(a)]))
    return pts


# ---------------------------------------------------------------- de Sitter


def ds_defect(x) -> float:
    """|eta(x, x) + 1| for dS^d = {x in R^{1,d} : eta(x, x) = -1}."""
    return abs(lorentz_form(x) + 1.0)


def ds_positivity_contains(x, d=None, tol=SURFACE_TOL) -> bool:
    x = np.asarray(x, dtype=float)
    if d is not None and x.shape[0] != d + 1:
        raise ValidationError(f"expected a point of R^{d + 1}")
    defect = ds_defect(x)
    if defect > tol * max(1.0, float(x @ x)):
        raise OffSurface(defect)
    return rindler_contains(x)


def _c_series(z, terms=30):
    return sum(z**k / _fact(2 * k) for k in range(terms))


def _s_series(z, terms=30):
    return sum(z**k / _fact(2 * k + 1) for k in range(terms))


def _fact(n):
    out = 1.0
    for k in range(2, n + 1):
        out *= k
    return out


def cs_functions(z):
    """C(z) = sum z^k/(2k)!, S(z) = sum z^k/(2k+1)! (series near 0, closed forms elsewhere)."""
    if abs(z) < 1.0:
        return _c_series(z), _s_series(z)
    if z > 0:
        r = np.sqrt(z)
        return np.cosh(r), np.sinh(r) / r
    r = np.sqrt(-z)
    return np.cos(r), np.sin(r) / r


def ds_base_point(d):
    return np.eye(d + 1)[1]


def ds_exp(x, d=None):
    """C(eta(x,x)) e_1 + S(eta(x,x)) x for x tangent at the base point e_1."""
    x = np.asarray(x, dtype=float)
    if d is None:
        d = x.shape[0] - 1
    if abs(x[1]) > 1e-12 * max(1.0, float(np.linalg.norm(x))):
        raise OffSurface(abs(float(x[1])))
    c, s = cs_functions(lorentz_form(x))
    return c * ds_base_point(d) + s * x


def rotation_generator(d, y):
    """R(x) in so(1,d) for x = (0, 0, y): e_1 -> x, x -> -|x|^2 e_1."""
    m = np.zeros((d + 1, d + 1))
    m[2:, 1] = y
    m[1, 2:] = -np.asarray(y)
    return m


def ds_wedge_sample(g0, y, d):
    """g0 exp(R(y)) e_1 together with the spectral radius of ad R(y) (= |y|)."""
    y = np.asarray(y, dtype=float)
    radius = float(np.linalg.norm(y))
    point = np.asarray(g0, dtype=float) @ expm(rotation_generator(d, y)) @ ds_base_point(d)
    return {"point": point, "inside": ds_positivity_contains(point, d), "spectral_radius": radius}


def random_stabilizer_element(d, rng, scale=2.0):
    """Element of the identity component of the centralizer of the (0,1) boost in SO(1,d)."""
    g = np.eye(d + 1)
    g[:2, :2] = boost(2, rng.uniform(-scale, scale))
    if d >= 2:
        a = rng.standard_normal((d - 1, d - 1))
        g[2:, 2:] = expm(scale * (a - a.T) / 2)
    return g


# -------------------------------------------------------------------- AdS^2


def ads2_defect(x) -> float:
    x = np.asarray(x, dtype=float)
    return abs(x[0] ** 2 + x[1] ** 2 - x[2] ** 2 - 1.0)


def ads2_positivity_contains(x, tol=SURFACE_TOL):
    """(inside, component) with component = sign(x_1) inside the wedge region."""
    x = np.asarray(x, dtype=float)
    defect = ads2_defect(x)
    if defect > tol * max(1.0, float(x @ x)):
        raise OffSurface(defect)
    inside = bool(x[0] * x[2] > 0 and abs(x[1]) < abs(x[2]))
    return inside, (int(np.sign(x[0])) if inside else None)


# --------------------------------------------------------------- group type


def _ad_difference(g, h0, algebra: LieAlgebraSpec):
    g = np.asarray(g, dtype=float)
    hm = algebra.element(h0)
    return algebra.coords(g @ hm @ np.linalg.inv(g) - hm)


def group_type_wedge_contains(g, h0, cone: ConeSpec, algebra: LieAlgebraSpec, tol=None) -> bool:
    """Ad(g) h0 - h0 in -C°."""
    return cone.interior_contains(-_ad_difference(g, h0, algebra), tol)


def s_h_cg_contains(g, h0, cone: ConeSpec, algebra: LieAlgebraSpec, tol=None) -> bool:
    """h0 - Ad(g) h0 in C."""
    return cone.contains(-_ad_difference(g, h0, algebra), tol)


# --------------------------------------------------------- conformal quadric


def quadric_form(d):
    """Form of signature (2, d) on R^{d+2}: x_first^2 + x_time^2 - spatial^2 - x_last^2."""
    return np.diag([1.0, 1.0] + [-1.0] * (d - 1) + [-1.0])


def conformal_lift(v):
    """The unnormalized lift ((1 - b)/2, v, -(1 + b)/2), b = Lorentz square of v."""
    v = np.asarray(v, dtype=float)
    b = lorentz_form(v)
    return np.concatenate([[(1 - b) / 2], v, [-(1 + b) / 2]])


def normalize_projective(x):
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x)
    nz = np.flatnonzero(np.abs(x) > 1e-15)
    if nz.size and x[nz[0]] < 0:
        x = -x
    return x


def conformal_embed(v, d=None):
    v = np.asarray(v, dtype=float)
    if d is not None and v.shape[0] != d:
        raise ValidationError(f"expected a vector of R^{d}")
    return normalize_projective(conformal_lift(v))


def quadric_residual(x):
    x = np.asarray(x, dtype=float)
    return float(x @ quadric_form(x.shape[0] - 2) @ x) / float(x @ x)


def conformal_chart(x, tol=1e-12):
    """Dehomogenized Minkowski vector, or None outside the affine chart."""
    x = np.asarray(x, dtype=float)
    scale = x[0] - x[-1]
    if abs(scale) <= tol * float(np.linalg.norm(x)):
        return None
    return x[1:-1] / scale


def flag_wedge_contains(x, tol=1e-9) -> bool:
    """x = eta(v) with v in the open forward light cone."""
    res = quadric_residual(x)
    if abs(res) > tol:
        raise NotOnQuadric(f"point is off the isotropic quadric (residual {res:.3e})")
    v = conformal_chart(x)
    if v is None:
        return False
    return LorentzCone(v.shape[0]).interior_contains(v)


def translation_generator(a):
    """Element N_a of so(2,d) whose flow on the quadric is the translation by a in the chart."""
    a = np.asarray(a, dtype=float)
    d = a.shape[0]
    n = np.zeros((d + 2, d + 2))
    eta_a = minkowski_metric(d) @ a
    # first and last rows: -b(x_mid, a); middle rows: a (x_first - x_last)
    n[0, 1:-1] = -eta_a
    n[-1, 1:-1] = -eta_a
    n[1:-1, 0] = a
    n[1:-1, -1] = -a
    return n


# ------------------------------------------------------------- SL2 covering


def phi(x):
    x = np.asarray(x, dtype=float)
    return 0.5 * np.array([[x[1], -x[0] - x[2]], [x[0] - x[2], -x[1]]])


def phi_inv(m):
    m = np.asarray(m, dtype=float)
    p, q, r = m[0, 0], m[0, 1], m[1, 0]
    return np.array([r - q, 2 * p, -(q + r)])


def sl2_to_so12(g, tol=1e-9):
    """Lorentz matrix of phi^-1 Ad(g) phi."""
    g = np.asarray(g, dtype=float)
    if abs(np.linalg.det(g) - 1.0) > tol:
        raise NotUnimodular(f"det g = {np.linalg.det(g):.12g}")
    gi = np.linalg.inv(g)
    return np.column_stack([phi_inv(g @ phi(e) @ gi) for e in np.eye(3)])


SIGMA0 = 0.5 * np.array([[0.0, -1.0], [1.0, 0.0]])


def r_theta(theta):
    """exp(-sigma_0 theta)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, s], [-s, c]])


def rotation_12(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


# ------------------------------------------------------------------ circle


def cayley_circle(x):
    """(i - x)/(i + x), with x = inf sent to -1."""
    if x is None or np.isinf(x):
        return complex(-1.0)
    return complex((1j - x) / (1j + x))


def cayley_inverse(z, tol=1e-15):
    """i (1 - z)/(1 + z); returns inf at z = -1."""
    z = complex(z)
    if abs(1 + z) <= tol:
        return float("inf")
    w = 1j * (1 - z) / (1 + z)
    return float(w.real)
