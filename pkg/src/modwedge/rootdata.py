"""Euler elements of simple real Lie algebras from their restricted root systems.

Everything here is integer data in Bourbaki's enumeration of simple roots:
the coweight h_j (alpha_i(h_j) = delta_ij) is an Euler element iff the
coefficient c_j of alpha_j in the highest root is 1, and it is symmetric iff
-w_0 fixes j.
"""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from .errors import InvalidRank, NotEuler, UnknownAlgebra

FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "BC": 1}

# rank ranges emitted by classification_table()
TABLE_RANKS = {"A": range(1, 9), "B": range(2, 9), "C": range(2, 9), "D": range(4, 9), "BC": range(1, 5)}
TABLE_ORDER = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "BC")


@dataclass(frozen=True)
class RootSystem:
    type: str
    rank: int
    cartan_matrix: tuple
    highest_root_coeffs: tuple
    minus_w0_perm: tuple  # 1-based images of 1..n
    reduced: bool = True


def _check(type_, rank):
    if type_ in FIXED_RANK:
        if rank is not None and rank != FIXED_RANK[type_]:
            raise InvalidRank(f"{type_} has rank {FIXED_RANK[type_]}, not {rank}")
        return FIXED_RANK[type_]
    if type_ not in MIN_RANK:
        raise InvalidRank(f"unknown root system type {type_!r}")
    if rank is None or rank < MIN_RANK[type_]:
        raise InvalidRank(f"{type_}_{rank} is not a valid irreducible root system")
    return rank


def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _cartan(type_, n):
    """a_ij = <alpha_i^vee, alpha_j> in Bourbaki numbering."""
    if type_ == "A":
        return _chain(n)
    if type_ in ("B", "BC"):
        a = _chain(n)
        a[n - 1][n - 2] = -2  # alpha_n short
        return a
    if type_ == "C":
        a = _chain(n)
        a[n - 2][n - 1] = -2  # alpha_n long
        return a
    if type_ == "D":
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if type_ in ("E6", "E7", "E8"):
        # 1-3-4-5-6-7-8 with 2 attached to 4
        a = [[0] * n for _ in range(n)]
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, n)]
        for i in range(n):
            a[i][i] = 2
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    if type_ == "F4":
        a = _chain(4)
        a[2][1] = -2
        return a
    if type_ == "G2":
        return [[2, -3], [-1, 2]]  # alpha_1 short
    raise InvalidRank(type_)


def _highest(type_, n):
    if type_ == "A":
        return [1] * n
    if type_ == "B":
        return [1] + [2] * (n - 1)
    if type_ == "C":
        return [2] * (n - 1) + [1]
    if type_ == "D":
        return [1] + [2] * (n - 3) + [1, 1]
    if type_ == "BC":
        return [2] * n
    return {
        "E6": [1, 2, 2, 3, 2, 1],
        "E7": [2, 2, 3, 4, 3, 2, 1],
        "E8": [2, 3, 4, 6, 5, 4, 3, 2],
        "F4": [2, 3, 4, 2],
        "G2": [3, 2],
    }[type_]


def _minus_w0(type_, n):
    perm = list(range(1, n + 1))
    if type_ == "A":
        perm = [n + 1 - j for j in perm]
    elif type_ == "D" and n % 2:
        perm[n - 2], perm[n - 1] = n, n - 1
    elif type_ == "E6":
        perm = [6, 2, 5, 4, 3, 1]
    return perm


def root_system(type_, rank=None) -> RootSystem:
    type_ = type_.upper()
    n = _check(type_, rank)
    return RootSystem(
        type_,
        n,
        tuple(tuple(r) for r in _cartan(type_, n)),
        tuple(_highest(type_, n)),
        tuple(_minus_w0(type_, n)),
        reduced=type_ != "BC",
    )


def euler_indices(type_, rank=None) -> list:
    rs = root_system(type_, rank)
    if not rs.reduced:
        return []
    return [j for j, c in enumerate(rs.highest_root_coeffs, start=1) if c == 1]


def is_symmetric_euler(type_, rank, j) -> bool:
    rs = root_system(type_, rank)
    if j not in euler_indices(type_, rank):
        raise NotEuler(f"h_{j} is not an Euler element for {rs.type}_{rs.rank}")
    return rs.minus_w0_perm[j - 1] == j


def symmetric_indices(type_, rank=None) -> list:
    rs = root_system(type_, rank)
    return [j for j in euler_indices(type_, rank) if rs.minus_w0_perm[j - 1] == j]


def table_rows():
    for t in TABLE_ORDER:
        ranks = TABLE_RANKS.get(t, [FIXED_RANK.get(t)])
        for n in ranks:
            yield t, n, euler_indices(t, n), symmetric_indices(t, n)


def classification_table() -> str:
    """CSV with columns type, rank, euler, symmetric (indices space-separated)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["type", "rank", "euler", "symmetric"])
    for t, n, eu, sym in table_rows():
        w.writerow([t, n, " ".join(map(str, eu)), " ".join(map(str, sym))])
    return buf.getvalue()


# ------------------------------------------------------------ cross checks

def _restricted(name):
    """Catalog name -> (restricted root type, rank, {element name: index j})."""
    m = re.fullmatch(r"sl(\d+)", name)
    if m:
        n = int(m[1])
        return "A", n - 1, {f"h{k}": k for k in range(1, n)}
    m = re.fullmatch(r"so\(1,(\d+)\)", name)
    if m and int(m[1]) >= 2:
        # real rank one: restricted roots {+-alpha}, type A_1 and the boost is h_1
        return "A", 1, {"boost": 1}
    m = re.fullmatch(r"sp(\d+)", name)
    if m and int(m[1]) % 2 == 0 and int(m[1]) >= 4:
        n = int(m[1]) // 2
        return "C", n, {f"h{k}": k for k in range(1, n + 1)}
    raise UnknownAlgebra(f"no restricted root data for {name!r}")


@dataclass
class CrossCheck:
    algebra: str
    element: str
    root_type: str
    root_rank: int
    index: int
    rootdata_euler: bool
    rootdata_symmetric: bool
    matrix_euler: bool
    matrix_symmetric: str
    agree: bool


def cross_check_matrix(g_name, h_candidate, budget=40, seed=0) -> CrossCheck:
    """Compare the numeric Euler/symmetry verdicts on a catalog element with the root data."""
    from . import liealg

    t, n, index_of = _restricted(g_name.replace(" ", "").lower())
    if h_candidate not in index_of:
        raise UnknownAlgebra(f"{h_candidate!r} is not a fundamental coweight of {g_name}")
    j = index_of[h_candidate]
    eu = j in euler_indices(t, n)
    sym = eu and root_system(t, n).minus_w0_perm[j - 1] == j
    g = liealg.catalog(g_name)
    chk = liealg.euler_check(g, g.named(h_candidate))
    verdict = "n/a"
    agree = chk.is_euler == eu
    if chk.is_euler:
        res = liealg.symmetric_euler_search(g, chk.datum, budget=budget, seed=seed)
        verdict = res.symmetric.value
        if verdict == "confirmed" and not sym:
            agree = False
        if verdict == "refuted" and sym:
            agree = False
    return CrossCheck(g_name, h_candidate, t, n, j, eu, sym, chk.is_euler, verdict, agree)
