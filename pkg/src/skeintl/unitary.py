"""Crossing matrices of a representation and the unitarity obstruction.

Pushing the skein relation through ``F_{M,B}`` gives

    R+ = A I + A^-1 M N,        R- = A^-1 I + A M N

on ``M (x) M`` where ``M`` is the copairing column and ``N`` the pairing row.
A unitary ``R+`` forces rank 2 and ``A`` a fourth root of unity: comparing
Frobenius norms gives ``4 cos^2(2 theta) >= n^2`` for ``A = e^(i theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnsupportedRing
from .matrix import Matrix
from .tangle import Xm, Xp


@dataclass(frozen=True, eq=False)
class CrossingData:
    M: Matrix
    N: Matrix
    Rplus: Matrix
    Rminus: Matrix


def _is_identity(m, ring, tol=None):
    ident = Matrix.identity(m.shape[0], ring)
    if ring.exact:
        return m == ident
    return m.allclose(ident, ring.tol if tol is None else tol)


def crossing_matrices(rep, tol=None):
    """Build ``M``, ``N``, ``R+`` and ``R-``; asserts ``R+ R- = I``."""
    M, N = rep.cup_matrix(), rep.cap_matrix()
    Rp, Rm = rep.crossing_matrix(Xp), rep.crossing_matrix(Xm)
    if not _is_identity(Rp @ Rm, rep.ring, tol):
        raise ArithmeticError("R+ R- is not the identity; the loop condition is broken")
    return CrossingData(M, N, Rp, Rm)


def is_unitary(rep, tol=None):
    """Whether ``R+^dagger R+ = I``; exact over Gaussian rationals, ``tol`` for doubles."""
    if rep.ring.name not in ("rational", "gaussian", "complex"):
        raise UnsupportedRing(f"unitarity needs numeric entries, not {rep.ring.name}")
    R = crossing_matrices(rep, tol).Rplus
    return _is_identity(R.conj_transpose() @ R, rep.ring, tol)


def norm_bound_report(n, theta):
    """The two sides of ``4 cos^2(2 theta) >= n^2``."""
    if n < 2:
        raise ValueError("rank must be at least 2")
    lhs = 4 * math.cos(2 * theta) ** 2
    rhs = n * n
    # cos(2 theta)^2 = 1 exactly when theta is a multiple of pi/2
    k = 2 * theta / math.pi
    if abs(k - round(k)) < 1e-12:
        lhs = 4.0
    return {"n": n, "theta": theta, "lhs": lhs, "rhs": rhs, "feasible": lhs >= rhs}


def rank_bound_matrix(cd, a):
    """``a^-1 (M N)^dagger - a (M N)``, which has rank at most 2."""
    ring = cd.M.ring
    MN = cd.M @ cd.N
    return MN.conj_transpose().scale(ring.inverse(a)) - MN.scale(a)


__all__ = ["CrossingData", "crossing_matrices", "is_unitary", "norm_bound_report",
           "rank_bound_matrix"]
