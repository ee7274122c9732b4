"""Indecomposable bilinear forms and the (rank, delta) bookkeeping they obey.

Over an algebraically closed field of characteristic zero every
nondegenerate form is an orthogonal sum of blocks

    H_n(lam) = [[0, I_n], [J_n(lam), 0]]      rank 2n, asymmetry trace n(lam + 1/lam)
    Gamma_n  (alternating +-1 band)           rank n,  asymmetry trace (-1)^(n+1) n

with ``lam != (-1)^(n+1)`` and ``H_n(lam)`` congruent to ``H_n(1/lam)``.

Two nondegenerate forms are congruent exactly when their asymmetries are
similar.  Similarity over Q is decided by invariant factors, computed from
the Smith normal form of ``xI - M`` over Q[x].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import InvalidBlock, NotInvertible, UnsupportedRing
from .matrix import Matrix
from .ring import RATIONAL, QuadraticField, QuadraticNumber, sqrt_rational


# --------------------------------------------------------------------- blocks


@dataclass(frozen=True)
class CanonicalBlock:
    """``H_n(lam)`` (variant ``"H"``) or ``Gamma_n`` (variant ``"Gamma"``).

    ``lam`` may be None for an H block whose parameter is still a constraint.
    """

    variant: str
    n: int
    lam: object = None

    def __post_init__(self):
        if self.variant not in ("H", "Gamma"):
            raise InvalidBlock(f"unknown block variant {self.variant!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidBlock(f"block size must be a positive integer, got {self.n!r}")
        if self.variant == "Gamma":
            if self.lam is not None:
                raise InvalidBlock("Gamma blocks take no parameter")
            return
        if self.lam is None:
            return
        lam = self.lam if isinstance(self.lam, QuadraticNumber) else Fraction(self.lam)
        object.__setattr__(self, "lam", lam)
        if not lam:
            raise InvalidBlock("H block parameter must be nonzero")
        if lam == (-1) ** (self.n + 1):
            raise InvalidBlock(f"H_{self.n} excludes lambda = {(-1) ** (self.n + 1)}")

    @classmethod
    def H(cls, n, lam=None):
        return cls("H", n, lam)

    @classmethod
    def Gamma(cls, n):
        return cls("Gamma", n)

    @property
    def rank(self):
        return 2 * self.n if self.variant == "H" else self.n

    def __str__(self):
        if self.variant == "Gamma":
            return f"Gamma_{self.n}"
        return f"H_{self.n}({'lambda' if self.lam is None else self.lam})"


def _block_ring(b):
    if isinstance(b.lam, QuadraticNumber):
        return QuadraticField(b.lam.d)
    return RATIONAL


def gamma_entries(n):
    """Nonzero entries of ``Gamma_n``: row i holds ``(-1)^(n-1-i)`` in columns n-1-i and n-i."""
    out = {}
    for i in range(n):
        sign = (-1) ** (n - 1 - i)
        for j in (n - 1 - i, n - i):
            if j < n:
                out[(i, j)] = sign
    return out


def block_matrix(b, ring=None):
    """The explicit matrix of a block; H blocks need a concrete ``lam``."""
    if b.variant == "Gamma":
        return Matrix(ring or RATIONAL, (b.n, b.n), gamma_entries(b.n))
    if b.lam is None:
        raise InvalidBlock("an H block needs a concrete lambda to become a matrix")
    ring = ring or _block_ring(b)
    n = b.n
    entries = {}
    for i in range(n):
        entries[(i, n + i)] = 1
        entries[(n + i, i)] = b.lam
        if i + 1 < n:
            entries[(n + i, i + 1)] = 1
    return Matrix(ring, (2 * n, 2 * n), entries)


@dataclass(frozen=True)
class LambdaTrace:
    """The symbolic trace ``n * (lam + 1/lam)`` of a parameter-free H block."""

    n: int

    def __str__(self):
        return f"{self.n}*(lambda + 1/lambda)" if self.n != 1 else "lambda + 1/lambda"


def block_stats(b):
    """``(rank, asymmetry trace)`` of a block."""
    if b.variant == "Gamma":
        return b.n, Fraction((-1) ** (b.n + 1) * b.n)
    if b.lam is None:
        return 2 * b.n, LambdaTrace(b.n)
    return 2 * b.n, b.n * (b.lam + b.lam ** -1)


# ------------------------------------------------------------------ solutions


def _format_lam(lam):
    return None if lam is None else str(lam)


@dataclass(frozen=True)
class BlockSolution:
    """A multiset of blocks; H blocks share one parameter fixed by ``lam + 1/lam = c``."""

    blocks: tuple
    delta: Fraction
    lam: object = None
    c: Fraction | None = None

    @property
    def rank(self):
        return sum(b.rank for b in self.blocks)

    @property
    def trace(self):
        total = Fraction(0)
        for b in self.blocks:
            # H blocks contribute n * c whether or not lambda is irrational
            total += b.n * self.c if b.variant == "H" else block_stats(b)[1]
        return total

    def signature(self):
        return tuple(sorted((b.variant, b.n) for b in self.blocks))

    def instantiate(self):
        """The direct sum of the block matrices, over Q or Q(sqrt d)."""
        ring = RATIONAL
        if isinstance(self.lam, QuadraticNumber):
            ring = QuadraticField(self.lam.d)
        return Matrix.direct_sum([block_matrix(b, ring) for b in self.blocks])

    def to_json(self):
        constraint = None if self.c is None else f"lambda + 1/lambda = {self.c}"
        return [{"variant": b.variant, "n": b.n, "lambda": _format_lam(b.lam),
                 "constraint": constraint if b.variant == "H" else None}
                for b in self.blocks]

    def __str__(self):
        return " + ".join(str(b) for b in self.blocks)


def _block_types(rank, max_blocks):
    types = []
    for k in range(1, rank + 1):
        types.append(("Gamma", k))
        if 2 * k <= rank:
            types.append(("H", k))
    for count in range(1, max_blocks + 1):
        for combo in combinations_with_replacement(types, count):
            if sum(k if v == "Gamma" else 2 * k for v, k in combo) == rank:
                yield combo


def solve_lambda(c):
    """A root of ``lam^2 - c*lam + 1 = 0``; the other root is its inverse."""
    c = Fraction(c)
    root = sqrt_rational(c * c - 4)
    if isinstance(root, QuadraticNumber):
        return QuadraticNumber(c / 2, root.b / 2, root.d)
    return (c + root) / 2


def solve_blocks(rank, delta, max_blocks=8):
    """Every block multiset of total rank ``rank`` whose asymmetry trace is ``delta``.

    All H blocks in one solution share a single parameter ``lam``, found from
    ``lam + 1/lam = (delta - gamma_trace) / (sum of H sizes)``.  Since the two
    roots are mutually inverse and ``H_n(lam) ~ H_n(1/lam)``, one root is kept.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    delta = Fraction(delta)
    out = []
    for combo in _block_types(rank, max_blocks):
        gamma_trace = sum((-1) ** (k + 1) * k for v, k in combo if v == "Gamma")
        h_sizes = [k for v, k in combo if v == "H"]
        if not h_sizes:
            if gamma_trace == delta:
                out.append(BlockSolution(tuple(CanonicalBlock.Gamma(k) for _, k in combo), delta))
            continue
        c = (delta - gamma_trace) / sum(h_sizes)
        lam = solve_lambda(c)
        # a double root at +-1 can hit the excluded value
        if any(lam == (-1) ** (k + 1) for k in h_sizes):
            continue
        blocks = tuple(CanonicalBlock(v, k, lam if v == "H" else None) for v, k in combo)
        out.append(BlockSolution(blocks, delta, lam, c))
    return out


# -------------------------------------------------------- polynomials over Q


class QPoly:
    """Dense univariate polynomial over Q; ``coeffs[k]`` multiplies ``x^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly((other,))
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return QPoly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return QPoly(-v for v in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            return QPoly(v * other for v in self.coeffs)
        if not self or not other:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            f = rem[k + dq] / lead
            if f:
                quot[k] = f
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= f * b
        return QPoly(quot), QPoly(rem)

    def monic(self):
        if not self:
            return self
        return self * (1 / self.coeffs[-1])

    def __repr__(self):
        return f"QPoly({[str(c) for c in self.coeffs]})"


def _smith_diagonal(m):
    """Diagonal of the Smith normal form of a square QPoly matrix (modified in place)."""
    n = len(m)
    for t in range(n):
        while True:
            cells = [(m[i][j].degree, i, j) for i in range(t, n) for j in range(t, n) if m[i][j]]
            if not cells:
                return [m[i][i] for i in range(n)]
            _, pi, pj = min(cells)
            m[t], m[pi] = m[pi], m[t]
            for row in m:
                row[t], row[pj] = row[pj], row[t]
            p = m[t][t]
            clean = True
            for i in range(t + 1, n):
                if m[i][t]:
                    q, r = m[i][t].divmod(p)
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    clean = clean and not r
            for j in range(t + 1, n):
                if m[t][j]:
                    q, r = m[t][j].divmod(p)
                    for row in m:
                        row[j] = row[j] - q * row[t]
                    clean = clean and not r
            if not clean:
                continue
            # the pivot must divide every remaining entry
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if m[i][j].divmod(p)[1]), None)
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
    return [m[i][i] for i in range(n)]


def _rational_matrix(M):
    if M.ring is not RATIONAL:
        raise UnsupportedRing(f"similarity is decided over the rationals, not {M.ring.name}")
    return M


def invariant_factors(M):
    """Monic invariant factors of a square rational matrix, excluding units."""
    M = _rational_matrix(M)
    n = M.shape[0]
    x = QPoly.x()
    m = [[(x if i == j else QPoly()) - QPoly((M[(i, j)],)) for j in range(n)] for i in range(n)]
    diag = [d.monic() for d in _smith_diagonal(m)]
    return sorted((d for d in diag if d.degree > 0), key=lambda d: d.degree)


def companion(p):
    """Companion matrix of a monic polynomial."""
    n = p.degree
    entries = {(i + 1, i): 1 for i in range(n - 1)}
    for i in range(n):
        entries[(i, n - 1)] = -p.coeffs[i]
    return Matrix(RATIONAL, (n, n), entries)


def rational_canonical_form(M):
    """The Frobenius normal form: companion blocks of the invariant factors."""
    blocks = [companion(p) for p in invariant_factors(M)]
    if not blocks:
        return Matrix.zeros((0, 0), RATIONAL)
    return Matrix.direct_sum(blocks)


def similar(M, N):
    if M.shape != N.shape:
        return False
    return invariant_factors(M) == invariant_factors(N)


def forms_equivalent(B, C):
    """Congruence of nondegenerate rational forms, via similarity of asymmetries."""
    from .rep import asymmetry

    for F in (B, C):
        if F.ring is not RATIONAL:
            raise UnsupportedRing(f"forms must be rational, got {F.ring.name}")
        if not F.is_square:
            raise NotInvertible("form matrices must be square")
    if B.shape != C.shape:
        return False
    return similar(asymmetry(B), asymmetry(C))


__all__ = [
    "CanonicalBlock", "LambdaTrace", "BlockSolution", "QPoly", "block_matrix", "block_stats",
    "gamma_entries", "solve_blocks", "solve_lambda", "invariant_factors", "companion",
    "rational_canonical_form", "similar", "forms_equivalent",
]
