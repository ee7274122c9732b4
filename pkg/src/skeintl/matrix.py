"""Sparse matrices over any of the engine's rings.

Functor images of tangles are Kronecker products of a few small blocks with
large identities, so entries are kept in a ``{(row, col): value}`` map and
zeros are never stored.  Dense ``rows()`` views are available for small
matrices and for printing.
"""

from __future__ import annotations

from itertools import permutations

from .errors import NotAUnit, NotInvertible, RingMismatch
from .ring import COMPLEX, RATIONAL, ring_of


class Matrix:
    __slots__ = ("ring", "shape", "_entries")

    def __init__(self, ring, shape, entries=None):
        self.ring = ring
        self.shape = (int(shape[0]), int(shape[1]))
        clean = {}
        for key, v in (entries or {}).items():
            v = ring.coerce(v)
            if not ring.is_zero(v):
                clean[key] = v
        self._entries = clean

    @classmethod
    def _raw(cls, ring, shape, entries):
        m = cls.__new__(cls)
        m.ring, m.shape, m._entries = ring, shape, entries
        return m

    @classmethod
    def from_rows(cls, rows, ring=None):
        rows = [list(r) for r in rows]
        if ring is None:
            ring = RATIONAL
            for r in rows:
                for v in r:
                    if not isinstance(v, int) or isinstance(v, bool):
                        ring = ring_of(v)
                        break
                else:
                    continue
                break
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        entries = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)}
        return cls(ring, (len(rows), ncols), entries)

    @classmethod
    def identity(cls, n, ring=RATIONAL):
        one = ring.one
        return cls._raw(ring, (n, n), {(i, i): one for i in range(n)})

    @classmethod
    def zeros(cls, shape, ring=RATIONAL):
        return cls._raw(ring, tuple(shape), {})

    @classmethod
    def column(cls, values, ring=None):
        return cls.from_rows([[v] for v in values], ring)

    @classmethod
    def row(cls, values, ring=None):
        return cls.from_rows([list(values)], ring)

    @classmethod
    def direct_sum(cls, blocks):
        blocks = list(blocks)
        ring = blocks[0].ring
        r0 = c0 = 0
        entries = {}
        for b in blocks:
            if b.ring != ring:
                raise RingMismatch("direct sum of matrices over different rings")
            for (i, j), v in b._entries.items():
                entries[(r0 + i, c0 + j)] = v
            r0 += b.shape[0]
            c0 += b.shape[1]
        return cls._raw(ring, (r0, c0), entries)

    # ------------------------------------------------------------------ access

    def __getitem__(self, key):
        return self._entries.get(key, self.ring.zero)

    def items(self):
        return self._entries.items()

    @property
    def nnz(self):
        return len(self._entries)

    @property
    def is_square(self):
        return self.shape[0] == self.shape[1]

    def rows(self):
        zero = self.ring.zero
        out = [[zero] * self.shape[1] for _ in range(self.shape[0])]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def map(self, f, ring):
        return Matrix(ring, self.shape, {k: f(v) for k, v in self._entries.items()})

    def to_ring(self, ring):
        return self.map(ring.coerce, ring)

    # -------------------------------------------------------------- arithmetic

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise RingMismatch(f"matrix over {self.ring.name} vs {other.ring.name}")

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ValueError(f"shape {self.shape} vs {other.shape}")
        out = dict(self._entries)
        for k, v in other._entries.items():
            s = out[k] + v if k in out else v
            if self.ring.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return Matrix._raw(self.ring, self.shape, out)

    def __neg__(self):
        return Matrix._raw(self.ring, self.shape, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.coerce(c)
        if self.ring.is_zero(c):
            return Matrix.zeros(self.shape, self.ring)
        return Matrix(self.ring, self.shape, {k: c * v for k, v in self._entries.items()})

    def __matmul__(self, other):
        self._check_ring(other)
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        by_row = {}
        for (k, j), w in other._entries.items():
            by_row.setdefault(k, []).append((j, w))
        out = {}
        for (i, k), v in self._entries.items():
            row = by_row.get(k)
            if not row:
                continue
            for j, w in row:
                key = (i, j)
                out[key] = out[key] + v * w if key in out else v * w
        is_zero = self.ring.is_zero
        return Matrix._raw(self.ring, (self.shape[0], other.shape[1]),
                           {k: v for k, v in out.items() if not is_zero(v)})

    def kron(self, other):
        self._check_ring(other)
        r2, c2 = other.shape
        out = {}
        for (i, j), v in self._entries.items():
            for (k, l), w in other._entries.items():
                p = v * w
                if not self.ring.is_zero(p):
                    out[(i * r2 + k, j * c2 + l)] = p
        return Matrix._raw(self.ring, (self.shape[0] * r2, self.shape[1] * c2), out)

    def transpose(self):
        return Matrix._raw(self.ring, (self.shape[1], self.shape[0]),
                           {(j, i): v for (i, j), v in self._entries.items()})

    @property
    def T(self):
        return self.transpose()

    def conj_transpose(self):
        conj = self.ring.conj
        return Matrix._raw(self.ring, (self.shape[1], self.shape[0]),
                           {(j, i): conj(v) for (i, j), v in self._entries.items()})

    def trace(self):
        total = self.ring.zero
        for i in range(min(self.shape)):
            if (i, i) in self._entries:
                total = total + self._entries[(i, i)]
        return total

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.ring == other.ring and self._entries == other._entries

    __hash__ = None

    def allclose(self, other, tol=1e-9):
        if self.shape != other.shape:
            return False
        keys = set(self._entries) | set(other._entries)
        return all(abs(complex(self[k]) - complex(other[k])) <= tol for k in keys)

    def __repr__(self):
        return f"Matrix<{self.ring.name}>({[[str(v) for v in r] for r in self.rows()]})"

    # ------------------------------------------------------------ elimination

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.shape[0]
        if n == 0:
            return self.ring.one
        ring = self.ring
        m = self.rows()
        sign = 1
        prev = ring.one
        for k in range(n - 1):
            if ring.is_zero(m[k][k]):
                for i in range(k + 1, n):
                    if not ring.is_zero(m[i][k]):
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return ring.zero
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = ring.div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return d if sign > 0 else -d

    def det_leibniz(self):
        """Determinant by the permutation expansion (tiny matrices only)."""
        n = self.shape[0]
        total = self.ring.zero
        for perm in permutations(range(n)):
            inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
            term = self.ring.one
            for i, p in enumerate(perm):
                term = term * self[(i, p)]
                if self.ring.is_zero(term):
                    break
            else:
                total = total + (-term if inversions % 2 else term)
        return total

    def minor(self, i, j):
        n = self.shape[0]
        entries = {}
        for (r, c), v in self._entries.items():
            if r != i and c != j:
                entries[(r - (r > i), c - (c > j))] = v
        return Matrix._raw(self.ring, (n - 1, n - 1), entries)

    def inverse_cramer(self):
        """Inverse as adjugate over determinant (Cramer's rule)."""
        n = self.shape[0]
        d = self.det()
        try:
            dinv = self.ring.inverse(d)
        except NotAUnit:
            raise NotInvertible(f"determinant {d} is not a unit") from None
        if n == 1:
            return Matrix(self.ring, (1, 1), {(0, 0): dinv})
        entries = {}
        for i in range(n):
            for j in range(n):
                c = self.minor(j, i).det()
                if (i + j) % 2:
                    c = -c
                entries[(i, j)] = c * dinv
        return Matrix(self.ring, (n, n), entries)

    def inverse_bareiss(self):
        """Inverse by fraction-free Gauss-Jordan on ``[M | I]``.

        Every intermediate entry is a minor of the augmented matrix, so each
        division by the previous pivot is exact in an integral domain.  The
        left block ends as ``d*I`` with ``d = +-det``.
        """
        n = self.shape[0]
        ring = self.ring
        one, zero = ring.one, ring.zero
        m = self.rows()
        for i in range(n):
            m[i] = m[i] + [one if j == i else zero for j in range(n)]
        prev = one
        for k in range(n):
            if ring.is_zero(m[k][k]):
                for i in range(k + 1, n):
                    if not ring.is_zero(m[i][k]):
                        m[k], m[i] = m[i], m[k]
                        break
                else:
                    raise NotInvertible("matrix is singular")
            piv = m[k][k]
            for i in range(n):
                if i == k:
                    continue
                f = m[i][k]
                m[i] = [ring.div(piv * m[i][j] - f * m[k][j], prev) for j in range(2 * n)]
            prev = piv
        d = m[0][0]
        try:
            dinv = ring.inverse(d)
        except NotAUnit:
            raise NotInvertible(f"determinant {d} is not a unit") from None
        return Matrix(ring, (n, n), {(i, j): m[i][n + j] * dinv for i in range(n) for j in range(n)})

    def inverse(self):
        if not self.is_square:
            raise NotInvertible("non-square matrix")
        # Cramer for small ranks, Bareiss beyond
        if self.shape[0] <= 4:
            return self.inverse_cramer()
        return self.inverse_bareiss()

    def rank(self, tol=None):
        """Rank over the fraction field of the entries' ring.

        Complex double matrices use ``tol`` (default the ring's tolerance) to
        decide whether a pivot is zero.
        """
        ring = self.ring
        if ring is COMPLEX or not ring.exact:
            tol = ring.tol if tol is None else tol
            is_zero = lambda v: abs(v) <= tol  # noqa: E731
        else:
            is_zero = ring.is_zero
        m = self.rows()
        nrows, ncols = self.shape
        rank = 0
        for c in range(ncols):
            piv = None
            for r in range(rank, nrows):
                if not is_zero(m[r][c]):
                    piv = r
                    break
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            p = m[rank][c]
            for r in range(rank + 1, nrows):
                f = m[r][c]
                if is_zero(f):
                    continue
                if ring.name == "laurent":
                    # cross-multiplication keeps Laurent entries in the ring
                    m[r] = [p * m[r][j] - f * m[rank][j] for j in range(ncols)]
                else:
                    q = ring.div(f, p)
                    m[r] = [m[r][j] - q * m[rank][j] for j in range(ncols)]
            rank += 1
            if rank == nrows:
                break
        return rank
