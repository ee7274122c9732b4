"""Representations of the Temperley-Lieb category on a free module of rank r.

A pairing matrix ``B`` with inverse ``B^`` gives the functor

    n      ->  M^(tensor n)           (dimension r^n)
    cap    ->  e_i (x) e_j  |->  B[i, j]          (1 x r^2)
    cup    ->  1  |->  sum B^[i, j] e_i (x) e_j   (r^2 x 1)

and it sends the closed loop to ``trace(B^-1 B^T)``, so a representation
with loop value delta exists exactly when that trace is delta.

Tensor indices are row-major: the leftmost strand is the most significant
digit, so a slice ``id_a (x) G (x) id_b`` acts as ``kron(I, G, I)``.
Composition is diagrammatic, hence ``F(f ; g) = F(g) @ F(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ArityMismatch, DeltaMismatch, NotInvertible, RingMismatch
from .matrix import Matrix
from .ring import A as SYMBOL_A
from .ring import COMPLEX, LAURENT, RINGS, LaurentPoly, delta_of, evaluate_poly, ring_of
from .skein import SkeinContext, expand_to_tl
from .tangle import Cap, Cup, Id, TangleExpr, TangleWord, Xm, Xp, as_expr
from .tl import TLElement, matching_word


def form_inverse(B):
    """Exact inverse; Cramer's rule up to rank 4, fraction-free elimination above."""
    if not B.is_square:
        raise NotInvertible(f"a {B.shape[0]}x{B.shape[1]} form is not square")
    return B.inverse()


def asymmetry(B):
    """``B^-1 B^T``."""
    return form_inverse(B) @ B.T


def check_delta(B, delta, tol=None):
    """Whether ``trace(B^-1 B^T)`` equals ``delta`` (within ``tol`` for complex doubles)."""
    M = asymmetry(B)
    t = M.trace()
    if B.ring is COMPLEX or not B.ring.exact:
        # roundoff grows with the entries, so the tolerance is relative to them
        scale = max([1.0] + [abs(complex(v)) for _, v in M.items()])
        return abs(complex(t) - complex(delta)) <= (B.ring.tol if tol is None else tol) * scale
    return B.ring.coerce(t) == B.ring.coerce(delta)


def _form_in_ring(B, A, ring):
    if B.ring == ring:
        return B
    if B.ring is LAURENT:
        return B.map(lambda v: evaluate_poly(v, A, ring), ring)
    try:
        return B.to_ring(ring)
    except RingMismatch:
        raise RingMismatch(f"form over {B.ring.name} cannot be used at A = {A}") from None


@dataclass(frozen=True, eq=False)
class Representation:
    """A pairing ``form`` on a free module, with its cached inverse and point ``A``."""

    form: Matrix
    inverse: Matrix
    A: object
    delta: object

    @property
    def ring(self):
        return self.form.ring

    @property
    def rank(self):
        return self.form.shape[0]

    @property
    def context(self):
        return SkeinContext(self.A, self.ring)

    def cap_matrix(self):
        """The pairing ``N``, shape ``1 x r^2``."""
        r = self.rank
        return Matrix._raw(self.ring, (1, r * r),
                           {(0, i * r + j): v for (i, j), v in self.form.items()})

    def cup_matrix(self):
        """The copairing ``M``, shape ``r^2 x 1``."""
        r = self.rank
        return Matrix._raw(self.ring, (r * r, 1),
                           {(i * r + j, 0): v for (i, j), v in self.inverse.items()})

    def turnback_matrix(self):
        return self.cup_matrix() @ self.cap_matrix()

    def crossing_matrix(self, g):
        ring = self.ring
        a = self.A
        a_inv = ring.inverse(a)
        one = Matrix.identity(self.rank ** 2, ring)
        e = self.turnback_matrix()
        if g is Xp:
            return one.scale(a) + e.scale(a_inv)
        if g is Xm:
            return one.scale(a_inv) + e.scale(a)
        raise ValueError(f"{g!r} is not a crossing")

    def generator_matrix(self, g):
        if g is Id:
            return Matrix.identity(self.rank, self.ring)
        if g is Cup:
            return self.cup_matrix()
        if g is Cap:
            return self.cap_matrix()
        return self.crossing_matrix(g)


def make_representation(B, A=SYMBOL_A):
    """Build ``F_{M,B}`` at ``A``; raises DeltaMismatch unless ``trace(B^-1 B^T) = delta``."""
    ring = ring_of(A)
    A = ring.coerce(A)
    B = _form_in_ring(B, A, ring)
    if not B.is_square:
        raise NotInvertible(f"a {B.shape[0]}x{B.shape[1]} form is not square")
    inv = form_inverse(B)
    delta = delta_of(A, ring)
    if not check_delta(B, delta):
        raise DeltaMismatch(asymmetry(B).trace(), delta)
    return Representation(B, inv, A, delta)


def _apply(state, G, dom, cod, off, width, r):
    """``kron(I_{r^off}, G, I_{r^rest}) @ state`` without forming the Kronecker product."""
    rest = width - off - dom
    low = r ** rest
    mid = r ** dom
    by_col = {}
    for (i, j), v in G.items():
        by_col.setdefault(j, []).append((i, v))
    out = {}
    ring = state.ring
    for (row, col), v in state.items():
        high, rem = divmod(row, mid * low)
        m, lo = divmod(rem, low)
        for i, w in by_col.get(m, ()):
            key = ((high * (r ** cod) + i) * low + lo, col)
            p = w * v
            out[key] = out[key] + p if key in out else p
    new_width = width - dom + cod
    return Matrix._raw(ring, (r ** new_width, state.shape[1]),
                       {k: v for k, v in out.items() if not ring.is_zero(v)})


def evaluate_word(rep, w):
    """``F(w)`` computed generator by generator, crossings included, with no skein step."""
    r = rep.rank
    state = Matrix.identity(r ** w.source, rep.ring)
    cache = {}
    for g, off, width in w.events():
        if g not in cache:
            cache[g] = rep.generator_matrix(g)
        state = _apply(state, cache[g], g.domain, g.codomain, off, width, r)
    return state


def matching_tensor(rep, mt):
    """``F(mt)`` by direct contraction: caps read ``B``, cups read ``B^``, strands are deltas."""
    r = rep.rank
    ring = rep.ring
    m, n = mt.bottom, mt.top
    pairs = sorted(mt.pairs)
    entries = {}
    for labels in product(range(r), repeat=m + n):
        value = ring.one
        for a, b in pairs:
            if b < m:
                value = value * rep.form[(labels[a], labels[b])]
            elif a >= m:
                value = value * rep.inverse[(labels[a], labels[b])]
            elif labels[a] != labels[b]:
                value = ring.zero
            if ring.is_zero(value):
                break
        else:
            col = row = 0
            for k in range(m):
                col = col * r + labels[k]
            for k in range(m, m + n):
                row = row * r + labels[k]
            entries[(row, col)] = value
    return Matrix._raw(ring, (r ** n, r ** m), entries)


def _scalar(rep, c):
    if isinstance(c, LaurentPoly) and rep.ring is not LAURENT:
        return evaluate_poly(c, rep.A, rep.ring)
    return rep.ring.coerce(c)


def evaluate_functor(rep, x):
    """The matrix of ``F(x)``, shape ``r^target x r^source``.

    Words and expressions are first reduced to TL normal form at the
    representation's point, then each matching is evaluated as a cup/cap word.
    """
    if isinstance(x, (TangleWord, TangleExpr)) or not isinstance(x, TLElement):
        x = expand_to_tl(as_expr(x), rep.context)
    r = rep.rank
    out = Matrix.zeros((r ** x.target, r ** x.source), rep.ring)
    for mt, c in x.terms.items():
        out = out + evaluate_word(rep, matching_word(mt)).scale(_scalar(rep, c))
    return out


def compose_images(first, second):
    """Image of ``first ; second`` from the images of its parts."""
    if first.shape[0] != second.shape[1]:
        raise ArityMismatch(first.shape[0], second.shape[1])
    return second @ first


def base_form(A=SYMBOL_A):
    """``[[1, A + A^-1], [0, 1]]``, the rank 2 form with loop value ``-A^2 - A^-2``."""
    ring = ring_of(A)
    a = ring.coerce(A)
    return Matrix(ring, (2, 2), {(0, 0): 1, (0, 1): a + ring.inverse(a), (1, 1): 1})


def rank_n_steps(n, A=SYMBOL_A):
    """Yield ``(form, inverse)`` for ranks ``2..n`` of the bordered construction.

    Each step appends a column with a 1 in the previous last row and in the
    new corner, and a zero row.  Along the way the inverse keeps a 1 in its
    bottom right corner.
    """
    if n < 2:
        raise ValueError("rank must be at least 2")
    B = base_form(A)
    inv = form_inverse(B)
    yield B, inv
    for k in range(2, n):
        entries = dict(B.items())
        entries[(k - 1, k)] = B.ring.one
        entries[(k, k)] = B.ring.one
        B = Matrix(B.ring, (k + 1, k + 1), entries)
        inv = form_inverse(B)
        yield B, inv


def rank_n_form(n, A=SYMBOL_A):
    """The rank ``n`` form (``n >= 2``) satisfying the loop condition at ``A``."""
    B = None
    for B, _ in rank_n_steps(n, A):
        pass
    return B


def form_to_json(B):
    """``{"ring": ..., "matrix": [[text, ...], ...]}``."""
    return {"ring": B.ring.name, "matrix": [[B.ring.format(v) for v in row] for row in B.rows()]}


def form_from_json(data):
    """Inverse of :func:`form_to_json`; ints and strings are both accepted."""
    ring_name = data.get("ring", "laurent")
    if ring_name not in RINGS:
        raise ValueError(f"unknown ring {ring_name!r}")
    ring = RINGS[ring_name]
    rows = data.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a non-empty list of rows")
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("form matrix must be square")
    return Matrix(ring, (len(rows), len(rows)),
                  {(i, j): ring.coerce(v if isinstance(v, str) else int(v))
                   for i, r in enumerate(rows) for j, v in enumerate(r)})
