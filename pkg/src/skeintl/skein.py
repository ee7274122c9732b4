"""The Kauffman bracket skein relation applied to tangle words.

Crossings are resolved with

    x+  =  A * id2  +  A^-1 * e
    x-  =  A^-1 * id2  +  A * e

where ``e`` is the turnback (cap then cup), and every closed loop becomes the
scalar ``delta = -A^2 - A^-2``.  Expansion proceeds slice by slice and the
running element is kept in the matching basis, so the number of live terms
never exceeds the Catalan number of the current width.

Two words are equal in the quotient category exactly when their expansions
agree, which is what :func:`quotient_equal` checks.

Chirality: with this convention the closure of ``x+ ; x+ ; x+`` has bracket
``delta * (-A^5 - A^-3 + A^-7)`` and a positive kink (``x+`` closed off on
the right) multiplies a strand by ``-A^3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ArityMismatch, NotALink, TooManyCrossings
from .ring import A, DELTA, LAURENT, LaurentPoly, delta_of, evaluate_poly, ring_of
from .tangle import Cap, Cup, Id, TangleExpr, TangleWord, Xm, Xp, as_expr, compose, tensor
from .tl import DisjointSet, PlanarMatching, TLElement, tl_compose, tl_tensor

MAX_ORACLE_CROSSINGS = 20


@dataclass(frozen=True)
class SkeinContext:
    """Where the bracket is evaluated: symbolic ``A`` or a unit of a numeric ring."""

    A: object = A
    ring: object = None
    delta: object = field(init=False)

    def __post_init__(self):
        ring = self.ring or ring_of(self.A)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "A", ring.coerce(self.A))
        object.__setattr__(self, "delta", delta_of(self.A, ring))

    @classmethod
    def symbolic(cls):
        return cls(A, LAURENT)

    @property
    def is_symbolic(self):
        return self.ring is LAURENT and self.A == A

    def scalar(self, p):
        """Map a Laurent coefficient into this context's ring."""
        if self.is_symbolic:
            return p
        return evaluate_poly(p, self.A, self.ring)

    @property
    def A_inv(self):
        return self.ring.inverse(self.A)


SYMBOLIC = SkeinContext.symbolic()


def generator_image(g, ctx=SYMBOLIC):
    """The TL element a single generator is sent to."""
    one = ctx.ring.one
    if g is Id:
        return TLElement.identity(1, one)
    if g is Cup:
        return TLElement.of(PlanarMatching.cup(), one)
    if g is Cap:
        return TLElement.of(PlanarMatching.cap(), one)
    ident = PlanarMatching.identity(2)
    e = PlanarMatching.turnback()
    if g is Xp:
        return TLElement(2, 2, {ident: ctx.A, e: ctx.A_inv})
    if g is Xm:
        return TLElement(2, 2, {ident: ctx.A_inv, e: ctx.A})
    raise ValueError(f"unknown generator {g!r}")


def _expand_word(w, ctx):
    state = TLElement.identity(w.source, ctx.ring.one)
    images = {}
    for s in w.slices:
        step = None
        for g in s:
            if g not in images:
                images[g] = generator_image(g, ctx)
            step = images[g] if step is None else tl_tensor(step, images[g])
        state = tl_compose(state, step, ctx.delta)
    return state


def expand_to_tl(t, ctx=SYMBOLIC):
    """Resolve every crossing and loop; the result is in the matching basis."""
    expr = as_expr(t)
    out = TLElement(expr.source, expr.target)
    for w, c in expr.terms.items():
        out = out + ctx.scalar(c) * _expand_word(w, ctx)
    return out


def bracket(link, ctx=SYMBOLIC):
    """The (unnormalized) bracket of a ``0 -> 0`` word; the unknot gives ``delta``."""
    if isinstance(link, TangleWord) and not link.is_link():
        raise NotALink(f"word is {link.source} -> {link.target}, not 0 -> 0")
    expr = as_expr(link)
    if expr.source or expr.target:
        raise NotALink(f"expression is {expr.source} -> {expr.target}, not 0 -> 0")
    value = expand_to_tl(expr, ctx).scalar()
    return ctx.ring.zero if value is None else value


def statesum_oracle(link, max_crossings=MAX_ORACLE_CROSSINGS):
    """Brute-force Kauffman state sum over all ``2^c`` smoothings.

    Each crossing is replaced by the smoothing that carries weight A (the
    straight-through one for ``x+``, the turnback for ``x-``) or the other
    one, weight A^-1.  Loops of the resulting diagram are counted with a
    single union-find over all wire segments.
    """
    if not link.is_link():
        raise NotALink(f"word is {link.source} -> {link.target}, not 0 -> 0")
    events = link.events()
    crossings = [n for n, (g, _, _) in enumerate(events) if g.is_crossing]
    c = len(crossings)
    if c > max_crossings:
        raise TooManyCrossings(f"{c} crossings exceed the oracle cap of {max_crossings}")
    tally = {}
    for state in range(1 << c):
        choice = {}
        for bit, n in enumerate(crossings):
            a_smoothing = not (state >> bit) & 1
            straight = a_smoothing if events[n][0] is Xp else not a_smoothing
            choice[n] = straight
        ds = DisjointSet()
        wires = []
        for n, (g, off, _) in enumerate(events):
            if g is Cup:
                a, b = ds.add(), ds.add()
                ds.union(a, b)
                wires[off:off] = [a, b]
            elif g is Cap:
                ds.union(wires[off], wires[off + 1])
                del wires[off:off + 2]
            elif not choice[n]:
                ds.union(wires[off], wires[off + 1])
                a, b = ds.add(), ds.add()
                ds.union(a, b)
                wires[off:off + 2] = [a, b]
        loops = ds.count()
        exponent = c - 2 * bin(state).count("1")
        tally[(exponent, loops)] = tally.get((exponent, loops), 0) + 1
    total = LaurentPoly()
    for (exponent, loops), count in tally.items():
        total = total + count * LaurentPoly.monomial(1, exponent) * DELTA ** loops
    return total


def quotient_equal(s, t, ctx=SYMBOLIC):
    """Equality in the quotient by the skein ideal: compare TL normal forms."""
    s, t = as_expr(s), as_expr(t)
    if (s.source, s.target) != (t.source, t.target):
        raise ArityMismatch((s.source, s.target), (t.source, t.target), "compare")
    return expand_to_tl(s, ctx) == expand_to_tl(t, ctx)


def positive_kink():
    """A strand with one ``x+`` curl, ``1 -> 1``."""
    idw = TangleWord.identity(1)
    return compose(compose(tensor(idw, TangleWord.generator(Cup)),
                           tensor(TangleWord.generator(Xp), idw)),
                   tensor(idw, TangleWord.generator(Cap)))


def negative_kink():
    idw = TangleWord.identity(1)
    return compose(compose(tensor(idw, TangleWord.generator(Cup)),
                           tensor(TangleWord.generator(Xm), idw)),
                   tensor(idw, TangleWord.generator(Cap)))


def kink_unit(ctx=SYMBOLIC):
    """The scalar a positive kink multiplies a strand by (``-A^3`` here)."""
    out = expand_to_tl(positive_kink(), ctx)
    return out.coefficient(PlanarMatching.identity(1), ctx.ring.zero)


def framing_normalized(link, ctx=SYMBOLIC):
    """``bracket(link) * u^-writhe`` where ``u`` is the positive kink unit."""
    from .tangle import writhe

    u = kink_unit(ctx)
    w = writhe(link)
    factor = ctx.ring.inverse(u) if w > 0 else u
    value = bracket(link, ctx)
    for _ in range(abs(w)):
        value = value * factor
    return value


__all__ = [
    "SkeinContext", "SYMBOLIC", "generator_image", "expand_to_tl", "bracket",
    "statesum_oracle", "quotient_equal", "kink_unit", "framing_normalized",
    "positive_kink", "negative_kink", "TangleExpr",
]
