"""Temperley-Lieb diagrams: crossingless matchings and their linear combinations.

Boundary points of an ``m -> n`` matching are numbered ``0..m-1`` along the
bottom (left to right) and ``m..m+n-1`` along the top (left to right).
Walking around the square, bottom left to right then top right to left,
gives the circular order in which "noncrossing" is a plain interleaving test.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ArityMismatch
from .ring import DELTA, ONE, LaurentPoly
from .tangle import Cap, Cup, Id, TangleWord


class DisjointSet:
    """Union-find with path halving."""

    def __init__(self, n=0):
        self.parent = list(range(n))

    def add(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def count(self):
        return sum(1 for i, p in enumerate(self.parent) if self.find(i) == i)


@dataclass(frozen=True)
class PlanarMatching:
    bottom: int
    top: int
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset(tuple(sorted(p)) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        n = self.bottom + self.top
        seen = sorted(x for p in pairs for x in p)
        if seen != list(range(n)):
            raise ValueError(f"pairs {sorted(pairs)} are not a perfect matching of {n} points")
        arcs = sorted(tuple(sorted((self.circular(a), self.circular(b)))) for a, b in pairs)
        for x, (a, b) in enumerate(arcs):
            for c, d in arcs[x + 1:]:
                if a < c < b < d:
                    raise ValueError(f"pairs {sorted(pairs)} cross")

    def circular(self, p):
        """Position of boundary point ``p`` in the circular order."""
        if p < self.bottom:
            return p
        return self.bottom + (self.top - 1 - (p - self.bottom))

    @classmethod
    def identity(cls, n):
        return cls(n, n, frozenset((i, n + i) for i in range(n)))

    @classmethod
    def cup(cls):
        return cls(0, 2, frozenset({(0, 1)}))

    @classmethod
    def cap(cls):
        return cls(2, 0, frozenset({(0, 1)}))

    @classmethod
    def turnback(cls):
        """The 2 -> 2 diagram ``e``: cap then cup."""
        return cls(2, 2, frozenset({(0, 1), (2, 3)}))

    def partner(self):
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def through_strands(self):
        return sum(1 for a, b in self.pairs if a < self.bottom <= b)

    def __str__(self):
        def label(p):
            return f"B{p + 1}" if p < self.bottom else f"T{p - self.bottom + 1}"
        return "[" + ",".join(f"({label(a)},{label(b)})" for a, b in sorted(self.pairs)) + "]"

    def sort_key(self):
        return (self.bottom, self.top, tuple(sorted(self.pairs)))

    @classmethod
    def parse(cls, text, bottom, top):
        pairs = []
        for a, b in re.findall(r"\(\s*([BT]\d+)\s*,\s*([BT]\d+)\s*\)", text):
            pairs.append((_point(a, bottom), _point(b, bottom)))
        return cls(bottom, top, frozenset(pairs))


def _point(label, bottom):
    k = int(label[1:]) - 1
    return k if label[0] == "B" else bottom + k


def compose_matchings(x, y):
    """Stack ``y`` on top of ``x``; return ``(matching, closed_loops)``."""
    if x.top != y.bottom:
        raise ArityMismatch(x.top, y.bottom)
    m, n, k = x.bottom, x.top, y.top
    off = m + n
    ds = DisjointSet(off + n + k)
    for a, b in x.pairs:
        ds.union(a, b)
    for a, b in y.pairs:
        ds.union(off + a, off + b)
    for j in range(n):
        ds.union(m + j, off + j)
    ends = {}
    for i in range(m):
        ends.setdefault(ds.find(i), []).append(i)
    for t in range(k):
        ends.setdefault(ds.find(off + n + t), []).append(m + t)
    roots = {ds.find(v) for v in range(off + n + k)}
    loops = len(roots) - len(ends)
    return PlanarMatching(m, k, frozenset(tuple(v) for v in ends.values())), loops


def tensor_matchings(x, y):
    """Place ``y`` to the right of ``x``."""

    def shift_x(p):
        return p if p < x.bottom else p + y.bottom

    def shift_y(p):
        return p + x.bottom if p < y.bottom else p + x.bottom + x.top

    pairs = {(shift_x(a), shift_x(b)) for a, b in x.pairs}
    pairs |= {(shift_y(a), shift_y(b)) for a, b in y.pairs}
    return PlanarMatching(x.bottom + y.bottom, x.top + y.top, frozenset(pairs))


class TLElement:
    """A linear combination of ``source -> target`` matchings.

    Coefficients may live in any ring; Laurent polynomials are the default.
    """

    __slots__ = ("source", "target", "terms")

    def __init__(self, source, target, terms=None):
        self.source = source
        self.target = target
        clean = {}
        for mt, c in (terms or {}).items():
            if (mt.bottom, mt.top) != (source, target):
                raise ArityMismatch((mt.bottom, mt.top), (source, target), "add")
            if c:
                clean[mt] = c
        self.terms = clean

    @classmethod
    def of(cls, matching, coeff=ONE):
        return cls(matching.bottom, matching.top, {matching: coeff})

    @classmethod
    def identity(cls, n, one=ONE):
        return cls.of(PlanarMatching.identity(n), one)

    def coefficient(self, matching, zero=None):
        return self.terms.get(matching, LaurentPoly() if zero is None else zero)

    def scalar(self):
        """The coefficient of the empty matching of a ``0 -> 0`` element."""
        if self.source or self.target:
            raise ArityMismatch((self.source, self.target), (0, 0), "read a scalar from")
        return self.terms.get(PlanarMatching(0, 0, frozenset()))

    def __add__(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ArityMismatch((self.source, self.target), (other.source, other.target), "add")
        out = dict(self.terms)
        for mt, c in other.terms.items():
            out[mt] = out[mt] + c if mt in out else c
        return TLElement(self.source, self.target, out)

    def __neg__(self):
        return TLElement(self.source, self.target, {mt: -c for mt, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return TLElement(self.source, self.target, {mt: c * v for mt, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self.terms == other.terms

    __hash__ = None

    def map_coefficients(self, f):
        return TLElement(self.source, self.target, {mt: f(c) for mt, c in self.terms.items()})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        body = " + ".join(f"({c})*{mt}" for mt, c in self.items()) or "0"
        return f"TLElement[{self.source}->{self.target}]({body})"


def tl_compose(x, y, delta=DELTA):
    """``x`` first, then ``y``; every closed loop contributes a factor ``delta``."""
    if x.target != y.source:
        raise ArityMismatch(x.target, y.source)
    out = {}
    powers = {0: None}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            mt, loops = compose_matchings(m1, m2)
            c = c1 * c2
            if loops:
                if loops not in powers:
                    powers[loops] = delta ** loops
                c = c * powers[loops]
            out[mt] = out[mt] + c if mt in out else c
    return TLElement(x.source, y.target, out)


def tl_tensor(x, y):
    out = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            mt = tensor_matchings(m1, m2)
            c = c1 * c2
            out[mt] = out[mt] + c if mt in out else c
    return TLElement(x.source + y.source, x.target + y.target, out)


@lru_cache(maxsize=None)
def _circular_matchings(n):
    """All noncrossing perfect matchings of circle points ``0..n-1``."""
    if n == 0:
        return [()]
    out = []
    for k in range(1, n, 2):
        inner = _circular_matchings(k - 1)
        outer = _circular_matchings(n - k - 1)
        for a in inner:
            for b in outer:
                pairs = ((0, k),) + tuple((p + 1, q + 1) for p, q in a)
                pairs += tuple((p + k + 1, q + k + 1) for p, q in b)
                out.append(pairs)
    return out


def tl_basis(m, n):
    """Every crossingless matching ``m -> n``, in a fixed order."""
    if (m + n) % 2:
        return []
    # invert PlanarMatching.circular
    def label(c):
        return c if c < m else m + (n - 1 - (c - m))

    return [PlanarMatching(m, n, frozenset((label(a), label(b)) for a, b in pairs))
            for pairs in _circular_matchings(m + n)]


def matching_word(mt):
    """A cup/cap word whose diagram is ``mt``.

    Caps are applied first (innermost bottom arcs first), then cups build the
    top arcs (outermost first).  Through strands are untouched identities.
    """
    events = []
    # caps: bottom points, nested arcs are adjacent once their insides are gone
    partner = mt.partner()
    alive = list(range(mt.bottom))
    while True:
        for idx in range(len(alive) - 1):
            a, b = alive[idx], alive[idx + 1]
            if partner[a] == b:
                events.append((Cap, idx))
                del alive[idx:idx + 2]
                break
        else:
            break
    # cups: peel innermost top arcs; they are the last cups applied
    top = list(range(mt.bottom, mt.bottom + mt.top))
    cups = []
    while True:
        for idx in range(len(top) - 1):
            a, b = top[idx], top[idx + 1]
            if partner[a] == b:
                cups.append((Cup, idx))
                del top[idx:idx + 2]
                break
        else:
            break
    events.extend(reversed(cups))
    slices = []
    width = mt.bottom
    for g, off in events:
        slices.append((Id,) * off + (g,) + (Id,) * (width - off - g.domain))
        width += g.codomain - g.domain
    return TangleWord(mt.bottom, mt.top, tuple(slices))
