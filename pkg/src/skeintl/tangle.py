"""Words in the free monoidal category on ``cup``, ``cap``, ``x+`` and ``x-``.

Composition is diagrammatic: ``compose(f, g)`` runs ``f`` first.  A word is
a list of slices read bottom to top; each slice is a row of generators
placed side by side.

Words are stored in a normal form: every slice holds exactly one
non-identity generator; closed components (sub-diagrams that never reach
the boundary) are moved to the bottom-left in a sorted order; and adjacent
slices whose generators sit side by side are ordered so that the left-hand
one comes first.  Every step is an instance of the interchange law, so
``tensor`` and ``compose`` satisfy the interchange law as an equality of
words.
No skein relation is applied here; see :mod:`skeintl.skein`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import ArityMismatch
from .ring import ONE, LaurentPoly

MAX_STRANDS = 64


class Generator(enum.Enum):
    ID = ("id", 1, 1)
    CUP = ("cup", 0, 2)
    CAP = ("cap", 2, 0)
    XP = ("x+", 2, 2)
    XM = ("x-", 2, 2)

    def __init__(self, symbol, domain, codomain):
        self.symbol = symbol
        self.domain = domain
        self.codomain = codomain

    @property
    def is_crossing(self):
        return self in (Generator.XP, Generator.XM)

    def __repr__(self):
        return f"Generator.{self.name}"


Id, Cup, Cap, Xp, Xm = Generator.ID, Generator.CUP, Generator.CAP, Generator.XP, Generator.XM


def slice_domain(factors):
    return sum(g.domain for g in factors)


def slice_codomain(factors):
    return sum(g.codomain for g in factors)


def _split_slices(source, slices):
    """Flatten slices into ``(generator, offset)`` events, one generator each.

    Raises ArityMismatch when adjacent slices do not fit together.
    """
    events = []
    width = source
    for factors in slices:
        dom = slice_domain(factors)
        if dom != width:
            raise ArityMismatch(width, dom)
        offset = 0
        for g in factors:
            if g is not Id:
                events.append((g, offset))
            offset += g.codomain
        width = slice_codomain(factors)
        if width > MAX_STRANDS:
            raise ValueError(f"more than {MAX_STRANDS} strands")
    return events, width


def _canonical_order(events):
    """Apply interchange moves until no generator sits entirely left of its predecessor.

    Only terminates when every component reaches the boundary or the
    diagram is connected; closed components are split off beforehand.
    """
    events = list(events)
    limit = 8 * len(events) ** 2 + 16
    swaps = 0
    k = 0
    while k < len(events) - 1:
        (g, i), (h, j) = events[k], events[k + 1]
        # h lies left of g's outputs, so it may slide below g
        if j + h.domain <= i:
            events[k] = (h, j)
            events[k + 1] = (g, i - h.domain + h.codomain)
            swaps += 1
            if swaps > limit:
                raise RuntimeError("interchange normalization did not terminate")
            k = max(k - 1, 0)
        else:
            k += 1
    return events


def _components(source, events):
    """Union-find over wire segments.

    Returns ``(snapshots, roots, open_roots)``: ``snapshots[n]`` is the list
    of wire ids just before event ``n`` (one extra entry for the top),
    ``roots`` maps every wire to its component, and ``open_roots`` holds the
    components that reach the boundary.
    """
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def new_wire():
        w = len(parent)
        parent[w] = w
        return w

    wires = [new_wire() for _ in range(source)]
    boundary = set(wires)
    snapshots = []
    for g, off in events:
        snapshots.append(list(wires))
        ins = wires[off:off + g.domain]
        outs = [new_wire() for _ in range(g.codomain)]
        touched = ins + outs
        for w in touched[1:]:
            ra, rb = find(touched[0]), find(w)
            if ra != rb:
                parent[rb] = ra
        wires[off:off + g.domain] = outs
    snapshots.append(list(wires))
    boundary.update(wires)
    open_roots = {find(w) for w in boundary}
    roots = {w: find(w) for w in parent}
    return snapshots, roots, open_roots


def _normal_events(source, events):
    if not events:
        return []
    snapshots, roots, open_roots = _components(source, events)
    scalars = {}
    open_part = []
    for n, (g, off) in enumerate(events):
        before = snapshots[n]
        after = snapshots[n + 1]
        # the wires this event touches decide its component
        touched = before[off:off + g.domain] or after[off:off + g.codomain]
        root = roots[touched[0]]
        if root in open_roots:
            local = sum(1 for w in before[:off] if roots[w] in open_roots)
            open_part.append((g, local))
        else:
            local = sum(1 for w in before[:off] if roots[w] == root)
            scalars.setdefault(root, []).append((g, local))
    closed = sorted(
        (tuple(_canonical_order(evs)) for evs in scalars.values()),
        key=lambda evs: [(g.symbol, o) for g, o in evs],
    )
    out = [e for evs in closed for e in evs]
    return out + _canonical_order(open_part)


def _build_slices(source, events):
    slices = []
    width = source
    for g, off in events:
        rest = width - off - g.domain
        slices.append((Id,) * off + (g,) + (Id,) * rest)
        width += g.codomain - g.domain
    return tuple(slices)


@dataclass(frozen=True)
class TangleWord:
    """A word ``source -> target``; constructing one validates and normalizes it."""

    source: int
    target: int
    slices: tuple = ()

    def __post_init__(self):
        if self.source < 0 or self.target < 0:
            raise ValueError("arities are natural numbers")
        if max(self.source, self.target) > MAX_STRANDS:
            raise ValueError(f"more than {MAX_STRANDS} strands")
        slices = tuple(tuple(s) for s in self.slices)
        for s in slices:
            for g in s:
                if not isinstance(g, Generator):
                    raise TypeError(f"slice factor {g!r} is not a Generator")
        events, width = _split_slices(self.source, slices)
        if width != self.target:
            raise ArityMismatch(width, self.target)
        object.__setattr__(self, "slices", _build_slices(self.source, _normal_events(self.source, events)))

    @classmethod
    def identity(cls, n):
        return cls(n, n, ())

    @classmethod
    def generator(cls, g):
        return cls(g.domain, g.codomain, ((g,),))

    def events(self):
        """``(generator, offset, width_before)`` for each slice, bottom first."""
        out = []
        width = self.source
        for s in self.slices:
            off = 0
            for g in s:
                if g is not Id:
                    out.append((g, off, width))
                    break
                off += 1
            width += slice_codomain(s) - slice_domain(s)
        return out

    @property
    def crossings(self):
        return sum(1 for s in self.slices for g in s if g.is_crossing)

    def is_link(self):
        return self.source == 0 and self.target == 0

    def __matmul__(self, other):
        return tensor(self, other)

    def __rshift__(self, other):
        return compose(self, other)


def validate(source, target, slices):
    """Return the normalized word, raising ArityMismatch if the slices do not fit."""
    return TangleWord(source, target, slices)


def compose(f, g):
    """Run ``f`` then ``g``."""
    if f.target != g.source:
        raise ArityMismatch(f.target, g.source)
    return TangleWord(f.source, g.target, f.slices + g.slices)


def tensor(f, g):
    """Place ``f`` to the left of ``g``; shorter slice lists are padded with identities."""
    n = max(len(f.slices), len(g.slices))
    fs = f.slices + ((Id,) * f.target,) * (n - len(f.slices))
    gs = g.slices + ((Id,) * g.target,) * (n - len(g.slices))
    return TangleWord(f.source + g.source, f.target + g.target,
                      tuple(a + b for a, b in zip(fs, gs)))


def writhe(w):
    """Number of ``x+`` minus number of ``x-``."""
    return sum((g is Xp) - (g is Xm) for s in w.slices for g in s)


def word(*parts, source=None):
    """Compose generators and words left to right.

    >>> word(Cup, Cap).is_link()
    True
    """
    items = [TangleWord.generator(p) if isinstance(p, Generator) else p for p in parts]
    if not items:
        return TangleWord.identity(source or 0)
    out = items[0]
    for w in items[1:]:
        out = compose(out, w)
    return out


def tensor_all(*parts):
    items = [TangleWord.generator(p) if isinstance(p, Generator) else p for p in parts]
    out = TangleWord.identity(0)
    for w in items:
        out = tensor(out, w)
    return out


@dataclass(frozen=True)
class TangleExpr:
    """A Z[A, A^-1]-linear combination of words with common source and target."""

    source: int
    target: int
    terms: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        clean = {}
        for w, c in self.terms.items():
            if (w.source, w.target) != (self.source, self.target):
                raise ArityMismatch((w.source, w.target), (self.source, self.target), "add")
            c = c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c)
            c = clean.get(w, LaurentPoly()) + c
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, w, coeff=ONE):
        return cls(w.source, w.target, {w: coeff})

    def __eq__(self, other):
        if not isinstance(other, TangleExpr):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self.terms == other.terms

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __add__(self, other):
        other = as_expr(other)
        if (self.source, self.target) != (other.source, other.target):
            raise ArityMismatch((self.source, self.target), (other.source, other.target), "add")
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged.get(w, LaurentPoly()) + c
        return TangleExpr(self.source, self.target, merged)

    def __neg__(self):
        return TangleExpr(self.source, self.target, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rmul__(self, c):
        return TangleExpr(self.source, self.target, {w: c * v for w, v in self.terms.items()})

    def compose(self, other):
        other = as_expr(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = compose(w1, w2)
                out[w] = out.get(w, LaurentPoly()) + c1 * c2
        return TangleExpr(self.source, other.target, out)

    def tensor(self, other):
        other = as_expr(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tensor(w1, w2)
                out[w] = out.get(w, LaurentPoly()) + c1 * c2
        return TangleExpr(self.source + other.source, self.target + other.target, out)


def as_expr(x):
    if isinstance(x, TangleExpr):
        return x
    if isinstance(x, TangleWord):
        return TangleExpr.of(x)
    if isinstance(x, Generator):
        return TangleExpr.of(TangleWord.generator(x))
    raise TypeError(f"cannot treat {type(x).__name__} as a tangle expression")
