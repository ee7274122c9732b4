"""Built-in link words, the defining relations, and a seeded random link corpus."""

from __future__ import annotations

import random

from .tangle import Cap, Cup, Id, TangleWord, Xm, Xp

# trace closures: strands 0,1 carry the braid, strands 2,3 return on the right
_OPEN = "cup ; (id(1) * cup * id(1))"
_CLOSE = "(id(1) * cap * id(1)) ; cap"

BUILTINS = {
    "unknot": "cup ; cap",
    "e": "cap ; cup",
    "hopf": f"{_OPEN} ; (x+ * id(2)) ; (x+ * id(2)) ; {_CLOSE}",
    "trefoil": f"{_OPEN} ; (x+ * id(2)) ; (x+ * id(2)) ; (x+ * id(2)) ; {_CLOSE}",
}


def closure_text(crossings):
    """DSL for the trace closure of a 2-strand braid given as ``"+"``/``"-"`` signs."""
    body = " ; ".join(f"(x{s} * id(2))" for s in crossings)
    return f"{_OPEN} ; {body} ; {_CLOSE}" if body else f"{_OPEN} ; {_CLOSE}"


def mirror_text(text):
    """Swap ``x+`` and ``x-``."""
    return text.replace("x+", "x#").replace("x-", "x+").replace("x#", "x-")


# (name, left, right): each pair must agree in the quotient
RELATIONS = [
    ("T0 left zigzag", "(cup * id(1)) ; (id(1) * cap)", "id(1)"),
    ("T0 right zigzag", "(id(1) * cup) ; (cap * id(1))", "id(1)"),
    ("T0' x+ left, x- right", "(id(1) * cup) ; (x+ * id(1))", "(cup * id(1)) ; (id(1) * x-)"),
    ("T0' x- left, x+ right", "(id(1) * cup) ; (x- * id(1))", "(cup * id(1)) ; (id(1) * x+)"),
    ("T1'", "(cup * cup) ; (x+ * x-) ; (id(1) * cap * id(1))", "cup"),
    ("T2 x+ then x-", "x+ ; x-", "id(2)"),
    ("T2 x- then x+", "x- ; x+", "id(2)"),
    ("T3 braid", "(x+ * id(1)) ; (id(1) * x+) ; (x+ * id(1))",
     "(id(1) * x+) ; (x+ * id(1)) ; (id(1) * x+)"),
]


def relation_suite(ctx=None):
    """``[(name, holds)]`` for every defining relation under skein normalization."""
    from .dsl import parse_word
    from .skein import SYMBOLIC, quotient_equal

    ctx = ctx or SYMBOLIC
    return [(name, quotient_equal(parse_word(lhs), parse_word(rhs), ctx))
            for name, lhs, rhs in RELATIONS]


def random_link(rng, max_crossings=8, max_width=6, steps=None):
    """A random 0 -> 0 word built from cups, caps and crossings."""
    steps = steps if steps is not None else rng.randint(1, 14)
    slices = []
    width = 0
    crossings = 0

    def put(g, off):
        nonlocal width
        slices.append((Id,) * off + (g,) + (Id,) * (width - off - g.domain))
        width += g.codomain - g.domain

    for _ in range(steps):
        moves = []
        if width + 2 <= max_width:
            moves.append(Cup)
        if width >= 2:
            moves.append(Cap)
            if crossings < max_crossings:
                moves += [Xp, Xm, Xp, Xm]
        g = rng.choice(moves)
        put(g, rng.randint(0, width - g.domain))
        crossings += g.is_crossing
    while width:
        put(Cap, rng.randint(0, width - 2))
    return TangleWord(0, 0, tuple(slices))


def link_corpus(n=200, seed=0, max_crossings=8):
    """``n`` seeded random links, plus the built-in closures, each with at most ``max_crossings``."""
    from .dsl import parse_word

    rng = random.Random(seed)
    out = [parse_word(BUILTINS[k]) for k in ("unknot", "hopf", "trefoil")]
    out.append(parse_word(mirror_text(BUILTINS["trefoil"])))
    while len(out) < n:
        out.append(random_link(rng, max_crossings))
    return out
