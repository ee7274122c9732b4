"""A small text syntax for tangle words.

    expr   := term (';' term)*          composition, left runs first
    term   := factor ('*' factor)*      tensor, left to right
    factor := 'cup' | 'cap' | 'x+' | 'x-' | 'id(' N ')' | '@' NAME | '(' expr ')'

``;`` binds looser than ``*``.  Named references expand to built-in words
(see :mod:`skeintl.links`).  Arity errors are reported while lowering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityMismatch, DSLSyntaxError
from .tangle import Cap, Cup, Generator, Id, TangleWord, Xm, Xp, compose, tensor

_TOKEN = re.compile(r"\s*(?:(x[+-])|(cup|cap)|(id)\s*\(\s*(\d+)\s*\)|@([A-Za-z_][A-Za-z0-9_]*)|([;*()]))")

_LITERALS = {"cup": Cup, "cap": Cap, "x+": Xp, "x-": Xm}


@dataclass(frozen=True)
class Literal:
    generator: Generator
    pos: int


@dataclass(frozen=True)
class Identity:
    n: int
    pos: int


@dataclass(frozen=True)
class Ref:
    name: str
    pos: int


@dataclass(frozen=True)
class Compose:
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Tensor:
    left: object
    right: object
    pos: int


def tokenize(text):
    """List of ``(kind, value, pos)``; kind is 'gen', 'id', 'ref' or the punctuation itself."""
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise DSLSyntaxError(f"unexpected character {text[start]!r}", text, start)
        start = m.end() - len(m.group(0).lstrip())
        if m.group(1) or m.group(2):
            out.append(("gen", m.group(1) or m.group(2), start))
        elif m.group(3):
            out.append(("id", int(m.group(4)), start))
        elif m.group(5):
            out.append(("ref", m.group(5), start))
        else:
            out.append((m.group(6), m.group(6), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, message, tok):
        raise DSLSyntaxError(message, self.text, tok[2])

    def expr(self):
        node = self.term()
        while self.peek()[0] == ";":
            tok = self.take()
            node = Compose(node, self.term(), tok[2])
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            tok = self.take()
            node = Tensor(node, self.factor(), tok[2])
        return node

    def factor(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "gen":
            return Literal(_LITERALS[value], pos)
        if kind == "id":
            return Identity(value, pos)
        if kind == "ref":
            return Ref(value, pos)
        if kind == "(":
            node = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'", self.peek())
            self.take()
            return node
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {value!r}", tok)


def parse(text):
    """Parse DSL text into an AST; raises DSLSyntaxError with line and column."""
    p = _Parser(text)
    if p.peek()[0] == "end":
        p.fail("empty expression", p.peek())
    node = p.expr()
    if p.peek()[0] != "end":
        p.fail(f"unexpected {p.peek()[1]!r}", p.peek())
    return node


def lower(node, refs=None, text=""):
    """Turn an AST into a TangleWord; ``;`` with mismatched arities raises ArityMismatch."""
    if refs is None:
        from .links import BUILTINS
        refs = BUILTINS
    if isinstance(node, Literal):
        return TangleWord.generator(node.generator)
    if isinstance(node, Identity):
        return TangleWord.identity(node.n)
    if isinstance(node, Ref):
        if node.name not in refs:
            raise DSLSyntaxError(f"unknown reference @{node.name}", text, node.pos)
        return lower(parse(refs[node.name]), refs)
    if isinstance(node, Tensor):
        return tensor(lower(node.left, refs, text), lower(node.right, refs, text))
    if isinstance(node, Compose):
        left, right = lower(node.left, refs, text), lower(node.right, refs, text)
        if left.target != right.source:
            raise ArityMismatch(left.target, right.source)
        return compose(left, right)
    raise TypeError(f"not a tangle AST node: {node!r}")


def parse_word(text, refs=None):
    return lower(parse(text), refs, text)


def _slice_text(s):
    parts = []
    run = 0
    for g in s:
        if g is Id:
            run += 1
            continue
        if run:
            parts.append(f"id({run})")
            run = 0
        parts.append(g.symbol)
    if run:
        parts.append(f"id({run})")
    return parts


def to_dsl(w):
    """DSL text for a word; ``parse_word(to_dsl(w)) == w``."""
    if not w.slices:
        return f"id({w.source})"
    out = []
    for s in w.slices:
        parts = _slice_text(s)
        out.append(parts[0] if len(parts) == 1 else "(" + " * ".join(parts) + ")")
    return " ; ".join(out)
