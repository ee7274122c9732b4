import os
import sys

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from skeintl.ring import LaurentPoly
from skeintl.tangle import Cap, Cup, Id, TangleWord, Xm, Xp

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

laurent = st.dictionaries(st.integers(-8, 8), st.integers(-12, 12), max_size=5).map(LaurentPoly)


@st.composite
def words(draw, source=None, max_len=6, max_width=5, crossings=True, target=None):
    """Random valid words; with ``target`` set, caps or cups are appended to reach it."""
    if source is None:
        source = draw(st.integers(0, 3))
    width = source
    slices = []

    def put(g, off):
        nonlocal width
        slices.append((Id,) * off + (g,) + (Id,) * (width - off - g.domain))
        width += g.codomain - g.domain

    for _ in range(draw(st.integers(0, max_len))):
        moves = []
        if width + 2 <= max_width:
            moves.append(Cup)
        if width >= 2:
            moves.append(Cap)
            if crossings:
                moves += [Xp, Xm]
        if not moves:
            break
        g = draw(st.sampled_from(moves))
        put(g, draw(st.integers(0, width - g.domain)))
    if target is not None:
        while width > target:
            put(Cap, draw(st.integers(0, width - 2)))
        while width < target:
            put(Cup, draw(st.integers(0, width)))
    return TangleWord(source, width, tuple(slices))


def links(max_len=10, max_width=6):
    return words(source=0, max_len=max_len, max_width=max_width, target=0)


# acceptance criteria report one line each in the terminal summary
ACCEPTANCE = []


@pytest.fixture
def acceptance_report():
    def record(number, title, ok, detail=""):
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
