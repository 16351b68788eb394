from __future__ import annotations

import pytest

from catpairs.pairs import CatalanPair

# seven-element worked example, elements a..g mapped to 0..6
LETTERS = "abcdefg"
WORKED_S = [("b", "a"), ("f", "e"), ("f", "d"), ("e", "d"), ("g", "d")]
WORKED_R = [
    ("a", "c"), ("a", "d"), ("a", "e"), ("a", "f"), ("a", "g"),
    ("b", "c"), ("b", "d"), ("b", "e"), ("b", "f"), ("b", "g"),
    ("c", "d"), ("c", "e"), ("c", "f"), ("c", "g"), ("e", "g"), ("f", "g"),
]
WORKED_MATCHING = "(1,4),(2,3),(5,6),(7,14),(8,11),(9,10),(12,13)"
WORKED_DYCK = "UUDDUDUUUDDUDD"
WORKED_PARTITION = "{1,3,4}{2}{5,7}{6}"


def _idx(pairs, letters=LETTERS):
    return [(letters.index(x), letters.index(y)) for x, y in pairs]


@pytest.fixture
def worked_pair() -> CatalanPair:
    return CatalanPair.from_pairs(7, _idx(WORKED_S), _idx(WORKED_R))


# acceptance summary ---------------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion."""
    name = request.node.name

    def record(ok: bool, detail: str = "") -> bool:
        ACCEPTANCE[name] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
