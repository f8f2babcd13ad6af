import os
import sys
import time

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from freicat.addset import AdditiveSet
from freicat.fgab import FgaGroup, Z, cyclic
from freicat.freiman import FreimanMap

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_GROUPS = [Z, cyclic(2), cyclic(3), cyclic(4), cyclic(5), cyclic(6), FgaGroup(1, (2,)), FgaGroup(0, (2, 4))]


def element_coords(g: FgaGroup, lo: int = -4, hi: int = 6):
    return st.tuples(*[st.integers(lo, hi) if d == 0 else st.integers(0, d - 1) for d in g.moduli])


@st.composite
def additive_sets(draw, groups=SMALL_GROUPS, min_size=1, max_size=5, normalized=None):
    g = draw(st.sampled_from(groups))
    coords = draw(st.lists(element_coords(g), min_size=min_size, max_size=max_size))
    if normalized is None:
        normalized = draw(st.booleans())
    if normalized or not coords:
        coords.append(tuple([0] * g.ngens))
    return AdditiveSet(g, [g(c) for c in coords])


@st.composite
def set_pairs_same_ambient(draw, max_size=4):
    g = draw(st.sampled_from(SMALL_GROUPS))
    a = draw(additive_sets(groups=[g], max_size=max_size))
    b = draw(additive_sets(groups=[g], max_size=max_size))
    return a, b


@st.composite
def arbitrary_maps(draw, k=2, max_size=4):
    a = draw(additive_sets(max_size=max_size))
    b = draw(additive_sets(max_size=max_size))
    images = [draw(st.sampled_from(b.elements)) for _ in a]
    return FreimanMap(a, b, images, k)


@pytest.fixture
def zset():
    def make(*xs):
        return AdditiveSet(Z, xs)

    return make


# acceptance criteria report: one line per criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


class CriterionRecord:
    def __init__(self, label: str, limit: float):
        self.label = label
        self.limit = limit
        self.detail = ""
        self.start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def within_limit(self) -> bool:
        return self.elapsed < self.limit


@pytest.fixture
def criterion(request):
    """Records a pass/fail line for the acceptance summary.

    Label and runtime limit come from the ``acceptance`` marker; parametrized
    tests may refine ``rec.label``, and ``rec.detail`` is appended verbatim.
    """
    marker = request.node.get_closest_marker("acceptance")
    label, limit = marker.args
    rec = CriterionRecord(label, limit)
    yield rec
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    status = "PASS" if ok else "FAIL"
    detail = f"  {rec.detail}" if rec.detail else ""
    ACCEPTANCE_LINES.append(f"[{status}] {rec.label} ({rec.elapsed:.2f}s, limit {limit:g}s){detail}")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label, limit): acceptance criterion with a runtime limit in seconds")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
