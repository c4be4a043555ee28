import numpy as np
import pytest

from trianglecf.checks import SHAPE_SIDES, random_triangles
from trianglecf.geometry import derive_metrics

SHAPES = {k: derive_metrics(v) for k, v in SHAPE_SIDES.items()}


@pytest.fixture(params=sorted(SHAPES), ids=lambda k: f"case{k}")
def shape_tri(request):
    return SHAPES[request.param]


@pytest.fixture(scope="session")
def random100():
    return random_triangles(100, seed=42)


def mid_interval_radii(cf, per_gap=3, margin=0.1):
    """Radii well inside each non-degenerate gap of the ladder."""
    out = []
    for lo, hi in cf.ladder.gaps():
        w = hi - lo
        if w < 1e-3 * cf.metrics.c:
            continue
        out += list(lo + w * np.linspace(margin, 1 - margin, per_gap))
    return out


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
