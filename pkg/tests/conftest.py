import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cyclemap.filtration import build_complex, lower_star_filtration
from cyclemap.ingest import ScalarGrid

# canonical 3x3 ring grid: outer ring low, center high; one dim-1 pair (0.2, 0.9)
RING_VALUES = [0.2, 0.1, 0.2, 0.1, 0.9, 0.1, 0.2, 0.1, 0.2]


@pytest.fixture
def ring_grid():
    return ScalarGrid(width=3, height=3, values=np.array(RING_VALUES))


@pytest.fixture
def ring_filtration(ring_grid):
    return lower_star_filtration(build_complex(3, 3), ring_grid)


def random_grid(rng, width, height, levels=11):
    """Grid with values drawn from {0, 0.1, ..., 1.0}."""
    vals = rng.integers(0, levels, size=width * height) / (levels - 1)
    return ScalarGrid(width=width, height=height, values=vals)


# one pass/fail line per acceptance criterion at the end of the run

def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in name:
                label = name.split("::test_criterion_")[1]
                verdict = "PASS" if status == "passed" else "FAIL"
                lines.append((label, verdict))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for label, verdict in sorted(lines):
            terminalreporter.write_line(f"criterion {label}: {verdict}")
