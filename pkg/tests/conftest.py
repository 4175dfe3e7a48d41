import numpy as np
import pytest

from sciswarm.core import LabState

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


class ForcedDraws:
    """Stand-in generator whose uniform draws are a fixed value."""

    def __init__(self, value=1.0):
        self.value = value

    def random(self, size=None):
        if size is None:
            return self.value
        return np.full(size, self.value)


@pytest.fixture
def forced_ones():
    return ForcedDraws(1.0)


def make_lab(lab_id=0, position=(0.0, 0.0), velocity=None, pbest=None, budget=3, **kw):
    pos = np.array(position, dtype=float)
    return LabState(
        lab_id=lab_id,
        position=pos,
        velocity=np.zeros_like(pos) if velocity is None else np.array(velocity, dtype=float),
        pbest_position=pos.copy() if pbest is None else np.array(pbest, dtype=float),
        budget=budget,
        **kw,
    )


@pytest.fixture
def acceptance_report():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: int(k.split()[1])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
