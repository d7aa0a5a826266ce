from pathlib import Path

import pytest

from gcontact import I, GenSection, MixedPair, Vector, blade, eps
from gcontact.frame import FrameAlgebra, coordinate_frame, parse_nil

DATA = Path(__file__).resolve().parent.parent / "src" / "gcontact" / "data"


def exp_pair(n, theta, eta, R):
    """(e^{i theta}, eta ^ e^{i theta}) with e1 = (0, eta), e2 = (R, 0)."""
    phi = theta.scale(I).exp()
    return MixedPair(phi, eta.wedge(phi), GenSection.form(eta), GenSection.vector(R))


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def flat5():
    return FrameAlgebra(5, "invariant")


@pytest.fixture
def heisenberg():
    return parse_nil("(0,0,12)")


@pytest.fixture
def cosymplectic_pair():
    n = 5
    return exp_pair(n, blade(n, (1, 2)) + blade(n, (3, 4)), eps(n, 5), Vector.basis(n, 5))


@pytest.fixture
def contact_pair():
    return exp_pair(3, blade(3, (1, 2)), eps(3, 3), Vector.basis(3, 3))


@pytest.fixture(params=["coordinate", "heisenberg"])
def frame3(request):
    return coordinate_frame(3) if request.param == "coordinate" else parse_nil("(0,0,12)")


# -- acceptance verdict lines ---------------------------------------------------------


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def verdict(request):
    """Print and record one PASS/FAIL line, then assert on it."""

    def emit(number, title, ok, detail):
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
        print(line)
        request.config.acceptance_lines.append(line)
        assert ok, line

    return emit


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
