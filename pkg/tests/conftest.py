import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from fractions import Fraction  # noqa: E402

from spectral_chain.linalg import ExactMatrix  # noqa: E402
from spectral_chain.region import Circle, ClosedDisk, Point, Segment, SpectralRegion  # noqa: E402
from spectral_chain.scalar import ExactScalar  # noqa: E402


def to_exact(mat) -> ExactMatrix:
    return ExactMatrix.from_rows([[ExactScalar(re, im) for re, im in row] for row in mat])


def from_exact(m: ExactMatrix):
    return [[(m[i, j].re, m[i, j].im) for j in range(m.cols)] for i in range(m.rows)]


def scalar(z) -> ExactScalar:
    return ExactScalar(Fraction(z[0]), Fraction(z[1]))


def shape_to_primitive(shape):
    kind = shape[0]
    if kind == "point":
        return Point(scalar(shape[1]))
    if kind == "segment":
        return Segment(scalar(shape[1]), scalar(shape[2]))
    if kind == "circle":
        return Circle(scalar(shape[1]), shape[2])
    return ClosedDisk(scalar(shape[1]), shape[2])


def to_region(shapes) -> SpectralRegion:
    return SpectralRegion.from_primitives([shape_to_primitive(s) for s in shapes])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
