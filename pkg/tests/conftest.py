import pytest

from zetagaps import PRESETS, CoeffScheme, FracPoly

HB_FIELDS = ["d1", "d2", "d31", "d32", "n1", "n2", "n31", "n32", "n41", "n42", "n43"]


@pytest.fixture(scope="session")
def rows():
    return PRESETS


@pytest.fixture(scope="session")
def row1():
    return PRESETS[0]


@pytest.fixture(scope="session")
def row2():
    return PRESETS[1]


@pytest.fixture(scope="session")
def row3():
    return PRESETS[2]


@pytest.fixture(scope="session")
def plain_scheme():
    """f1 = 1, no second piece: the simplest nondegenerate scheme."""
    return CoeffScheme(
        r=1.0,
        f1=FracPoly.from_coeffs([1.0]),
        f1t=FracPoly.zero(),
        P=FracPoly.zero(),
    )


@pytest.fixture(scope="session")
def ramp_scheme():
    """f1 = 1 - u, no second piece."""
    return CoeffScheme(
        r=1.0,
        f1=FracPoly.from_coeffs([1.0, -1.0]),
        f1t=FracPoly.zero(),
        P=FracPoly.zero(),
    )
