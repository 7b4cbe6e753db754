import pytest

from hklab import (
    FamilySpec,
    IdealPresentation,
    PolynomialRing,
    PrimeField,
    QuotientRingSpec,
)

MONSKY_QUARTIC = "z^4 + x*y*z^2 + (x^3+y^3)*z + t*x^2*y^2"


@pytest.fixture(scope="session")
def monsky_family() -> FamilySpec:
    return FamilySpec(
        "param",
        ("x", "y", "z"),
        (MONSKY_QUARTIC,),
        ("x", "y", "z"),
        p=2,
        parameters=("t",),
    )


@pytest.fixture(scope="session")
def monsky_z_family() -> FamilySpec:
    return FamilySpec(
        "integers",
        ("x", "y", "z"),
        ("z^4 + x*y*z^2 + (x^3+y^3)*z + x^2*y^2",),
        ("x", "y", "z"),
    )


@pytest.fixture(scope="session")
def f2_plane():
    """F_2[x, y] with its maximal ideal pieces, used all over."""
    ring = PolynomialRing(PrimeField(2), ("x", "y"))
    x, y = ring.gens()
    return ring, x, y


@pytest.fixture(scope="session")
def regular_plane(f2_plane):
    ring, x, y = f2_plane
    return QuotientRingSpec(ring), IdealPresentation(ring, (x, y))
