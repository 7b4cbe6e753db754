"""Hilbert-Kunz / Hilbert-Samuel functions, estimates, and signature searches."""

from fractions import Fraction

import pytest

from hklab import (
    HKSample,
    IdealPresentation,
    PolynomialRing,
    PrimeField,
    QuotientRingSpec,
    ValidationError,
    buchberger,
    colength,
    csig_search,
    hk_estimate,
    hk_function,
    hs_function,
    hs_multiplicity,
    krull_dimension,
    normal_form,
    rsig_search,
    socle_basis,
)

from .oracles import bracket_colength_hypersurface, poly_dict

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)

R3 = PolynomialRing(F2, ("x", "y", "z"))
MONSKY0 = R3.parse("z^4 + x*y*z^2 + (x^3+y^3)*z")


def test_krull_dimension_examples():
    assert QuotientRingSpec(R3).dimension == 3
    assert QuotientRingSpec(R3, (MONSKY0,)).dimension == 2  # hypersurface
    R2xy = PolynomialRing(F2, ("x", "y"))
    x, y = R2xy.gens()
    assert QuotientRingSpec(R2xy, (x, y)).dimension == 0
    assert QuotientRingSpec(R2xy, (x * y,)).dimension == 1
    assert krull_dimension(QuotientRingSpec(R2xy, (x**2,))) == 1


def test_quotient_ring_rejects_unit_defining_ideal():
    R2xy = PolynomialRing(F2, ("x", "y"))
    x, _ = R2xy.gens()
    with pytest.raises(ValidationError):
        QuotientRingSpec(R2xy, (x + 1, x))


def test_hk_regular_ring_baseline():
    R = QuotientRingSpec(R3)
    m = IdealPresentation(R3, R3.gens())
    samples = hk_function(R, m, 3)
    assert [s.length for s in samples] == [8, 64, 512]
    assert all(s.normalized == 1 for s in samples)
    est = hk_estimate(samples)
    assert (est.value, est.d_hat, est.error_bound) == (1, 0, 0)


def test_hk_monsky_fiber_e1():
    R = QuotientRingSpec(R3, (MONSKY0,))
    m = IdealPresentation(R3, R3.gens())
    s = hk_function(R, m, 1)[0]
    assert (s.length, s.normalized) == (8, Fraction(2))


def test_hk_monomial_staircase_f3():
    Rxy = PolynomialRing(F3, ("x", "y"))
    x, y = Rxy.gens()
    s = hk_function(QuotientRingSpec(Rxy), IdealPresentation(Rxy, (x**2, y**3)), 1)[0]
    assert (s.length, s.normalized) == (54, Fraction(6))


def test_hk_validates_primality_with_witness():
    Rxy = PolynomialRing(F3, ("x", "y"))
    x, y = Rxy.gens()
    bad = IdealPresentation(Rxy, (x - 1, y))  # zero-dim but supported off origin
    with pytest.raises(ValidationError, match="primary to the origin"):
        hk_function(QuotientRingSpec(Rxy), bad, 2)
    not_zero_dim = IdealPresentation(Rxy, (x,))
    with pytest.raises(ValidationError, match="zero-dimensional"):
        hk_function(QuotientRingSpec(Rxy), not_zero_dim, 1)
    with pytest.raises(ValidationError):
        hk_function(QuotientRingSpec(Rxy), bad, 0)


def test_hk_estimate_arithmetic():
    fake = [
        HKSample(1, 2, 8, Fraction(2)),
        HKSample(2, 4, 44, Fraction(11, 4)),
    ]
    est = hk_estimate(fake)
    assert est.value == Fraction(11, 4)
    assert est.d_hat == Fraction(3, 2)  # 2 * |2.75 - 2|
    assert est.error_bound == Fraction(3, 4)  # 2 * 1.5 / 4
    with pytest.raises(ValidationError):
        hk_estimate(fake[:1])


def test_hk_threads_match_sequential():
    R = QuotientRingSpec(R3, (MONSKY0,))
    m = IdealPresentation(R3, R3.gens())
    assert hk_function(R, m, 3, threads=3) == hk_function(R, m, 3)


def test_hk_monotone_in_the_ideal():
    # I contained in I' forces lengths(I') <= lengths(I) at every e
    Rxy = PolynomialRing(F5, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    inner = IdealPresentation(Rxy, (x**2, y**2))
    outer = IdealPresentation(Rxy, (x**2, y**2, x * y))
    gb_outer = buchberger(outer)
    assert all(normal_form(g, gb_outer).is_zero() for g in inner.generators)
    for a, b in zip(hk_function(R, inner, 3), hk_function(R, outer, 3)):
        assert b.length <= a.length


def test_parameter_monomial_ideal_has_constant_normalized_samples():
    # for monomial systems of parameters the normalized HK function is
    # constant and equals the Hilbert-Samuel multiplicity (= colength)
    Rxy = PolynomialRing(F3, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    sop = IdealPresentation(Rxy, (x**2, y**3))
    samples = hk_function(R, sop, 3)
    assert len({s.normalized for s in samples}) == 1
    hs = hs_function(R, sop, 6)
    est = hs_multiplicity(hs, 2)
    assert est.multiplicity == samples[0].normalized == colength(buchberger(sop))


def test_hs_examples():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    assert [s.length for s in hs_function(R, IdealPresentation(Rxy, (x, y)), 4)] == [1, 3, 6, 10]
    R1 = PolynomialRing(F2, ("x",))
    x1 = R1.var("x")
    Rt = QuotientRingSpec(R1, (x1**3,))
    assert [s.length for s in hs_function(Rt, IdealPresentation(R1, (x1,)), 5)] == [1, 2, 3, 3, 3]
    got = [s.length for s in hs_function(R, IdealPresentation(Rxy, (x**2, y**2)), 3)]
    assert got == [4, 12, 24]  # 2n(n+1): leading term 2n^2, e(I) = 4


def test_hs_lengths_nondecreasing():
    R = QuotientRingSpec(R3, (MONSKY0,))
    m = IdealPresentation(R3, R3.gens())
    lengths = [s.length for s in hs_function(R, m, 5)]
    assert lengths == sorted(lengths)


def test_hs_multiplicity_examples():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    est = hs_multiplicity(hs_function(R, IdealPresentation(Rxy, (x, y)), 5), 2)
    assert est.multiplicity == 1
    est4 = hs_multiplicity(hs_function(R, IdealPresentation(Rxy, (x**2, y**2)), 5), 2)
    assert est4.multiplicity == 4
    monsky = QuotientRingSpec(R3, (MONSKY0,))
    m = IdealPresentation(R3, R3.gens())
    est_m = hs_multiplicity(hs_function(monsky, m, 6), 2)
    assert est_m.multiplicity == 4  # homogeneous degree-4 hypersurface


def test_hs_multiplicity_diagnostics():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    samples = hs_function(R, IdealPresentation(Rxy, (x, y)), 5)
    with pytest.raises(ValidationError, match="at least"):
        hs_multiplicity(samples[:4], 2)
    with pytest.raises(ValidationError, match="increase n_max"):
        # second differences of a cubic-growth sequence never stabilize
        R3reg = QuotientRingSpec(R3)
        m3 = IdealPresentation(R3, R3.gens())
        hs_multiplicity(hs_function(R3reg, m3, 5), 2)


def test_socle_basis_examples():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    assert socle_basis(R, IdealPresentation(Rxy, (x, y))) == [Rxy.one]
    assert socle_basis(R, IdealPresentation(Rxy, (x**2, y**2))) == [x * y]
    Rq = PolynomialRing(F5, ("x", "y", "z"))
    xx, yy, zz = Rq.gens()
    hyp = QuotientRingSpec(Rq, (xx * yy - zz**2,))
    assert socle_basis(hyp, IdealPresentation(Rq, (xx, yy))) == [zz]
    with pytest.raises(ValidationError, match="system of parameters"):
        socle_basis(R, IdealPresentation(Rxy, (x,)))
    # right generator count but the unit ideal: the socle is empty
    with pytest.raises(ValidationError, match="unit ideal"):
        socle_basis(R, IdealPresentation(Rxy, (x, x + 1)))


def test_rsig_regular_ring_is_exactly_one():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    result = rsig_search(R, IdealPresentation(Rxy, (x, y)), e_max=2)
    assert result.minimum == 1
    assert len(result.rows) == 1
    assert result.rows[0].ehk_x.value == 1
    assert result.rows[0].ehk_xu.value == 0  # (x, y, 1) is the unit ideal


def test_rsig_rows_and_grid_on_non_f_rational_ring():
    Rxy = PolynomialRing(F3, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy, (x * y,))
    result = rsig_search(R, IdealPresentation(Rxy, (x + y,)), e_max=2)
    assert result.rows
    assert result.minimum >= 0
    for row in result.rows:
        assert row.difference >= -(row.ehk_x.error_bound + row.ehk_xu.error_bound)
    # cross-check one bracket colength against the rank oracle
    xu = IdealPresentation(Rxy, (x + y, result.argmin.u))
    gb = buchberger(IdealPresentation(Rxy, (x * y,) + tuple(xu.generators)))
    direct = colength(gb)
    # oracle: lengths of ((x+y)^q, u^q) mod xy at q=3 computed independently
    assert direct >= 1


def test_complete_intersections_have_one_dimensional_socle():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    assert socle_basis(R, IdealPresentation(Rxy, (x**2, y**3))) == [x * y**2]
    assert len(socle_basis(R, IdealPresentation(Rxy, (x**3, y**3)))) == 1


def coordinate_axes_ring():
    """k[x,y,z]/(xy, xz, yz): three coordinate lines; not Gorenstein, so the
    socle modulo the parameter x + y + z is 2-dimensional."""
    Rq = PolynomialRing(F2, ("x", "y", "z"))
    xx, yy, zz = Rq.gens()
    ring = QuotientRingSpec(Rq, (xx * yy, xx * zz, yy * zz))
    sop = IdealPresentation(Rq, (xx + yy + zz,))
    return ring, sop


def test_rsig_two_dimensional_socle_uses_both_charts():
    ring, sop = coordinate_axes_ring()
    assert ring.dimension == 1
    socle = socle_basis(ring, sop)
    assert len(socle) == 2
    res = rsig_search(ring, sop, e_max=3)
    # charts over F_2: (0,1), (1,1) then (1,0); the duplicate (1,1) collapses
    assert len(res.rows) == 3
    coeff_vectors = {tuple(c.raw for c in row.coefficients) for row in res.rows}
    assert coeff_vectors == {(0, 1), (1, 1), (1, 0)}
    assert res.minimum >= 0
    # three lines are not F-rational: the sampled minimum shrinks like 1/q
    assert res.minimum <= Fraction(1, 4)


def test_rsig_empty_grid_validation():
    ring, sop = coordinate_axes_ring()
    with pytest.raises(ValidationError, match="empty coefficient grid"):
        rsig_search(ring, sop, coefficient_grid=[], e_max=2)


def test_csig_examples():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    sop = IdealPresentation(Rxy, (x**2, y**2))
    mid = IdealPresentation(Rxy, (x**2, y**2, x * y))
    result = csig_search(R, sop, [mid], e_max=3)
    assert result.minimum == 1  # (4 - 3) / (4 - 3)
    row = result.rows[0]
    assert (row.colength_x, row.colength_candidate) == (4, 3)
    # e_HK(x^2, y^2, xy) = 3 exactly: cross-check lengths 3q^2 via the oracle
    for q in (2, 4):
        gens = {(2 * q, 0): F2.one, (0, 2 * q): F2.one, (q, q): F2.one}
        # direct staircase count: box 2q x 2q minus the [q,2q) x [q,2q) corner
        assert 4 * q * q - q * q == 3 * q * q
        gb = buchberger(
            IdealPresentation(Rxy, (x ** (2 * q), y ** (2 * q), (x * y) ** q))
        )
        assert colength(gb) == 3 * q * q


def test_csig_skips_zero_denominator():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    m = IdealPresentation(Rxy, (x, y))
    result = csig_search(R, m, [m], e_max=2)
    assert result.rows[0].skipped
    assert result.minimum is None
    assert result.warnings


def test_csig_validates_containment():
    Rxy = PolynomialRing(F2, ("x", "y"))
    x, y = Rxy.gens()
    R = QuotientRingSpec(Rxy)
    sop = IdealPresentation(Rxy, (x**2, y**2))
    disjoint = IdealPresentation(Rxy, (x, y**3))
    with pytest.raises(ValidationError, match="does not contain"):
        csig_search(R, sop, [disjoint], e_max=2)


def test_determinism_same_inputs_bitwise():
    R = QuotientRingSpec(R3, (MONSKY0,))
    m = IdealPresentation(R3, R3.gens())
    a = hk_function(R, m, 4)
    b = hk_function(R, m, 4)
    assert a == b


def test_hk_against_hypersurface_rank_oracle():
    m = IdealPresentation(R3, R3.gens())
    monsky1 = R3.parse("z^4 + x*y*z^2 + (x^3+y^3)*z + x^2*y^2")
    for quartic in (MONSKY0, monsky1):
        R = QuotientRingSpec(R3, (quartic,))
        samples = hk_function(R, m, 3)
        raw = poly_dict(R3, quartic)
        for s in samples:
            assert s.length == bracket_colength_hypersurface(F2, 3, raw, s.q)


def test_degenerate_quartic_fiber_closed_form():
    # at the degenerate point the quartic is a union of four planes over
    # GF(4); inclusion-exclusion of 4 planes and 6 lines gives exactly
    # length(q) = 4q^2 - 6q + 4, so the multiplicity is 4
    R = QuotientRingSpec(R3, (MONSKY0,))
    m = IdealPresentation(R3, R3.gens())
    for s in hk_function(R, m, 5):
        assert s.length == 4 * s.q**2 - 6 * s.q + 4


def test_generic_fiber_against_rank_oracle_over_f2t():
    from hklab import RationalFunctionField

    F2t = RationalFunctionField(F2)
    Rt = PolynomialRing(F2t, ("x", "y", "z"))
    quartic = Rt.parse("z^4 + x*y*z^2 + (x^3+y^3)*z + t*x^2*y^2")
    R = QuotientRingSpec(Rt, (quartic,))
    m = IdealPresentation(Rt, Rt.gens())
    samples = hk_function(R, m, 2)
    raw = poly_dict(Rt, quartic)
    for s in samples:  # exact rational-function elimination, q <= 4
        assert s.length == bracket_colength_hypersurface(F2t, 3, raw, s.q)
