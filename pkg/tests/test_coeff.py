"""Field arithmetic: laws, Frobenius, canonical forms, construction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hklab import (
    ExtensionField,
    PrimeField,
    RationalFunctionField,
    StructuralError,
    ValidationError,
    field_from_config,
    frobenius,
    make_extension,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
GF4 = make_extension(2, 2)
GF9 = make_extension(3, 2)
F2T = RationalFunctionField(PrimeField(2))
F3T = RationalFunctionField(PrimeField(3))
GF4T = RationalFunctionField(GF4)

ALL_FIELDS = [F2, F5, GF4, GF9, F2T, F3T, GF4T]


def element_strategy(field):
    if field.size is not None:
        pool = [field.element(raw) for raw in field.elements()]
        return st.sampled_from(pool)
    # rational functions: quotient of small random polynomials
    base_size = field.base.size
    base_pool = list(field.base.elements())
    coeff = st.integers(0, base_size - 1)
    polys = st.lists(coeff, min_size=1, max_size=4)
    binary = field.base.kind == "prime" and field.base.p == 2

    def build(num, den):
        ops = field._ops
        if binary:
            n, d = ops.from_coeffs([c % 2 for c in num]), ops.from_coeffs([c % 2 for c in den])
        else:
            n = ops.from_coeffs([base_pool[c] for c in num])
            d = ops.from_coeffs([base_pool[c] for c in den])
        if ops.is_zero(d):
            d = ops.one
        return field.element(field._canon(n, d))

    return st.builds(build, polys, polys)


@pytest.mark.parametrize("field", ALL_FIELDS, ids=repr)
def test_field_laws(field):
    @settings(max_examples=60, deadline=None)
    @given(element_strategy(field), element_strategy(field), element_strategy(field))
    def run(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + field(0) == a
        assert a * field(1) == a
        assert a - a == field(0)
        if a != field(0):
            assert a * a.inverse() == field(1)

    run()


@pytest.mark.parametrize("field", ALL_FIELDS, ids=repr)
def test_frobenius_additive(field):
    @settings(max_examples=40, deadline=None)
    @given(element_strategy(field), element_strategy(field), st.integers(0, 3))
    def run(a, b, e):
        assert frobenius(a + b, e) == frobenius(a, e) + frobenius(b, e)
        assert frobenius(a * b, e) == frobenius(a, e) * frobenius(b, e)

    run()


@pytest.mark.parametrize("field", ALL_FIELDS, ids=repr)
def test_frobenius_fixes_prime_subfield(field):
    for n in range(field.characteristic):
        a = field(n)
        for e in range(4):
            assert frobenius(a, e) == a


def test_frobenius_examples():
    s = GF4.element((0, 1))
    assert frobenius(s, 1) == s * s  # s^2 = s + 1 under the canonical modulus
    assert frobenius(s, 1) == GF4.element((1, 1))
    assert frobenius(F5(3), 7) == F5(3)
    t = F2T.parse("t")
    assert frobenius(t + 1, 2) == F2T.parse("t^4 + 1")


def test_inversion_examples():
    assert F5(2).inverse() == F5(3)
    t1 = F3T.parse("t + 1")
    assert t1 * t1.inverse() == F3T(1)
    with pytest.raises(ZeroDivisionError):
        F5(0).inverse()
    with pytest.raises(ZeroDivisionError):
        F2T(0).inverse()


def test_canonical_form_idempotent():
    # re-normalizing a rational function changes nothing
    a = F3T.parse("(t^2 + 2*t + 1)")
    b = F3T.parse("t + 1")
    q = a / b
    num, den = q.raw
    assert F3T._canon(num, den) == q.raw
    assert q == b  # (t+1)^2/(t+1) reduces
    # denominators are monic
    c = F3T.parse("1") / F3T.parse("2*t + 1")
    assert c.raw[1][-1] == 1


def test_make_extension_examples():
    assert make_extension(2, 1).kind == "prime"
    assert GF4.modulus == (1, 1, 1)  # s^2 + s + 1
    assert GF9.modulus == (1, 0, 1)  # s^2 + 1, found by lexicographic scan
    again = make_extension(2, 2)
    assert again == GF4


def test_extension_modulus_validation():
    with pytest.raises(ValidationError):
        ExtensionField(2, (1, 0, 1))  # x^2 + 1 = (x+1)^2 over F_2
    with pytest.raises(ValidationError):
        ExtensionField(2, (1, 1))  # degree too small
    ExtensionField(2, (1, 1, 0, 0, 1))  # x^4 + x + 1 is irreducible


def test_characteristic_validation():
    with pytest.raises(ValidationError):
        PrimeField(6)
    with pytest.raises(ValidationError):
        PrimeField(1)
    with pytest.raises(ValidationError):
        PrimeField(2**31 + 11)
    with pytest.raises(ValidationError):
        make_extension(4, 2)


def test_descriptor_mismatch_is_structural():
    with pytest.raises(StructuralError):
        F2(1) + F3(1)
    with pytest.raises(StructuralError):
        GF4(1) * F2(1)


def test_field_config_round_trip():
    for field in [F2, GF4, F2T, RationalFunctionField(GF4, "t")]:
        rebuilt = field_from_config(field.to_config())
        assert rebuilt == field
    assert field_from_config({"kind": "prime", "p": 7}) == PrimeField(7)
    with pytest.raises(ValidationError):
        field_from_config({"kind": "octonion"})
    with pytest.raises(ValidationError):
        field_from_config({})


def test_element_parsing():
    assert GF4.parse("s^2") == GF4.element((1, 1))
    assert F2T.parse("(t+1)*(t+1)") == F2T.parse("t^2 + 1")
    assert F5.parse("-1") == F5(4)
    with pytest.raises(ValidationError):
        F5.parse("w + 1")
    with pytest.raises(ValidationError):
        F2T.parse("t +")


def test_extension_field_enumeration_is_deterministic():
    els = list(GF4.elements())
    assert els == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert len(set(list(GF9.elements()))) == 9


def test_rational_functions_over_an_extension_base():
    t = GF4T.parse("t")
    s = GF4T.parse("s")
    u = (t + s) * (t + s)
    assert u == GF4T.parse("t^2 + s^2")  # freshman's dream with s^2 = s + 1
    assert u == GF4T.parse("t^2 + s + 1")
    assert (t + s).inverse() * (t + s) == GF4T(1)
    assert frobenius(t + s, 1) == u


def test_field_elements_are_immutable():
    a = F5(2)
    with pytest.raises(AttributeError):
        a.raw = 3
