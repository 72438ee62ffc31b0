"""Field arithmetic: axioms, parsing, embeddings, quadratic roots."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leonard import (
    FieldSpec,
    NeedsFieldExtension,
    NonPrimeModulus,
    ReducibleModulus,
    ZeroToNegativePower,
    embed_map,
    extension_field,
    make_field,
    prime_field,
    quadratic_roots,
    rational_field,
    splitting_field,
)

Q = rational_field()
F7 = prime_field(7)
F4 = extension_field(2, 2, (1, 1, 1))
F8 = extension_field(2, 3, (1, 1, 0, 1))


def all_fields():
    return [Q, F7, F4, F8]


@given(st.fractions(), st.fractions(), st.fractions())
def test_rational_ring_axioms(x, y, z):
    a, b, c = (Q.parse(str(v)) for v in (x, y, z))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(st.integers(), st.integers())
def test_prime_field_matches_int_mod(m, n):
    a, b = F7.from_int(m), F7.from_int(n)
    assert a + b == F7.from_int(m + n)
    assert a * b == F7.from_int(m * n)
    assert -a == F7.from_int(-m)


def test_field_axioms_random_elements():
    rng = random.Random(20240811)
    for field in all_fields():
        for _ in range(40):
            a = field.random_element(rng)
            b = field.random_element(rng)
            c = field.random_element(rng, nonzero=True)
            assert a + field.zero() == a
            assert a * field.one() == a
            assert a - a == field.zero()
            assert c * c.inverse() == field.one()
            assert (a + b) * c == a * c + b * c
            assert (a / c) * c == a
            assert a**3 == a * a * a
            assert c**-2 == (c.inverse()) ** 2


def test_int_coercion_both_sides():
    a = F7.from_int(3)
    assert a + 1 == 4 % 7 == (1 + a).value
    assert 2 - a == F7.from_int(-1)
    assert 2 * a == F7.from_int(6)
    assert 6 / a == F7.from_int(2)
    assert a == 3 and 3 == a


def test_zero_inverse_raises():
    for field in all_fields():
        with pytest.raises(ZeroToNegativePower):
            field.zero() ** -1
        with pytest.raises(ZeroDivisionError):
            field.one() / field.zero()


def test_characteristic_and_order():
    assert Q.characteristic() == 0 and not Q.is_finite()
    assert F7.characteristic() == 7 and F7.order() == 7
    assert F4.characteristic() == 2 and F4.order() == 4
    assert F8.order() == 8


def test_frobenius_is_additive():
    # x -> x^p fixes GF(p) and respects sums
    p = F8.characteristic()
    elems = list(F8.elements())
    for a in elems:
        for b in elems[:4]:
            assert (a + b) ** p == a**p + b**p


def test_extension_modulus_root_vanishes():
    w = F4.generator()
    assert w * w + w + F4.one() == F4.zero()
    v = F8.generator()
    assert v**3 + v + F8.one() == F8.zero()


def test_elements_enumeration_unique():
    seen = list(F8.elements())
    assert len(seen) == 8
    assert len(set(seen)) == 8
    for i, a in enumerate(seen):
        assert F8.element(i) == a
        assert F8.index_of(a) == i


def test_parse_format_round_trip():
    rng = random.Random(5)
    for field in all_fields():
        for _ in range(30):
            a = field.random_element(rng)
            assert field.parse(field.format(a)) == a


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Q.parse("1.5")
    with pytest.raises(ValueError):
        F7.parse("2/3")
    with pytest.raises(ValueError):
        F4.parse("w")
    with pytest.raises(ValueError):
        F4.parse("1+1*w+1*w^2")


def test_nonprime_modulus_rejected():
    with pytest.raises(NonPrimeModulus):
        prime_field(10)
    with pytest.raises(NonPrimeModulus):
        extension_field(4, 2, (1, 1, 1))


def test_reducible_modulus_rejected():
    # x^2 + 1 = (x + 1)^2 over GF(2)
    with pytest.raises(ReducibleModulus):
        extension_field(2, 2, (1, 0, 1))


def test_field_spec_round_trip():
    for field in all_fields():
        spec = FieldSpec.from_json(field.spec.to_json())
        assert make_field(spec) is make_field(field.spec)


def test_embed_prime_into_extension():
    f2 = prime_field(2)
    emb = embed_map(f2, F4)
    assert emb(f2.one()) == F4.one()
    assert emb(f2.zero()) == F4.zero()
    emb7 = embed_map(Q, Q)
    assert emb7(Q.from_int(5)) == Q.from_int(5)
    with pytest.raises(ValueError):
        embed_map(F7, F4)


def test_quadratic_roots_rational():
    # x^2 - 3x + 2 = (x - 1)(x - 2); larger root listed first
    roots = quadratic_roots(Q, Q.from_int(-3), Q.from_int(2))
    assert [Q.format(r) for r in roots] == ["2", "1"]
    assert quadratic_roots(Q, Q.from_int(0), Q.from_int(1)) is None
    double = quadratic_roots(Q, Q.from_int(-2), Q.from_int(1))
    assert double == (Q.one(), Q.one())


def test_quadratic_roots_finite():
    # x^2 - 1 over GF(7)
    roots = quadratic_roots(F7, F7.zero(), F7.from_int(-1))
    assert roots is not None and set(roots) == {F7.from_int(1), F7.from_int(6)}
    # x^2 + x + 1 is irreducible over GF(2) and GF(5)
    f5 = prime_field(5)
    assert quadratic_roots(f5, f5.one(), f5.one()) is None


def test_splitting_field_over_prime():
    f5 = prime_field(5)
    ext, lift, (r1, r2) = splitting_field(f5, f5.one(), f5.one())
    assert ext.order() == 25
    one = ext.one()
    for r in (r1, r2):
        assert r * r + r + one == ext.zero()
    assert lift(f5.from_int(3)) == ext.from_int(3)
    # roots already present: the field comes back unchanged
    same, lift2, roots = splitting_field(f5, f5.zero(), f5.from_int(-1))
    assert same is f5 and set(roots) == {f5.from_int(1), f5.from_int(4)}


def test_splitting_field_over_q_raises():
    with pytest.raises(NeedsFieldExtension) as e:
        splitting_field(Q, Q.zero(), Q.from_int(-2))
    assert e.value.b == Q.zero() and e.value.c == Q.from_int(-2)


def test_splitting_field_degree_cap():
    f3 = prime_field(3)
    big = splitting_field(f3, f3.zero(), f3.one())[0]
    assert big.order() == 9
    # splitting an irreducible quadratic over GF(2^8) would need degree 16
    deep = extension_field(2, 8, (1, 0, 1, 1, 1, 0, 0, 0, 1))
    c = next(x for x in deep.elements()
             if quadratic_roots(deep, deep.one(), x) is None)
    with pytest.raises(NeedsFieldExtension):
        splitting_field(deep, deep.one(), c)
