import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modwitt.errors import NotInvertible, NotPNilpotent, RingSpecError
from modwitt.scalars import (
    ExtField, PrimeField, RatFuncField, TestRing, dp_power_coefficient, lucas_binomial,
    make_test_ring, parse_ring_spec, validate_witt_kernel_point,
)


def dp_coefficient_oracle(r, a, p):
    # big-integer path, used only here
    v = Fraction(math.factorial(r * a), math.factorial(r) * math.factorial(a) ** r)
    assert v.denominator == 1
    return v.numerator % p


def ext_mul_oracle(F, x, y):
    # schoolbook polynomial product reduced by the defining modulus
    p, k = F.p, F.k
    a, b = F.to_digits(x), F.to_digits(y)
    prod = [0] * (2 * k - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            prod[i + j] = (prod[i + j] + u * v) % p
    mod = F.modulus
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i, mc in enumerate(mod):
                prod[d - k + i] = (prod[d - k + i] - c * mc) % p
    return F.from_digits(tuple(prod[:k]))


class TestLucas:
    def test_examples(self):
        assert lucas_binomial(7, 3, 5) == 0
        assert lucas_binomial(10, 5, 5) == 2
        assert all(lucas_binomial(a, 0, 7) == 1 for a in range(40))

    def test_rejects_b_above_a(self):
        with pytest.raises(ValueError):
            lucas_binomial(3, 4, 5)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_matches_big_integer_binomial(self, p):
        for a in range(201):
            for b in range(a + 1):
                assert lucas_binomial(a, b, p) == math.comb(a, b) % p


class TestDividedPowerCoefficient:
    def test_examples(self):
        assert dp_power_coefficient(2, 5, 5) == 1
        assert dp_power_coefficient(3, 1, 5) == 1
        assert all(dp_power_coefficient(1, a, 5) == 1 for a in range(30))

    @pytest.mark.parametrize("p", [5, 7])
    def test_congruence_at_prime_powers(self, p):
        for i in range(3):
            for j in range(5):
                assert dp_power_coefficient(j, p**i, p) == 1

    @given(st.integers(0, 9), st.integers(1, 30), st.sampled_from([2, 3, 5, 7]))
    def test_matches_factorial_oracle(self, r, a, p):
        assert dp_power_coefficient(r, a, p) == dp_coefficient_oracle(r, a, p)


RINGS = [
    PrimeField(5), PrimeField(7), ExtField(5, 2), ExtField(7, 2), ExtField(5, 3),
    RatFuncField(PrimeField(5)), TestRing(PrimeField(5), 1), TestRing(PrimeField(5), 2),
    TestRing(ExtField(5, 2), 1),
]


@pytest.mark.parametrize("R", RINGS, ids=lambda R: R.spec)
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_ring_axioms(R, seed):
    import random
    rng = random.Random(seed)
    a, b, c = (R.random(rng) for _ in range(3))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(a, b) == R.mul(b, a)
    assert R.add(a, R.neg(a)) == R.zero
    assert R.mul(a, R.one) == a
    if R.is_unit(a):
        assert R.mul(a, R.inv(a)) == R.one
    elif R.is_field:
        assert R.is_zero(a)


@pytest.mark.parametrize("F", [ExtField(5, 2), ExtField(3, 3), ExtField(7, 2)], ids=lambda F: F.spec)
def test_extension_multiplication_matches_polynomial_oracle(F):
    for x in range(F.order):
        for y in range(0, F.order, 3):
            assert F.mul(x, y) == ext_mul_oracle(F, x, y)


def test_extension_field_is_a_field():
    F = ExtField(5, 2)
    assert F.order == 25
    units = [x for x in F.elements() if x != F.zero]
    assert all(F.mul(x, F.inv(x)) == F.one for x in units)
    # the Frobenius is additive and its fixed points are the prime field
    fixed = [x for x in F.elements() if F.pow(x, 5) == x]
    assert sorted(fixed) == list(range(5))


class TestTestRing:
    def test_nilpotent_relation(self):
        R = make_test_ring(PrimeField(5), 1)
        e = R.eps(1)
        assert not R.is_zero(R.pow(e, 4))
        assert R.is_zero(R.pow(e, 5))

    def test_geometric_series_inverse(self):
        R = make_test_ring(PrimeField(5), 1)
        e = R.eps(1)
        expected = R.zero
        for k in range(5):
            expected = R.add(expected, R.mul(R.from_int((-1) ** k), R.pow(e, k)))
        assert R.inv(R.add(R.one, e)) == expected

    def test_zero_generators_is_the_base(self):
        F = PrimeField(5)
        assert make_test_ring(F, 0) is F
        with pytest.raises(ValueError):
            make_test_ring(F, -1)

    def test_units_are_exactly_nonzero_constant_term(self):
        R = TestRing(PrimeField(5), 1)
        for code in range(0, 5**5, 7):
            digits = [(code // 5**i) % 5 for i in range(5)]
            a = R.from_digits(tuple(digits))
            assert R.is_unit(a) == (digits[0] != 0)
            if R.is_unit(a):
                assert R.mul(a, R.inv(a)) == R.one
            else:
                with pytest.raises(NotInvertible):
                    R.inv(a)

    def test_mixed_generators(self):
        R = TestRing(PrimeField(5), 2)
        e1, e2 = R.eps(1), R.eps(2)
        assert not R.is_zero(R.mul(R.pow(e1, 4), R.pow(e2, 4)))
        assert R.is_zero(R.pow(R.add(e1, e2), 5))
        with pytest.raises(IndexError):
            R.eps(3)


class TestRationalFunctions:
    def test_normal_form_has_monic_denominator(self):
        K = RatFuncField(PrimeField(5))
        # (1 + t) / (2 + 2t) = 1/2 = 3
        assert K.make((1, 1), (2, 2)) == K.make((3,))
        b = K.make((1,), (3, 2))
        assert b[1][-1] == 1

    def test_pth_root(self):
        K = RatFuncField(PrimeField(5))
        t = K.gen
        assert K.pth_root(K.pow(t, 5)) == t
        assert K.pth_root(t) is None

    def test_substitute_power(self):
        F = PrimeField(5)
        K, L = RatFuncField(F, "t"), RatFuncField(F, "u")
        t, u = K.gen, L.gen
        img = K.substitute_power(K.add(t, K.one), L, 5)
        assert img == L.add(L.pow(u, 5), L.one)


class TestWittKernelPoint:
    def test_zero_point_valid(self):
        F = PrimeField(5)
        validate_witt_kernel_point(F, [[0, 0]], (2,))

    def test_nilpotent_entry_valid(self):
        R = TestRing(PrimeField(5), 1)
        pt = validate_witt_kernel_point(R, [[R.eps(1)]], (1,))
        assert not pt.is_zero()
        assert pt.negate().negate() == pt

    def test_unit_entry_rejected(self):
        with pytest.raises(NotPNilpotent):
            validate_witt_kernel_point(PrimeField(5), [[1]], (1,))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            validate_witt_kernel_point(PrimeField(5), [[0]], (2,))


class TestRingSpec:
    @pytest.mark.parametrize("spec,kind", [
        ("F5", "prime"), ("F7^2", "ext"), ("F5(t)", "ratfunc"), ("F5[e;1]", "test"), ("F5^2[e;1]", "test"),
    ])
    def test_kinds(self, spec, kind):
        R = parse_ring_spec(spec)
        assert R.kind == kind
        assert R.spec == spec

    @pytest.mark.parametrize("spec", ["G5", "F", "F4", "F5[e", "F5[e;9]", "F5^0", "F5x"])
    def test_malformed(self, spec):
        with pytest.raises(RingSpecError):
            parse_ring_spec(spec)
