import math
import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from modwitt.dpalg import (
    AmbientGamma, DPAlgebra, augmentation, dp_mul, gamma, gamma_by_expansion, pia_make,
    truncated_poly_iso,
)
from modwitt.errors import NonzeroConstantTerm
from modwitt.scalars import PrimeField, RatFuncField, TestRing, dp_power_coefficient

SHAPES = [(5, 1, (1,)), (5, 1, (2,)), (5, 2, (1, 1)), (7, 1, (1,))]


# ---- characteristic-zero oracle: x^(a) = X^a / a! with rational coefficients ----

def _to_q(f):
    out = {}
    for alpha, c in f.coeffs.items():
        denom = math.prod(math.factorial(a) for a in alpha)
        out[alpha] = Fraction(int(c), denom)
    return out


def _q_mul(u, v):
    out = {}
    for a, x in u.items():
        for b, y in v.items():
            k = tuple(i + j for i, j in zip(a, b))
            out[k] = out.get(k, 0) + x * y
    return out


def _from_q(alg, u):
    p = alg.p
    coeffs = {}
    for beta, c in u.items():
        d = c * math.prod(math.factorial(b) for b in beta)
        assert d.denominator % p, "coefficient not p-integral"
        val = d.numerator * pow(d.denominator, -1, p) % p
        if val and beta in alg.index:
            coeffs[beta] = val
    return alg.element(coeffs)


def oracle_mul(f, g):
    return _from_q(f.alg, _q_mul(_to_q(f), _to_q(g)))


def oracle_gamma(f, r):
    u = {(0,) * f.alg.m: Fraction(1)}
    q = _to_q(f)
    for _ in range(r):
        u = _q_mul(u, q)
    return _from_q(f.alg, {k: v / math.factorial(r) for k, v in u.items()})


# ---------------------------------------------------------------------------

class TestMultiplication:
    def test_examples(self):
        A = DPAlgebra(5, 1, (1,))
        assert A.x(0, 2) * A.x(0, 2) == A.x(0, 4)
        B = DPAlgebra(5, 1, (2,))
        assert (B.x(0, 3) * B.x(0, 4)).is_zero()
        f = B.random(random.Random(1))
        assert dp_mul(B.one(), f) == f

    @pytest.mark.parametrize("shape", SHAPES, ids=str)
    def test_monomials_commute_and_associate(self, shape):
        A = DPAlgebra(*shape)
        mons = [A.monomial(a) for a in A.monomials]
        if A.dim > 30:
            mons = mons[:: A.dim // 25]
        for f, g in product(mons, repeat=2):
            assert f * g == g * f
        for f, g, h in product(mons[:12], repeat=3):
            assert (f * g) * h == f * (g * h)

    @pytest.mark.parametrize("shape", SHAPES, ids=str)
    def test_matches_rational_oracle(self, shape):
        A = DPAlgebra(*shape)
        rng = random.Random(4)
        for _ in range(10):
            f, g = A.random(rng), A.random(rng)
            assert f * g == oracle_mul(f, g)

    def test_no_carry_products_stay_in_range(self):
        A = DPAlgebra(5, 1, (2,))
        for a, b in product(range(25), repeat=2):
            prod = A.monomial((a,)) * A.monomial((b,))
            if a + b >= 25:
                assert prod.is_zero()

    def test_ideal_elements_are_p_nilpotent(self):
        for shape in SHAPES:
            A = DPAlgebra(*shape)
            for alpha in A.monomials[1:]:
                assert (A.monomial(alpha) ** A.p).is_zero()


class TestAugmentation:
    def test_examples(self):
        A = DPAlgebra(5, 1, (1,))
        assert augmentation(A.one() + A.x(0, 2).scale(3)) == 1
        assert augmentation(A.x(0)) == 0

    def test_multiplicative(self):
        A = DPAlgebra(5, 2, (1, 1), TestRing(PrimeField(5), 1))
        R = A.ring
        rng = random.Random(9)
        for _ in range(20):
            f, g = A.random(rng), A.random(rng)
            assert augmentation(f * g) == R.mul(augmentation(f), augmentation(g))


class TestGamma:
    def test_examples(self):
        A = DPAlgebra(5, 1, (2,))
        x = A.x(0)
        assert gamma(x, 5) == A.x(0, 5)
        assert gamma(x, 2) == A.x(0, 2)
        f = x + A.x(0, 2)
        assert gamma(f, 5) == gamma_by_expansion(f, 5)
        assert gamma(x, 1) == x
        assert gamma(x, 0) == A.one()

    def test_constant_term_rejected(self):
        A = DPAlgebra(5, 1, (1,))
        with pytest.raises(NonzeroConstantTerm):
            gamma(A.one() + A.x(0), 2)

    @pytest.mark.parametrize("shape", SHAPES, ids=str)
    def test_matches_rational_oracle(self, shape):
        A = DPAlgebra(*shape)
        rng = random.Random(7)
        for r in [1, 2, A.p - 1, A.p, A.p + 1, 2 * A.p + 3]:
            for _ in range(3):
                f = A.random(rng, ideal=True)
                assert gamma(f, r) == oracle_gamma(f, r)

    def test_below_p_is_power_over_factorial(self):
        A = DPAlgebra(7, 1, (1,))
        R = A.ring
        f = A.random(random.Random(2), ideal=True)
        for r in range(1, 7):
            assert gamma(f, r) == (f**r).scale(R.inv(R.from_int(math.factorial(r))))

    @pytest.mark.parametrize("ring", [PrimeField(5), TestRing(PrimeField(5), 1), TestRing(PrimeField(5), 2)],
                             ids=lambda R: R.spec)
    def test_addition_and_scalar_axioms(self, ring):
        A = DPAlgebra(5, 1, (2,), ring)
        R = ring
        rng = random.Random(13)
        for r in [3, 5, 6, 11]:
            f, g = A.random(rng, ideal=True), A.random(rng, ideal=True)
            lhs = gamma(f + g, r)
            rhs = A.zero()
            for j in range(r + 1):
                rhs = rhs + gamma(f, j) * gamma(g, r - j)
            assert lhs == rhs
            c = R.random(rng)
            assert gamma(f.scale(c), r) == gamma(f, r).scale(R.pow(c, r))

    def test_monomial_closed_form(self):
        for shape in SHAPES:
            A = DPAlgebra(*shape)
            for alpha in A.monomials[1:]:
                for r in range(1, 2 * A.p + 1):
                    assert gamma(A.monomial(alpha), r) == A.gamma_monomial(alpha, r)

    def test_composition_rule_on_monomials(self):
        # gamma_r(gamma_s(x^(a))) = dp(r, s) gamma_rs(x^(a)) (one variable)
        A = DPAlgebra(5, 1, (2,))
        for a in range(1, 25):
            f = A.monomial((a,))
            for r in range(1, 6):
                for s in range(1, 6):
                    lhs = gamma(gamma(f, s), r)
                    rhs = gamma(f, r * s).scale(dp_power_coefficient(r, s, 5))
                    assert lhs == rhs

    def test_ambient_gamma_keeps_overflow(self):
        A = DPAlgebra(5, 1, (1,))
        amb = AmbientGamma(A)
        g = amb.gamma_p(A.x(0))
        assert amb.restrict(g) is None
        assert g == amb.big.x(0, 5)
        assert amb.restrict(amb.embed(A.x(0, 3))) == A.x(0, 3)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), r=st.integers(0, 12))
def test_gamma_property_against_expansion(seed, r):
    A = DPAlgebra(5, 2, (1, 1), TestRing(PrimeField(5), 1))
    f = A.random(random.Random(seed), ideal=True)
    assert gamma(f, r) == gamma_by_expansion(f, r)


class TestTruncatedPolynomialIso:
    @pytest.mark.parametrize("shape", SHAPES, ids=str)
    def test_round_trip(self, shape):
        p, m, n = shape
        iso = truncated_poly_iso(m, n, PrimeField(p))
        A = iso.alg
        for alpha in A.monomials:
            f = A.monomial(alpha)
            assert iso.forward(iso.backward(f)) == f
        for ex in product(range(p), repeat=len(A.generators)):
            b = {ex: 1}
            assert iso.backward(iso.forward(b)) == b

    def test_generator_maps_to_variable(self):
        iso = truncated_poly_iso(1, (2,), PrimeField(5))
        assert iso.forward({(1, 0): 1}) == iso.alg.x(0)
        assert iso.forward({(0, 1): 1}) == iso.alg.x(0, 5)

    def test_constant_for_mixed_exponent(self):
        iso = truncated_poly_iso(1, (2,), PrimeField(5))
        A = iso.alg
        c = iso.constant((7,))
        # x^(5) * x * x = C(6,1) C(7,1) x^(7) = 42 x^(7) = 2 x^(7), so c = 1/2 = 3
        assert A.x(0, 5) * A.x(0) * A.x(0) == A.x(0, 7).scale(2)
        assert c == 3


class TestPurelyInseparable:
    def test_rational_function_relation(self):
        K = RatFuncField(PrimeField(5))
        t = K.gen
        P = pia_make(K, [t])
        x = P.gen(0)
        assert P.dim == 5
        assert P.pow(x, 5) == P.scalar(t)
        assert P.pow(x, 6) == P.scale(t, x)

    def test_split_relation(self):
        F = PrimeField(5)
        P = pia_make(F, [1])
        y = P.sub(P.gen(0), P.one())
        assert P.pow(y, 5) == P.zero()

    def test_local_when_relations_vanish(self):
        F = PrimeField(5)
        P = pia_make(F, [0, 0])
        assert P.dim == 25
        for j in range(2):
            assert P.pow(P.gen(j), 5) == P.zero()
        x, y = P.gen(0), P.gen(1)
        assert P.pow(P.add(x, y), 5) == P.zero()
        assert P.mul(P.pow(x, 4), P.pow(y, 4)) == P.monomial((4, 4))
