import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from modwitt.autos import (
    AlgebraMorphism, TriangularDecomposition, artin_hasse_auto, compose, dp_automorphism_check,
    g_minus_point, g_zero_point, identity, invert, is_derivation_automorphism, is_dp_automorphism,
    is_g_plus, is_unipotent, morphism_from_generator_images, pushforward, random_derivation_automorphism,
    random_g_plus, random_g_zero, random_ideal_preserving_automorphism, random_kernel_point, triangulate,
)
from modwitt.dpalg import DPAlgebra
from modwitt.errors import NotDerivationAutomorphism, NotInvertible, NotPNilpotent, RelationViolated
from modwitt.liecore import Derivation, bracket, witt_derivations
from modwitt.linalg import Matrix
from modwitt.scalars import PrimeField, TestRing, WittKernelPoint

F5 = PrimeField(5)
E1 = TestRing(F5, 1)
E2 = TestRing(F5, 2)
SHAPES = [(1, (1,)), (1, (2,)), (2, (1, 1))]


def closed_form(alg, i, t, a, j, s):
    """Image of ``x_j^(p^s)`` under ``E_p(a d_i^(p^t))`` by the three-case rule."""
    p, R = alg.p, alg.ring
    if i != j or s < t:
        return alg.x(j, p**s)
    total = alg.zero()
    for k in range(p):
        e = p**s - k * p**t
        if e < 0:
            break
        # a^(k) x_i^(p^s - k p^t), with a^(k) = a^k / k!
        c = R.mul(R.pow(a, k), R.inv(R.from_int(math.factorial(k))))
        total = total + (alg.x(i, e, c) if e else alg.one().scale(c))
    return total


def alg_of(shape, ring=F5):
    m, n = shape
    return DPAlgebra(5, m, n, ring)


class TestArtinHasse:
    @pytest.mark.parametrize("shape", SHAPES, ids=str)
    @pytest.mark.parametrize("ring", [E1, E2], ids=lambda R: R.spec)
    def test_closed_form_on_generators(self, shape, ring):
        A = alg_of(shape, ring)
        rng = random.Random(1)
        for i, t in A.generators:
            for _ in range(3):
                a = ring.random(rng, nilpotent=True)
                phi = artin_hasse_auto(A, i, t, a)
                for j, s in A.generators:
                    assert phi.image(j, s) == closed_form(A, i, t, a, j, s)

    def test_zero_parameter_is_identity(self):
        A = alg_of((1, (2,)), E1)
        assert artin_hasse_auto(A, 0, 1, E1.zero).is_identity()

    def test_parameter_must_be_nilpotent(self):
        A = alg_of((1, (1,)), E1)
        with pytest.raises(NotPNilpotent):
            artin_hasse_auto(A, 0, 0, E1.one)

    def test_translation(self):
        A = alg_of((1, (1,)), E1)
        e = E1.eps(1)
        phi = g_minus_point(A, [[e]])
        assert phi.image(0) == A.x(0) + A.one().scale(e)

    def test_inverse_is_negated_point(self):
        A = alg_of((2, (1, 1)), E2)
        rng = random.Random(5)
        for _ in range(10):
            a = random_kernel_point(A, rng)
            phi = g_minus_point(A, a)
            assert compose(phi, g_minus_point(A, a.negate())).is_identity()
            assert invert(phi) == g_minus_point(A, a.negate())

    def test_zero_point_is_identity(self):
        A = alg_of((1, (2,)), E1)
        assert g_minus_point(A, WittKernelPoint.zero(E1, A.n)).is_identity()


class TestMorphisms:
    def test_identity_images(self):
        A = alg_of((2, (1, 1)))
        phi = morphism_from_generator_images(A, [A.x(0), A.x(1)])
        assert phi == identity(A) and phi.is_identity()
        assert invert(identity(A)).is_identity()

    def test_translation_by_nilpotent_is_valid(self):
        A = alg_of((1, (1,)), E1)
        phi = morphism_from_generator_images(A, [A.x(0) + A.one().scale(E1.eps(1))])
        assert not phi.preserves_ideal()

    def test_unit_translation_violates_relation(self):
        A = alg_of((1, (1,)))
        with pytest.raises(RelationViolated):
            morphism_from_generator_images(A, [A.x(0) + A.one()])

    def test_singular_substitution(self):
        A = alg_of((1, (1,)))
        with pytest.raises(NotInvertible):
            morphism_from_generator_images(A, [A.x(0, 2)])

    def test_multiplicative_on_basis(self):
        A = alg_of((2, (1, 1)), E1)
        phi = random_derivation_automorphism(3, A)
        rng = random.Random(0)
        for _ in range(20):
            f, g = A.random(rng), A.random(rng)
            assert phi(f * g) == phi(f) * phi(g)

    def test_compose_associative_and_inverse(self):
        A = alg_of((1, (2,)), E1)
        f, g, h = (random_derivation_automorphism(s, A) for s in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))
        assert compose(f, invert(f)).is_identity()
        assert compose(invert(f), f).is_identity()

    def test_json_round_trip(self):
        A = alg_of((2, (1, 1)), E2)
        phi = random_derivation_automorphism(4, A)
        data = json.loads(json.dumps(phi.to_json()))
        assert AlgebraMorphism.from_json(A, data) == phi


class TestLinearSubstitutions:
    def test_identity_matrix(self):
        A = alg_of((2, (1, 1)))
        assert g_zero_point(A, [[1, 0], [0, 1]]).is_identity()

    def test_scalar_acts_by_powers(self):
        A = alg_of((1, (2,)))
        phi = g_zero_point(A, [[3]])
        assert phi(A.one()) == A.one()
        for a in range(1, 25):
            assert phi(A.x(0, a)) == A.x(0, a, F5.pow(3, a))

    def test_swap(self):
        A = alg_of((2, (1, 1)))
        phi = g_zero_point(A, [[0, 1], [1, 0]])
        assert phi.image(0) == A.x(1) and phi.image(1) == A.x(0)
        assert phi(A.monomial((1, 1))) == A.monomial((1, 1))
        assert phi(A.monomial((2, 3))) == A.monomial((3, 2))

    def test_bounds_are_enforced(self):
        A = DPAlgebra(5, 2, (1, 2))
        # x_2 -> x_1 would need x_1^(5), which is not in the algebra
        with pytest.raises(ValueError):
            g_zero_point(A, [[0, 1], [1, 0]])
        assert is_dp_automorphism(g_zero_point(A, [[1, 0], [2, 1]]))

    def test_singular_matrix(self):
        A = alg_of((2, (1, 1)))
        with pytest.raises(NotInvertible):
            g_zero_point(A, [[1, 2], [2, 4]])


class TestCharacterisations:
    def test_group_elements_are_derivation_automorphisms(self):
        A = alg_of((2, (1, 1)), E1)
        rng = random.Random(2)
        assert is_derivation_automorphism(identity(A))
        for _ in range(5):
            assert is_derivation_automorphism(g_minus_point(A, random_kernel_point(A, rng)))
            assert is_derivation_automorphism(g_zero_point(A, random_g_zero(A, rng)), exhaustive=True)

    def test_non_divided_power_substitution(self):
        A = alg_of((1, (2,)))
        phi = morphism_from_generator_images(A, [A.x(0), A.x(0, 5) + A.x(0)])
        assert not is_derivation_automorphism(phi)
        assert not is_derivation_automorphism(phi, exhaustive=True)
        check = dp_automorphism_check(phi)
        assert not check and "gamma_p" in check.reason

    def test_dp_automorphism_examples(self):
        A = alg_of((1, (2,)), E1)
        assert is_dp_automorphism(identity(A))
        assert is_dp_automorphism(g_zero_point(A, [[E1.from_int(2)]]))
        assert not is_dp_automorphism(g_minus_point(A, [[E1.eps(1), E1.zero]]))

    @pytest.mark.parametrize("shape", SHAPES, ids=str)
    def test_characterisations_agree_on_samples(self, shape):
        A = alg_of(shape, E1)
        rng = random.Random(17)
        seen = set()
        for k in range(20):
            if k % 2:
                phi = random_ideal_preserving_automorphism(A, rng)
            else:
                phi = compose(random_g_plus(A, rng), g_zero_point(A, random_g_zero(A, rng)))
            assert phi.preserves_ideal()
            d = is_derivation_automorphism(phi)
            assert d == is_dp_automorphism(phi)
            seen.add(d)
        assert True in seen

    def test_pushforward(self):
        A = alg_of((1, (1,)))
        d = Derivation(A, [A.one()])
        assert pushforward(identity(A), d) == d
        c = 3
        assert pushforward(g_zero_point(A, [[c]]), d) == Derivation(A, [A.one().scale(F5.inv(c))])

    def test_pushforward_preserves_brackets(self):
        A = alg_of((2, (1, 1)), E1)
        phi = random_derivation_automorphism(8, A)
        basis = witt_derivations(A)[::7]
        for D in basis:
            for E in basis:
                assert pushforward(phi, bracket(D, E)) == bracket(pushforward(phi, D), pushforward(phi, E))

    def test_pushforward_rejects_non_derivation_automorphisms(self):
        A = alg_of((1, (2,)))
        phi = morphism_from_generator_images(A, [A.x(0), A.x(0, 5) + A.x(0)])
        with pytest.raises(NotDerivationAutomorphism):
            pushforward(phi, Derivation(A, [A.one()]))


class TestTriangulation:
    def test_identity(self):
        A = alg_of((2, (1, 1)), E1)
        dec = triangulate(identity(A))
        assert dec.plus.is_identity() and dec.zero.is_identity() and dec.minus.is_zero()

    def test_pure_kernel_point(self):
        A = alg_of((1, (2,)), E2)
        a = random_kernel_point(A, random.Random(4))
        dec = triangulate(g_minus_point(A, a))
        assert dec.plus.is_identity() and dec.zero.is_identity()
        assert dec.minus.entries == a.entries

    def test_kernel_points_compose_within_the_kernel(self):
        A = alg_of((2, (1, 1)), E2)
        rng = random.Random(6)
        for _ in range(5):
            a, b = random_kernel_point(A, rng), random_kernel_point(A, rng)
            dec = triangulate(compose(g_minus_point(A, a), g_minus_point(A, b)))
            assert dec.plus.is_identity() and dec.zero.is_identity()

    @pytest.mark.parametrize("shape", SHAPES, ids=str)
    @pytest.mark.parametrize("ring", [F5, E1, PrimeField(7)], ids=lambda R: R.spec)
    def test_recovers_components(self, shape, ring):
        m, n = shape
        A = DPAlgebra(ring.p, m, n, ring)
        for seed in range(6):
            phi, dec = random_derivation_automorphism(seed, A, components=True)
            got = triangulate(phi)
            assert got == dec
            assert got.reassemble() == phi
            assert is_g_plus(got.plus)

    def test_rejects_non_derivation_automorphisms(self):
        A = alg_of((1, (2,)))
        phi = morphism_from_generator_images(A, [A.x(0), A.x(0, 5) + A.x(0)])
        with pytest.raises(NotDerivationAutomorphism):
            triangulate(phi)

    def test_json_round_trip(self):
        A = alg_of((2, (1, 1)), E1)
        phi = random_derivation_automorphism(2, A)
        dec = triangulate(phi)
        again = TriangularDecomposition.from_json(A, json.loads(json.dumps(dec.to_json())))
        assert again == dec

    def test_seed_determinism(self):
        A = alg_of((1, (2,)), E1)
        a = random_derivation_automorphism(11, A)
        b = random_derivation_automorphism(11, A)
        assert json.dumps(a.to_json()) == json.dumps(b.to_json())

    def test_fields_have_trivial_kernel_part(self):
        A = alg_of((1, (2,)))
        for seed in range(5):
            assert triangulate(random_derivation_automorphism(seed, A)).minus.is_zero()


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**9), shape=st.sampled_from(SHAPES))
def test_triangulation_round_trip_property(seed, shape):
    A = alg_of(shape, E1)
    phi, dec = random_derivation_automorphism(seed, A, components=True)
    assert triangulate(phi) == dec
    assert triangulate(dec.reassemble()) == dec


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**9), shape=st.sampled_from(SHAPES))
def test_g_plus_is_unipotent(seed, shape):
    A = alg_of(shape)
    phi = random_g_plus(A, random.Random(seed))
    k = is_unipotent(phi)
    assert k is not None and k <= A.dim
    N = phi.matrix - Matrix.identity(F5, A.dim)
    assert (N ** k).is_zero()
