import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from modwitt.dpalg import DPAlgebra
from modwitt.errors import NotADerivation
from modwitt.liecore import (
    Derivation, LieData, bracket, center, derivation_algebra, derived_dim, enveloping_closure_dim,
    in_span, is_leibniz, is_simple, is_special_derivation, p_power, witt_algebra, witt_derivations,
    witt_operator_algebra,
)
from modwitt.linalg import Matrix
from modwitt.scalars import ExtField, PrimeField, TestRing


def from_constants(F, d, table):
    """Lie algebra from ``{(i, j): {k: c}}`` with ``i < j``."""
    cols = [[[F.zero] * d for _ in range(d)] for _ in range(d)]
    for (i, j), terms in table.items():
        for k, c in terms.items():
            cols[i][j][k] = F.from_int(c)
            cols[j][i][k] = F.from_int(-c)
    return LieData(F, [Matrix.from_columns(F, cols[i]) for i in range(d)])


def sl2(p):
    # e, h, f with [e, f] = h, [h, e] = 2e, [h, f] = -2f
    return from_constants(PrimeField(p), 3, {(0, 2): {1: 1}, (0, 1): {0: -2}, (1, 2): {2: -2}})


def heisenberg(p):
    return from_constants(PrimeField(p), 3, {(0, 1): {2: 1}})


def abelian(p, d):
    return from_constants(PrimeField(p), d, {})


def direct_sum(L1, L2):
    F = L1.ring
    d1, d2 = L1.dim, L2.dim
    table = {}
    for L, off in ((L1, 0), (L2, d1)):
        c = L.structure_constants()
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                terms = {k + off: int(x) for k, x in enumerate(c[i][j]) if x}
                if terms:
                    table[i + off, j + off] = terms
    return from_constants(F, d1 + d2, table)


def change_basis(L, P):
    """Same algebra in the basis given by the columns of ``P``."""
    Pinv = P.inverse()
    ads = [Pinv @ L.ad_of(P.column(a)) @ P for a in range(L.dim)]
    return LieData(L.ring, ads)


def brute_force_simple(L):
    """Every nonzero vector generates all of ``L`` as an ideal (prime fields, small ``dim``)."""
    p, d = L.ring.p, L.dim
    if d < 2:
        return False
    ads = [A.fp() for A in L.ads]
    for v in itertools.product(range(p), repeat=d):
        first = next((x for x in v if x), None)
        if first != 1:  # one representative per line
            continue
        span = Matrix.from_rows(L.ring, [list(v)])
        frontier = [list(v)]
        while frontier:
            w = frontier.pop()
            for A in ads:
                img = [int(sum(A[k, j] * w[j] for j in range(d)) % p) for k in range(d)]
                bigger = Matrix.vstack([span, Matrix.from_rows(L.ring, [img])])
                if bigger.rank() > span.rank():
                    span = bigger
                    frontier.append(img)
        if span.rank() < d:
            return False
    return True


CONFIGS = [(5, 1, (1,)), (5, 1, (2,)), (7, 1, (1,)), (5, 2, (1, 1))]


class TestWittAlgebra:
    @pytest.mark.parametrize("cfg", CONFIGS, ids=str)
    def test_dimension(self, cfg):
        p, m, n = cfg
        assert witt_algebra(p, m, n).dim == m * p ** sum(n)

    @pytest.mark.parametrize("cfg", CONFIGS[:3], ids=str)
    def test_closed_form_matches_commutators(self, cfg):
        L, W = witt_algebra(*cfg), witt_operator_algebra(*cfg)
        assert L.ads == W.ads
        assert L.labels == W.labels

    @pytest.mark.parametrize("cfg", CONFIGS, ids=str)
    def test_lie_axioms(self, cfg):
        L = witt_algebra(*cfg)
        assert L.is_antisymmetric()
        assert L.satisfies_jacobi()

    def test_jacobi_detects_corruption(self):
        L = witt_algebra(5, 1, (1,))
        ads = list(L.ads)
        bad = ads[1].fp().copy()
        bad[3, 2] = (bad[3, 2] + 1) % 5
        ads[1] = Matrix.from_fp(L.ring, bad)
        ads[2] = Matrix.from_fp(L.ring, ads[2].fp())
        assert not LieData(L.ring, ads).satisfies_jacobi()

    def test_over_extension_and_test_rings(self):
        for R in (ExtField(5, 2), TestRing(PrimeField(5), 1)):
            L = witt_algebra(5, 1, (1,), ring=R)
            W = witt_operator_algebra(5, 1, (1,), ring=R)
            assert L.ads == W.ads

    def test_small_characteristic_guard(self):
        with pytest.raises(ValueError):
            witt_algebra(3, 1, (1,))
        L = witt_algebra(2, 1, (1,), allow_small_p=True)
        assert L.meta["regime"] == "non-simple"
        assert is_simple(L).simple is False

    def test_named_brackets(self):
        A = DPAlgebra(5, 1, (1,))
        d = Derivation(A, [A.one()])
        xd = Derivation(A, [A.x(0)])
        x2d = Derivation(A, [A.x(0, 2)])
        assert bracket(d, xd) == d
        assert bracket(xd, x2d) == x2d
        assert bracket(xd, x2d).format() == "(x1^(2))*d1"
        assert p_power(xd) == xd.matrix

    def test_export_format(self):
        out = witt_algebra(5, 1, (1,)).to_json()
        assert out["dim"] == 5 and out["schema_version"] == 1
        assert out["basis"][:2] == ["d1", "x1^(1)*d1"]
        assert [0, 1, [[0, 1]]] in out["brackets"]
        assert all(i < j for i, j, _ in out["brackets"])


class TestDerivations:
    def test_leibniz_and_special(self):
        A = DPAlgebra(5, 1, (2,))
        for D in witt_derivations(A)[::3]:
            assert is_leibniz(A, D.matrix)
            assert is_special_derivation(D)
        zero = Derivation(A, [A.zero()])
        assert is_special_derivation(zero)

    def test_pth_power_of_partial_is_outside_the_span(self):
        A = DPAlgebra(5, 1, (2,))
        d = Derivation(A, [A.one()])
        d5 = p_power(d)
        assert is_leibniz(A, d5)
        assert not is_special_derivation((A, d5))
        with pytest.raises(NotADerivation):
            Derivation.from_matrix(A, d5)
        assert in_span(d5, [D.matrix for D in witt_derivations(A)]) is None

    @pytest.mark.parametrize("cfg", [(5, 1, (1,)), (7, 1, (1,)), (5, 2, (1, 1))], ids=str)
    def test_restricted_when_heights_are_one(self, cfg):
        A = DPAlgebra(*cfg)
        mats = [D.matrix for D in witt_derivations(A)]
        for M in mats[:: max(1, len(mats) // 8)]:
            assert in_span(p_power(M), mats) is not None

    def test_from_matrix_round_trip(self):
        A = DPAlgebra(5, 2, (1, 1))
        rng = random.Random(0)
        D = Derivation(A, [A.random(rng), A.random(rng)])
        E = Derivation.from_matrix(A, D.matrix)
        assert E == D and E.coeffs == D.coeffs


class TestDerivationAlgebra:
    @pytest.mark.parametrize("cfg,dim", [((5, 1, (1,)), 5), ((5, 1, (2,)), 26), ((7, 1, (1,)), 7)], ids=str)
    def test_dimension(self, cfg, dim):
        assert derivation_algebra(witt_algebra(*cfg)).dim == dim

    @pytest.mark.parametrize("make,dim", [
        (lambda: witt_algebra(5, 1, (1,)), 5), (lambda: sl2(5), 3), (lambda: heisenberg(5), 6),
        (lambda: abelian(5, 2), 4),
    ])
    def test_direct_and_generator_methods_agree(self, make, dim):
        L = make()
        D1 = derivation_algebra(L, method="direct")
        D2 = derivation_algebra(L)
        assert D1.dim == D2.dim == dim
        span = [M for M in D1.embedding]
        for M in D2.embedding:
            assert in_span(M, span) is not None

    def test_outer_derivation_of_w12(self):
        L = witt_algebra(5, 1, (2,))
        Der = derivation_algebra(L)
        inner = [L.ad(i) for i in range(L.dim)]
        outer = [M for M in Der.embedding if in_span(M, inner) is None]
        assert outer
        # ad(d)^5 is the outer direction
        assert in_span(p_power(L.ad(0)), Der.embedding) is not None
        assert in_span(p_power(L.ad(0)), inner) is None


class TestStructure:
    def test_center(self):
        assert center(witt_algebra(5, 1, (1,))).shape[1] == 0
        assert center(heisenberg(5)).shape[1] == 1
        assert center(abelian(5, 3)).shape[1] == 3

    def test_derived_algebra(self):
        assert derived_dim(witt_algebra(5, 1, (1,))) == 5
        assert derived_dim(heisenberg(5)) == 1

    def test_enveloping_dimension(self):
        assert enveloping_closure_dim(witt_algebra(5, 1, (1,))) == 25
        assert enveloping_closure_dim(witt_algebra(5, 1, (2,))) == 625
        assert enveloping_closure_dim(abelian(5, 1)) == 1
        assert enveloping_closure_dim(sl2(5)) == 9

    def test_operators_must_close(self):
        A = DPAlgebra(5, 1, (1,))
        mats = [Derivation(A, [A.one()]).matrix, Derivation(A, [A.x(0, 2)]).matrix]
        with pytest.raises(NotADerivation):
            LieData.from_operators(A.ring, mats)


class TestSimplicity:
    @pytest.mark.parametrize("make,expected", [
        (lambda: witt_algebra(5, 1, (1,)), True), (lambda: sl2(5), True), (lambda: sl2(7), True),
        (lambda: heisenberg(5), False), (lambda: abelian(5, 2), False),
        (lambda: direct_sum(sl2(5), sl2(5)), False), (lambda: direct_sum(sl2(5), abelian(5, 1)), False),
        (lambda: from_constants(PrimeField(5), 2, {(0, 1): {1: 1}}), False),
    ])
    def test_agrees_with_brute_force(self, make, expected):
        L = make()
        assert brute_force_simple(L) is expected
        rep = is_simple(L)
        assert rep.simple is expected
        if expected:
            assert rep.certificate["spin_dim"] == L.dim

    def test_w12_and_w2_simple(self):
        assert is_simple(witt_algebra(5, 1, (2,))).simple
        rep = is_simple(witt_algebra(5, 2, (1, 1)))
        assert rep.simple and rep.certificate["dual_spin_dim"] == 50

    def test_deterministic_certificate(self):
        L = witt_algebra(5, 1, (1,))
        assert is_simple(L, seed=3).certificate == is_simple(L, seed=3).certificate


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), which=st.sampled_from(["sl2", "w1", "heis", "sum"]))
def test_simplicity_is_basis_independent(seed, which):
    L = {"sl2": lambda: sl2(5), "w1": lambda: witt_algebra(5, 1, (1,)), "heis": lambda: heisenberg(5),
         "sum": lambda: direct_sum(sl2(5), abelian(5, 1))}[which]()
    F = L.ring
    rng = random.Random(seed)
    while True:
        P = Matrix.from_rows(F, [[rng.randrange(5) for _ in range(L.dim)] for _ in range(L.dim)])
        if P.rank() == L.dim:
            break
    L2 = change_basis(L, P)
    assert L2.satisfies_jacobi() and L2.is_antisymmetric()
    assert is_simple(L2, seed=seed).simple == (which in ("sl2", "w1"))
    assert derivation_algebra(L2).dim == derivation_algebra(L).dim
