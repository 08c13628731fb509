"""Automorphisms of ``A(m; n) (x) R`` and their triangular decomposition.

A morphism is fixed by the images of the generators ``x_i^(p^s)``; since
``A(m; n)`` is the truncated polynomial ring on those generators (each with
``p``-th power zero), any images in the augmentation ideal extend uniquely.

Divided-power compatibility is tested with untruncated divided powers:
``gamma_p`` of an image is computed in a larger box and must land back
in ``A(m; n)`` and agree with the image of the next generator.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dpalg import AmbientGamma
from .errors import (
    InternalDecompositionFailure,
    NotADerivation,
    NotDerivationAutomorphism,
    NotInvertible,
    NotPNilpotent,
    RelationViolated,
)
from .liecore import Derivation, witt_derivations
from .linalg import Matrix
from .scalars import WittKernelPoint, validate_witt_kernel_point


def _ambient(alg):
    amb = getattr(alg, "_ambient_gamma", None)
    if amb is None:
        amb = AmbientGamma(alg)
        alg._ambient_gamma = amb
    return amb


def _col(alg, f):
    return Matrix(alg.ring, f.vec[:, None, :])


class AlgebraMorphism:
    """An algebra endomorphism given by generator images, with its matrix."""

    def __init__(self, alg, images, matrix=None, check=True):
        self.alg = alg
        self.images = {g: images[g] for g in alg.generators}
        self._matrix = matrix
        if check:
            self._validate()

    # ---- construction ------------------------------------------------------
    def _build_matrix(self):
        A = self.alg
        R = A.ring
        p = A.p
        cols = [None] * A.dim
        cols[0] = A.one()
        for idx in range(1, A.dim):
            alpha = A.monomials[idx]
            # peel off the last nonzero base-p digit of the last nonzero exponent
            i = max(j for j, a in enumerate(alpha) if a)
            a = alpha[i]
            s = 0
            while (a // p**s) % p == 0:
                s += 1
            digit = (a // p**s) % p
            prev = list(alpha)
            prev[i] -= p**s
            # x^(prev) * x_i^(p^s) = digit * x^(alpha)
            f = cols[A.index[tuple(prev)]] * self.images[(i, s)]
            cols[idx] = f.scale(R.inv(R.from_int(digit)))
        data = np.stack([c.vec for c in cols], axis=1)
        return Matrix(R, data)

    def _validate(self):
        A = self.alg
        p = A.p
        for (i, s), f in self.images.items():
            if not (f ** p).is_zero():
                raise RelationViolated(i, s)
        self.inverse_matrix = self.matrix.inverse()
        if A.dim <= 343 and not _is_multiplicative(self):
            raise InternalDecompositionFailure("extension by generator images is not multiplicative")

    @property
    def matrix(self):
        if self._matrix is None:
            self._matrix = self._build_matrix()
        return self._matrix

    @cached_property
    def inverse_matrix(self):
        return self.matrix.inverse()

    @classmethod
    def from_matrix(cls, alg, M, check=True):
        images = {(i, s): alg.from_column(M, alg.gen_index(i, s)) for i, s in alg.generators}
        phi = cls(alg, images, None, check=check)
        if phi.matrix != M:
            raise ValueError("matrix is not the algebra morphism determined by its generator images")
        return phi

    # ---- use ---------------------------------------------------------------
    def __call__(self, f):
        return self.alg.from_column(self.matrix @ _col(self.alg, f), 0)

    def image(self, i, s=0):
        return self.images[(i, s)]

    def __eq__(self, other):
        return isinstance(other, AlgebraMorphism) and self.alg == other.alg and self.matrix == other.matrix

    __hash__ = None

    def is_identity(self):
        return self.matrix.is_identity()

    def preserves_ideal(self):
        return all(f.in_ideal() for f in self.images.values())

    def to_json(self):
        return [self.images[g].to_json() for g in self.alg.generators]

    @classmethod
    def from_json(cls, alg, data):
        R = alg.ring
        images = {}
        for g, terms in zip(alg.generators, data):
            images[g] = alg.element({tuple(a): R.from_json(c) for a, c in terms})
        return cls(alg, images)

    def format(self):
        A = self.alg
        return "; ".join(
            f"{A.label(tuple(A.p**s if j == i else 0 for j in range(A.m)))} -> {self.images[(i, s)].format()}"
            for i, s in A.generators
        )

    def __repr__(self):
        return f"AlgebraMorphism({self.format()})"


def morphism_from_generator_images(alg, images):
    """Morphism sending ``x_i^(p^s)`` to ``images[(i, s)]`` (or a list in generator order)."""
    if not isinstance(images, dict):
        images = dict(zip(alg.generators, images))
    return AlgebraMorphism(alg, images)


def identity(alg):
    return AlgebraMorphism(alg, {(i, s): alg.x(i, alg.p**s) for i, s in alg.generators},
                           Matrix.identity(alg.ring, alg.dim), check=False)


def compose(phi, psi):
    """``phi o psi``."""
    if phi.alg != psi.alg:
        raise ValueError("morphisms live on different algebras")
    M = phi.matrix @ psi.matrix
    A = phi.alg
    images = {(i, s): A.from_column(M, A.gen_index(i, s)) for i, s in A.generators}
    out = AlgebraMorphism(A, images, M, check=False)
    out.inverse_matrix = psi.inverse_matrix @ phi.inverse_matrix
    return out


def invert(phi):
    A = phi.alg
    Minv = phi.inverse_matrix
    images = {(i, s): A.from_column(Minv, A.gen_index(i, s)) for i, s in A.generators}
    out = AlgebraMorphism(A, images, Minv, check=False)
    out.inverse_matrix = phi.matrix
    return out


# ---------------------------------------------------------------------------
# the subgroups
# ---------------------------------------------------------------------------

def _factorials_inv(R, p):
    out = [R.one]
    f = 1
    for j in range(1, p):
        f *= j
        out.append(R.inv(R.from_int(f)))
    return out


def _truncated_exp(alg, P, a):
    R = alg.ring
    inv_fact = _factorials_inv(R, alg.p)
    M = Matrix.identity(R, alg.dim)
    term = Matrix.identity(R, alg.dim)
    apow = R.one
    for j in range(1, alg.p):
        term = term @ P
        apow = R.mul(apow, a)
        if R.is_zero(apow):
            break
        M = M + term.scale(R.mul(apow, inv_fact[j]))
    return M


def artin_hasse_auto(alg, i, s, a):
    """``sum_{j<p} a^j (d_i^(p^s))^j / j!`` for a scalar with ``a^p = 0``."""
    R = alg.ring
    if not R.is_zero(R.pow(a, alg.p)):
        raise NotPNilpotent(i, s, a)
    P = Matrix.from_fp(R, alg.partial_fp(i, alg.p**s))
    M = _truncated_exp(alg, P, a)
    images = {(k, t): alg.from_column(M, alg.gen_index(k, t)) for k, t in alg.generators}
    phi = AlgebraMorphism(alg, images, M, check=False)
    phi.inverse_matrix = _truncated_exp(alg, P, R.neg(a))
    if alg.dim <= 343 and not _is_multiplicative(phi):
        raise InternalDecompositionFailure("truncated exponential is not multiplicative")
    return phi


def _is_multiplicative(phi):
    A = phi.alg
    M = phi.matrix
    for i, s in A.generators:
        Lg = A.left_mul_matrix(A.x(i, A.p**s))
        if M @ Lg != A.left_mul_matrix(phi.images[(i, s)]) @ M:
            return False
    return True


def _as_kernel_point(alg, a):
    if isinstance(a, WittKernelPoint):
        if a.shape != alg.n:
            raise ValueError(f"kernel point shape {a.shape} does not match n={list(alg.n)}")
        validate_witt_kernel_point(alg.ring, a.entries, alg.n)
        return a
    return validate_witt_kernel_point(alg.ring, a, alg.n)


def g_minus_point(alg, a):
    """``prod_i prod_s E_p(a_is d_i^(p^s))`` (``i`` ascending, then ``s`` ascending)."""
    a = _as_kernel_point(alg, a)
    phi = identity(alg)
    for i, s, c in a.items():
        if not alg.ring.is_zero(c):
            phi = compose(phi, artin_hasse_auto(alg, i, s, c))
    return phi


def _ambient_divided_powers(alg, f, i):
    """``[f, gamma_p(f), gamma_p^2(f), ...]`` up to ``x_i``'s bound, or ``None`` if any leaves the box."""
    amb = _ambient(alg)
    out = [f]
    for _ in range(1, alg.n[i]):
        g = amb.restrict(amb.gamma_p(out[-1]))
        if g is None:
            return None
        out.append(g)
    return out


def g_zero_point(alg, M):
    """DP-automorphism with ``x_j -> sum_i M[i][j] x_i``."""
    R = alg.ring
    m = alg.m
    if not isinstance(M, Matrix):
        M = Matrix.from_rows(R, M)
    if M.shape != (m, m):
        raise ValueError(f"expected an {m}x{m} matrix")
    M.inverse()  # raises NotInvertible
    images = {}
    for j in range(m):
        f = alg.zero()
        for i in range(m):
            f = f + alg.x(i, 1, M[i, j])
        chain = _ambient_divided_powers(alg, f, j)
        if chain is None:
            raise ValueError("linear substitution does not respect the divided power bounds")
        for s, g in enumerate(chain):
            images[(j, s)] = g
    return AlgebraMorphism(alg, images)


def _admissible_coefficient(alg, alpha, i):
    """Whether a unit coefficient on ``x^(alpha)`` keeps ``x_i``'s image divided-power admissible."""
    support = [j for j, a in enumerate(alpha) if a]
    if len(support) != 1:
        return True
    j = support[0]
    a = alpha[j]
    s = 0
    while a % alg.p == 0:
        a //= alg.p
        s += 1
    if a != 1:
        return True
    return s + alg.n[i] - 1 < alg.n[j]


def _random_scalar(R, rng, nilpotent=False):
    if nilpotent:
        return R.random(rng, nilpotent=True) if R.kind == "test" else R.zero
    return R.random(rng)


def random_g_plus(alg, rng, density=1.0):
    """Random element of ``G+``: ``x_i -> x_i + (terms of degree >= 2)``, divided-power admissible."""
    R = alg.ring
    images = {}
    for i in range(alg.m):
        coeffs = {alg.monomials[alg.gen_index(i)]: R.one}
        for alpha in alg.monomials:
            if sum(alpha) < 2 or rng.random() > density:
                continue
            c = _random_scalar(R, rng, nilpotent=not _admissible_coefficient(alg, alpha, i))
            coeffs[alpha] = R.add(coeffs.get(alpha, R.zero), c)
        chain = _ambient_divided_powers(alg, alg.element(coeffs), i)
        if chain is None:
            raise InternalDecompositionFailure("sampled G+ image is not divided-power admissible")
        for s, g in enumerate(chain):
            images[(i, s)] = g
    return AlgebraMorphism(alg, images)


def random_g_zero(alg, rng):
    """Random invertible linear substitution respecting the divided power bounds."""
    R = alg.ring
    m = alg.m
    while True:
        rows = [
            [_random_scalar(R, rng, nilpotent=alg.n[i] < alg.n[j]) for j in range(m)]
            for i in range(m)
        ]
        M = Matrix.from_rows(R, rows)
        try:
            M.inverse()
        except NotInvertible:
            continue
        return M


def random_kernel_point(alg, rng):
    R = alg.ring
    return WittKernelPoint(R, tuple(tuple(_random_scalar(R, rng, nilpotent=True) for _ in range(ni))
                                    for ni in alg.n))


@dataclass
class TriangularDecomposition:
    """``phi = plus o g_zero_point(zero) o g_minus_point(minus)``."""

    plus: AlgebraMorphism
    zero: Matrix
    minus: WittKernelPoint

    def reassemble(self):
        alg = self.plus.alg
        return compose(compose(self.plus, g_zero_point(alg, self.zero)), g_minus_point(alg, self.minus))

    def __eq__(self, other):
        return (
            isinstance(other, TriangularDecomposition)
            and self.plus == other.plus
            and self.zero == other.zero
            and self.minus.entries == other.minus.entries
        )

    def to_json(self):
        R = self.zero.ring
        return {
            "minus": self.minus.to_json(),
            "zero": [[R.to_json(x) for x in row] for row in self.zero.rows()],
            "plus": self.plus.to_json(),
        }

    @classmethod
    def from_json(cls, alg, data):
        R = alg.ring
        minus = validate_witt_kernel_point(R, [[R.from_json(x) for x in row] for row in data["minus"]], alg.n)
        zero = Matrix.from_rows(R, [[R.from_json(x) for x in row] for row in data["zero"]])
        plus = AlgebraMorphism.from_json(alg, data["plus"])
        return cls(plus, zero, minus)


def random_derivation_automorphism(seed, alg, components=False):
    """``plus o zero o minus`` from seeded random components (``minus`` trivial over fields)."""
    rng = random.Random(seed)
    plus = random_g_plus(alg, rng)
    zero = random_g_zero(alg, rng)
    minus = random_kernel_point(alg, rng)
    dec = TriangularDecomposition(plus, zero, minus)
    phi = dec.reassemble()
    return (phi, dec) if components else phi


# ---------------------------------------------------------------------------
# characterisations
# ---------------------------------------------------------------------------

def _in_witt_span(alg, M):
    """Whether an operator equals ``sum_j M(x_j) d_j`` (i.e. lies in ``W (x) R``)."""
    try:
        Derivation.from_matrix(alg, M)
    except NotADerivation:
        return False
    return True


def is_derivation_automorphism(phi, exhaustive=False):
    """Whether conjugation by ``phi`` maps ``W(m; n) (x) R`` into itself.

    ``phi o f d_i o phi^-1 = phi(f) (phi o d_i o phi^-1)`` and ``W`` is an
    ``A``-module, so the coordinate derivations suffice; ``exhaustive``
    conjugates the whole basis instead.
    """
    A = phi.alg
    try:
        Minv = phi.inverse_matrix
    except NotInvertible:
        return False
    ops = [D.matrix for D in witt_derivations(A)] if exhaustive else [A.partial(i) for i in range(A.m)]
    for D in ops:
        if not _in_witt_span(A, phi.matrix @ D @ Minv):
            return False
    return True


@dataclass
class DPCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def dp_automorphism_check(phi):
    """Ideal preservation, then ``phi(x_i^(p^(s+1))) = gamma_p(phi(x_i^(p^s)))`` with untruncated ``gamma_p``."""
    A = phi.alg
    for (i, s), f in phi.images.items():
        if not f.in_ideal():
            return DPCheck(False, f"image of x{i + 1}^({A.p**s}) has nonzero constant term")
    amb = _ambient(A)
    for i, s in A.generators:
        if s + 1 >= A.n[i]:
            continue
        g = amb.restrict(amb.gamma_p(phi.images[(i, s)]))
        if g is None:
            return DPCheck(False, f"gamma_p of the image of x{i + 1}^({A.p**s}) leaves A(m;n)")
        if g != phi.images[(i, s + 1)]:
            return DPCheck(False, f"gamma_p of the image of x{i + 1}^({A.p**s}) differs from the next image")
    return DPCheck(True)


def is_dp_automorphism(phi):
    return bool(dp_automorphism_check(phi))


def pushforward(phi, D):
    """``phi o D o phi^-1`` in coefficient form."""
    A = phi.alg
    M = phi.matrix @ D.matrix @ phi.inverse_matrix
    try:
        return Derivation.from_matrix(A, M)
    except NotADerivation as exc:
        raise NotDerivationAutomorphism("conjugate leaves W(m;n)") from exc


def triangulate(phi, check=True):
    """Unique ``(plus, zero, minus)`` with ``phi = plus o g_zero_point(zero) o g_minus_point(minus)``."""
    A = phi.alg
    R = A.ring
    if check and not is_derivation_automorphism(phi):
        raise NotDerivationAutomorphism("triangulation needs a derivation-automorphism")
    entries = [[R.zero] * ni for ni in A.n]
    for i, s in A.generators:
        entries[i][s] = phi.images[(i, s)].augmentation()
    try:
        minus = validate_witt_kernel_point(R, entries, A.n)
    except ValueError as exc:
        raise InternalDecompositionFailure(f"constant terms are not p-nilpotent: {exc}") from exc
    phi0 = compose(phi, g_minus_point(A, minus.negate()))
    rows = [[phi0.images[(j, 0)].coeff(_unit(A.m, i)) for j in range(A.m)] for i in range(A.m)]
    zero = Matrix.from_rows(R, rows)
    try:
        gz = g_zero_point(A, zero)
    except (NotInvertible, ValueError) as exc:
        raise InternalDecompositionFailure(f"linear part is not in G0: {exc}") from exc
    plus = compose(phi0, invert(gz))
    dec = TriangularDecomposition(plus, zero, minus)
    if not is_g_plus(plus):
        raise InternalDecompositionFailure("plus part is not in G+")
    if dec.reassemble() != phi:
        raise InternalDecompositionFailure("reassembly differs from the input")
    return dec


def _unit(m, i):
    a = [0] * m
    a[i] = 1
    return tuple(a)


def is_g_plus(phi):
    """``x_j -> x_j`` modulo degree ``>= 2``, ideal preserved and divided-power compatible."""
    A = phi.alg
    R = A.ring
    for j in range(A.m):
        f = phi.images[(j, 0)]
        for alpha, c in f.coeffs.items():
            deg = sum(alpha)
            if deg == 0:
                return False
            if deg == 1 and not (c == (R.one if alpha == _unit(A.m, j) else R.zero)):
                return False
        if _unit(A.m, j) not in f.coeffs:
            return False
    return is_dp_automorphism(phi)


def is_unipotent(phi):
    """Nilpotency index of ``matrix - id`` (``None`` if not nilpotent within ``dim A`` steps)."""
    N = phi.matrix - Matrix.identity(phi.alg.ring, phi.alg.dim)
    P = N
    for k in range(1, phi.alg.dim + 1):
        if P.is_zero():
            return k
        P = P @ N
    return None


def random_ideal_preserving_automorphism(alg, rng, unit_linear=True):
    """Random automorphism with images in the augmentation ideal, not necessarily divided-power."""
    R = alg.ring
    while True:
        images = {}
        for i, s in alg.generators:
            coeffs = {}
            for alpha in alg.monomials:
                if sum(alpha) == 0:
                    continue
                coeffs[alpha] = _random_scalar(R, rng)
            images[(i, s)] = alg.element(coeffs)
        try:
            return AlgebraMorphism(alg, images)
        except NotInvertible:
            continue
