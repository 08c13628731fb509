"""Truncated divided power algebras and purely inseparable algebras.

``DPAlgebra(p, m, n, R)`` is ``A(m; n) (x) R``: basis ``x^(alpha)`` with
``alpha_i < p^{n_i}``, product

    x^(alpha) x^(beta) = prod_i C(alpha_i + beta_i, alpha_i) x^(alpha + beta),

which vanishes exactly when some coordinate has a base-``p`` carry.  Only
finite scalar rings are supported; elements are stored densely as an
``(dim, dig)`` array of ``F_p`` digits, which keeps the automorphism code
vectorised.

Divided powers ``gamma_r`` on the augmentation ideal are those of the
quotient of the full divided power algebra by the span of out-of-range
monomials (a sub-ideal stable under every ``gamma_r``).  ``gamma_p`` is
obtained from ``f^p = p! gamma_p(f)`` computed over a lift of the scalars
to characteristic ``p^2``; all other ``gamma_r`` follow from ``gamma_p``
through the composition and product rules.

``PIAAlgebra`` is ``K[x_1..x_r]/(x_j^p - a_j)`` over any field ``K``.
"""
from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .errors import AlgebraMismatch, NonzeroConstantTerm
from .linalg import Matrix, _fmatmul
from .scalars import PrimeField, base_p_digits, dp_power_coefficient, lucas_binomial


def _binom_mod(a, b, q):
    from math import comb

    return comb(a, b) % q


def _dense_mul(x, y, M, T, q):
    """Product of dense elements ``x``, ``y`` (shape ``(N, dig)``) mod ``q``."""
    N, dig = x.shape
    if dig == 1:
        L = _fmatmul(x[:, 0][None, :], M.reshape(N, N * N), q).reshape(N, N)
        return _fmatmul(y[:, 0][None, :], L, q).reshape(N, 1)
    Mx = _fmatmul(x.T, M.reshape(N, N * N), q).reshape(dig, N, N)
    YT = np.einsum("bv,uvw->ubw", y, T) % q
    return _fmatmul(Mx.transpose(2, 0, 1).reshape(N, dig * N), YT.reshape(dig * N, dig), q)


def _coo_mul(x, y, coo, T, q):
    """Product through a sparse structure tensor ``(ia, ib, ic, coeff)``."""
    ia, ib, ic, cf = coo
    N, dig = x.shape
    if dig == 1:
        vals = (x[ia, 0] * y[ib, 0] % q) * cf % q
        z = np.bincount(ic, weights=vals.astype(np.float64), minlength=N)
        return np.fmod(z, q).astype(np.int64)[:, None]
    # only pairs with both factors nonzero contribute
    keep = x.any(axis=1)[ia] & y.any(axis=1)[ib]
    ia, ib, ic, cf = ia[keep], ib[keep], ic[keep], cf[keep]
    XT = (x[ia] @ T.reshape(dig, dig * dig) % q).reshape(-1, dig, dig)
    vals = (np.einsum("nv,nvw->nw", y[ib], XT) % q * cf[:, None] % q).astype(np.float64)
    z = np.stack([np.bincount(ic, weights=vals[:, w], minlength=N) for w in range(dig)], axis=1)
    return np.fmod(z, q).astype(np.int64)


def _pow(x, e, one, mul):
    result = one
    base = x
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def _dense_pow(x, e, one, M, T, q):
    return _pow(x, e, one, lambda a, b: _dense_mul(a, b, M, T, q))


class DPAlgebra:
    """The divided power algebra ``A(m; n)`` over a finite scalar ring."""

    def __init__(self, p, m, n, ring=None):
        ring = PrimeField(p) if ring is None else ring
        if ring.p != p:
            raise ValueError(f"scalar ring {ring.spec} does not have characteristic {p}")
        if not ring.is_finite:
            raise ValueError("DPAlgebra needs a finite scalar ring")
        n = tuple(int(v) for v in n)
        if m < 1 or len(n) != m or any(v < 1 for v in n):
            raise ValueError(f"bad shape m={m}, n={n}")
        self.p, self.m, self.n, self.ring = p, m, n, ring
        self.bounds = tuple(p**v for v in n)
        self.monomials = list(itertools.product(*(range(b) for b in self.bounds)))
        self.index = {a: i for i, a in enumerate(self.monomials)}
        self.dim = len(self.monomials)
        # generators x_i^(p^s), ordered i major, s ascending
        self.generators = [(i, s) for i in range(m) for s in range(n[i])]

    def __eq__(self, other):
        return (
            isinstance(other, DPAlgebra)
            and (self.p, self.m, self.n, self.ring) == (other.p, other.m, other.n, other.ring)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.n, self.ring))

    def __repr__(self):
        return f"A({self.m};{list(self.n)}) over {self.ring.spec}"

    def with_ring(self, ring):
        return DPAlgebra(self.p, self.m, self.n, ring)

    # ---- structure tensors -------------------------------------------------
    def _mult_coo(self, q, exact):
        # per-coordinate tables, combined over the mixed-radix index
        ia = np.zeros(1, dtype=np.int64)
        ib = np.zeros(1, dtype=np.int64)
        ic = np.zeros(1, dtype=np.int64)
        cf = np.ones(1, dtype=np.int64)
        for b in self.bounds:
            pa, pb, pc = [], [], []
            pcf = []
            for x in range(b):
                for y in range(b - x):
                    c = _binom_mod(x + y, x, q) if exact else lucas_binomial(x + y, x, q)
                    if c:
                        pa.append(x)
                        pb.append(y)
                        pc.append(x + y)
                        pcf.append(c)
            pa, pb, pc, pcf = (np.array(v, dtype=np.int64) for v in (pa, pb, pc, pcf))
            ia = (ia[:, None] * b + pa[None, :]).ravel()
            ib = (ib[:, None] * b + pb[None, :]).ravel()
            ic = (ic[:, None] * b + pc[None, :]).ravel()
            cf = (cf[:, None] * pcf[None, :] % q).ravel()
        return ia, ib, ic, cf

    @cached_property
    def coo(self):
        """Sparse structure tensor ``(ia, ib, ic, coeff)`` mod ``p``."""
        return self._mult_coo(self.p, exact=False)

    @cached_property
    def coo2(self):
        """The same tensor mod ``p^2`` (integral divided power products)."""
        return self._mult_coo(self.p * self.p, exact=True)

    @cached_property
    def M(self):
        """``M[a, b, c]``: coefficient of basis ``c`` in ``basis_a * basis_b`` (mod p)."""
        N = self.dim
        M = np.zeros((N, N, N), dtype=np.int64)
        ia, ib, ic, cf = self.coo
        M[ia, ib, ic] = cf
        return M

    def gen_index(self, i, s=0):
        a = [0] * self.m
        a[i] = self.p**s
        return self.index[tuple(a)]

    def partial_fp(self, i, k=1):
        """``F_p`` matrix of ``d_i^k``: ``x^(alpha) -> x^(alpha - k e_i)``."""
        N = self.dim
        D = np.zeros((N, N), dtype=np.int64)
        for c, al in enumerate(self.monomials):
            if al[i] >= k:
                b = list(al)
                b[i] -= k
                D[self.index[tuple(b)], c] = 1
        return D

    def partial(self, i, k=1):
        return Matrix.from_fp(self.ring, self.partial_fp(i, k))

    def left_mul_matrix(self, f):
        """Matrix over the scalars of ``g -> f g``."""
        self._check(f)
        R = self.ring
        data = np.einsum("au,abc->cbu", f.vec, self.M) % R.p
        return Matrix(R, data)

    def left_mul_fp(self, a):
        """``F_p`` matrix of multiplication by the basis monomial with index ``a``."""
        return self.M[a].T.copy()

    # ---- elements ----------------------------------------------------------
    def _check(self, f):
        if f.alg != self:
            raise AlgebraMismatch(f"{f.alg!r} vs {self!r}")

    def zero(self):
        return DPElement(self, np.zeros((self.dim, self.ring.dig), dtype=np.int64))

    def one(self):
        return self.monomial((0,) * self.m)

    def monomial(self, alpha, coeff=None):
        R = self.ring
        alpha = tuple(alpha)
        if alpha not in self.index:
            raise ValueError(f"exponent {alpha} out of bounds {self.bounds}")
        v = np.zeros((self.dim, R.dig), dtype=np.int64)
        v[self.index[alpha]] = R.to_digits(R.one if coeff is None else coeff)
        return DPElement(self, v)

    def x(self, i, a=1, coeff=None):
        """``coeff * x_i^(a)`` with 0-based variable index ``i``."""
        alpha = [0] * self.m
        alpha[i] = a
        return self.monomial(alpha, coeff)

    def element(self, coeffs):
        """Element from a ``{exponent tuple: scalar}`` mapping."""
        R = self.ring
        v = np.zeros((self.dim, R.dig), dtype=np.int64)
        for alpha, c in coeffs.items():
            if tuple(alpha) not in self.index:
                raise ValueError(f"exponent {alpha} out of bounds {self.bounds}")
            v[self.index[tuple(alpha)]] = (v[self.index[tuple(alpha)]] + R.to_digits(c)) % R.p
        return DPElement(self, v)

    def from_vector(self, vec):
        return DPElement(self, np.asarray(vec, dtype=np.int64) % self.p)

    def from_column(self, M, j):
        return DPElement(self, M.data[:, j].copy())

    def random(self, rng, ideal=False, min_degree=0):
        """Random element; ``min_degree`` drops monomials of total degree below it."""
        R = self.ring
        coeffs = {}
        for alpha in self.monomials:
            if sum(alpha) < max(min_degree, 1 if ideal else 0):
                continue
            coeffs[alpha] = R.random(rng)
        return self.element(coeffs)

    def label(self, alpha):
        parts = [f"x{i + 1}^({a})" for i, a in enumerate(alpha) if a]
        return "*".join(parts) if parts else "1"

    @cached_property
    def labels(self):
        return [self.label(a) for a in self.monomials]

    # ---- divided powers ----------------------------------------------------
    @cached_property
    def _one_lift(self):
        return self.one().vec

    def gamma_p(self, f):
        """``gamma_p(f)`` for ``f`` in the augmentation ideal."""
        p = self.p
        q = p * p
        R = self.ring
        fp = _pow(f.vec, p, self._one_lift, lambda a, b: _coo_mul(a, b, self.coo2, R.T2, q))
        if (fp % p).any():
            raise AssertionError("p-th power of a lift is not divisible by p")
        return DPElement(self, (-(fp // p)) % p)

    def gamma(self, f, r):
        self._check(f)
        if r < 0:
            raise ValueError("r must be non-negative")
        if not f.in_ideal():
            raise NonzeroConstantTerm("divided powers are defined on the augmentation ideal only")
        if r == 0:
            return self.one()
        R = self.ring
        result = self.one()
        level = f
        for k, d in enumerate(base_p_digits(r, self.p)):
            if k:
                level = self.gamma_p(level)
            if d:
                term = level ** d
                result = result * term.scale(R.inv(R.from_int(_factorial(d))))
        return result

    def gamma_monomial(self, alpha, r):
        """Closed form ``gamma_r(x^(alpha)) = (r!)^(k-1) prod dp(r, alpha_i) x^(r alpha)``."""
        p = self.p
        support = [a for a in alpha if a]
        if not support:
            raise NonzeroConstantTerm("x^(0) is not in the augmentation ideal")
        if r == 0:
            return self.one()
        target = tuple(r * a for a in alpha)
        if target not in self.index:
            return self.zero()
        c = pow(_factorial(r) % p, len(support) - 1, p)
        for a in support:
            c = c * dp_power_coefficient(r, a, p) % p
        return self.monomial(target, self.ring.from_int(c))


def _factorial(n):
    from math import factorial

    return factorial(n)


class DPElement:
    """Element of ``A(m; n) (x) R``; immutable, compared coefficientwise."""

    __slots__ = ("alg", "vec")

    def __init__(self, alg, vec):
        self.alg = alg
        self.vec = vec

    # ---- arithmetic --------------------------------------------------------
    def __add__(self, other):
        self.alg._check(other)
        return DPElement(self.alg, (self.vec + other.vec) % self.alg.p)

    def __sub__(self, other):
        self.alg._check(other)
        return DPElement(self.alg, (self.vec - other.vec) % self.alg.p)

    def __neg__(self):
        return DPElement(self.alg, (-self.vec) % self.alg.p)

    def __mul__(self, other):
        A = self.alg
        A._check(other)
        return DPElement(A, _dense_mul(self.vec, other.vec, A.M, A.ring.T, A.p))

    def __pow__(self, e):
        A = self.alg
        return DPElement(A, _dense_pow(self.vec, e, A.one().vec, A.M, A.ring.T, A.p))

    def scale(self, c):
        A = self.alg
        R = A.ring
        cd = np.asarray(R.to_digits(c), dtype=np.int64)
        if R.dig == 1:
            return DPElement(A, self.vec * int(cd[0]) % A.p)
        CT = np.tensordot(cd, R.T, axes=(0, 0)) % A.p
        return DPElement(A, self.vec @ CT % A.p)

    def __eq__(self, other):
        return isinstance(other, DPElement) and self.alg == other.alg and np.array_equal(self.vec, other.vec)

    def __hash__(self):
        return hash((self.alg, self.vec.tobytes()))

    # ---- queries -----------------------------------------------------------
    def is_zero(self):
        return not self.vec.any()

    def coeff(self, alpha):
        R = self.alg.ring
        return R.from_digits(tuple(int(x) for x in self.vec[self.alg.index[tuple(alpha)]]))

    @property
    def coeffs(self):
        """Sparse ``{exponent: scalar}`` map in lexicographic order, zeros omitted."""
        A = self.alg
        R = A.ring
        out = {}
        for idx in np.flatnonzero(self.vec.any(axis=1)):
            out[A.monomials[idx]] = R.from_digits(tuple(int(x) for x in self.vec[idx]))
        return out

    def augmentation(self):
        return self.alg.ring.from_digits(tuple(int(x) for x in self.vec[0]))

    def in_ideal(self):
        return not self.vec[0].any()

    def gamma(self, r):
        return self.alg.gamma(self, r)

    def format(self):
        A = self.alg
        R = A.ring
        terms = []
        for alpha, c in self.coeffs.items():
            mono = A.label(alpha)
            cs = R.format(c)
            if mono == "1":
                terms.append(cs)
            elif c == R.one:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}" if R.kind == "prime" else f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"DPElement({self.format()})"

    def to_json(self):
        R = self.alg.ring
        return [[list(a), R.to_json(c)] for a, c in self.coeffs.items()]


def dp_mul(f, g):
    return f * g


def augmentation(f):
    return f.augmentation()


def gamma(f, r):
    return f.alg.gamma(f, r)


def gamma_by_expansion(f, r):
    """``gamma_r(f)`` through the addition rule applied monomial by monomial.

    Slow reference path: the coefficient of ``t^r`` in
    ``prod_alpha sum_j c_alpha^j gamma_j(x^(alpha)) t^j``.
    """
    A = f.alg
    R = A.ring
    if not f.in_ideal():
        raise NonzeroConstantTerm("divided powers are defined on the augmentation ideal only")
    series = [A.one()] + [A.zero()] * r
    for alpha, c in f.coeffs.items():
        factor = [A.one()] + [A.gamma_monomial(alpha, j).scale(R.pow(c, j)) for j in range(1, r + 1)]
        new = [A.zero() for _ in range(r + 1)]
        for i, s in enumerate(series):
            if s.is_zero():
                continue
            for j in range(r + 1 - i):
                if not factor[j].is_zero():
                    new[i + j] = new[i + j] + s * factor[j]
        series = new
    return series[r]


class AmbientGamma:
    """Divided powers computed without truncation.

    ``gamma_p`` of an element of ``A(m; n)`` is evaluated inside
    ``A(m; n + 1)``, which holds every exponent that can occur.  Used to test
    whether a divided power of an element stays inside ``A(m; n)``.
    """

    def __init__(self, alg):
        self.alg = alg
        self.big = DPAlgebra(alg.p, alg.m, tuple(v + 1 for v in alg.n), alg.ring)
        self._embed = np.array([self.big.index[a] for a in alg.monomials])

    def embed(self, f):
        v = np.zeros((self.big.dim, self.alg.ring.dig), dtype=np.int64)
        v[self._embed] = f.vec
        return DPElement(self.big, v)

    def restrict(self, F):
        """Element of the small algebra, or ``None`` if out-of-range terms survive."""
        mask = np.ones(self.big.dim, dtype=bool)
        mask[self._embed] = False
        if F.vec[mask].any():
            return None
        return DPElement(self.alg, F.vec[self._embed].copy())

    def gamma_p(self, f):
        return self.big.gamma_p(self.embed(f))


# ---------------------------------------------------------------------------
# B(m; n) = R[y_is] / (y_is^p)  <->  A(m; n)
# ---------------------------------------------------------------------------

class TruncatedPolyIso:
    """Mutually inverse maps between ``B(m; n)`` and ``A(m; n)``.

    A ``B(m; n)`` element is a ``{exponent tuple: scalar}`` mapping whose
    exponent tuples are indexed by the generators ``y_is`` in the order
    of :attr:`DPAlgebra.generators`, each exponent below ``p``.
    """

    def __init__(self, alg):
        self.alg = alg
        self.generators = alg.generators
        p = alg.p
        R = alg.ring
        self._consts = {}
        self._digits = {}
        for alpha in alg.monomials:
            ex = []
            c = 1
            for i, a in enumerate(alpha):
                ds = base_p_digits(a, p, alg.n[i])
                ex.extend(ds)
                for s, d in enumerate(ds):
                    # (x^(p^s))^d = d! dp(d, p^s) x^(d p^s)
                    c = c * _factorial(d) * dp_power_coefficient(d, p**s, p) % p
            self._digits[alpha] = tuple(ex)
            self._consts[alpha] = R.inv(R.from_int(c))

    def constant(self, alpha):
        """``c`` with ``x^(alpha) = c * prod (x_i^(p^s))^(alpha_is)``."""
        return self._consts[tuple(alpha)]

    def forward(self, b):
        A = self.alg
        total = A.zero()
        gens = [A.x(i, A.p**s) for i, s in self.generators]
        for ex, c in b.items():
            if any(e >= A.p or e < 0 for e in ex):
                raise ValueError(f"exponent {ex} not reduced in B(m;n)")
            term = A.one().scale(c)
            for g, e in zip(gens, ex):
                if e:
                    term = term * g**e
            total = total + term
        return total

    def backward(self, f):
        A = self.alg
        R = A.ring
        out = {}
        for alpha, c in f.coeffs.items():
            ex = self._digits[alpha]
            v = R.mul(c, self._consts[alpha])
            out[ex] = R.add(out.get(ex, R.zero), v)
        return {k: v for k, v in sorted(out.items()) if not R.is_zero(v)}


def truncated_poly_iso(m, n, ring):
    return TruncatedPolyIso(DPAlgebra(ring.p, m, n, ring))


# ---------------------------------------------------------------------------
# purely inseparable algebras of height one
# ---------------------------------------------------------------------------

class PIAAlgebra:
    """``K[x_1..x_r] / (x_1^p - a_1, ..., x_r^p - a_r)`` over a field ``K``.

    Basis: monomials ``x^e`` with ``0 <= e_j < p`` in lexicographic order of
    ``e``.  Elements are tuples of scalars in that order.
    """

    def __init__(self, ring, a, names=None):
        if not ring.is_field:
            raise ValueError("PIAAlgebra needs a field of scalars")
        self.ring = ring
        self.p = p = ring.p
        self.a = tuple(a)
        self.r = len(self.a)
        self.names = list(names) if names else (["x"] if self.r == 1 else [f"x{j + 1}" for j in range(self.r)])
        self.monomials = list(itertools.product(range(p), repeat=self.r))
        self.index = {e: i for i, e in enumerate(self.monomials)}
        self.dim = len(self.monomials)
        R = ring
        table = {}
        for i, e in enumerate(self.monomials):
            for j, f in enumerate(self.monomials):
                c = R.one
                g = []
                for t, (x, y) in enumerate(zip(e, f)):
                    s = x + y
                    if s >= p:
                        c = R.mul(c, self.a[t])
                        s -= p
                    g.append(s)
                if not R.is_zero(c):
                    table[i, j] = (self.index[tuple(g)], c)
        self._table = table

    def __repr__(self):
        return f"PIA({self.ring.spec}; a={[self.ring.format(x) for x in self.a]})"

    def zero(self):
        return (self.ring.zero,) * self.dim

    def one(self):
        return self.monomial((0,) * self.r)

    def monomial(self, e, c=None):
        v = list(self.zero())
        v[self.index[tuple(e)]] = self.ring.one if c is None else c
        return tuple(v)

    def gen(self, j):
        e = [0] * self.r
        e[j] = 1
        return self.monomial(e)

    def scalar(self, c):
        return self.monomial((0,) * self.r, c)

    def add(self, f, g):
        R = self.ring
        return tuple(R.add(x, y) for x, y in zip(f, g))

    def sub(self, f, g):
        R = self.ring
        return tuple(R.sub(x, y) for x, y in zip(f, g))

    def scale(self, c, f):
        R = self.ring
        return tuple(R.mul(c, x) for x in f)

    def mul(self, f, g):
        R = self.ring
        out = list(self.zero())
        fz = [(i, x) for i, x in enumerate(f) if not R.is_zero(x)]
        gz = [(j, y) for j, y in enumerate(g) if not R.is_zero(y)]
        for i, x in fz:
            for j, y in gz:
                hit = self._table.get((i, j))
                if hit is not None:
                    k, c = hit
                    out[k] = R.add(out[k], R.mul(c, R.mul(x, y)))
        return tuple(out)

    def pow(self, f, e):
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, f)
            f = self.mul(f, f)
            e >>= 1
        return result

    def mul_matrix(self, f):
        """Matrix of ``g -> f g`` on the monomial basis."""
        cols = [self.mul(f, self.monomial(e)) for e in self.monomials]
        return Matrix.from_columns(self.ring, cols)

    def from_vector(self, v):
        return tuple(v)

    def format(self, f):
        R = self.ring
        terms = []
        for e, c in zip(self.monomials, f):
            if R.is_zero(c):
                continue
            mono = "*".join(
                (n if x == 1 else f"{n}^{x}") for n, x in zip(self.names, e) if x
            )
            cs = R.format(c)
            if not mono:
                terms.append(cs)
            elif c == R.one:
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    def labels(self):
        return [self.format(self.monomial(e)) for e in self.monomials]

    def with_ring(self, ring, embed):
        """Base change along a field embedding ``embed: K -> ring``."""
        return PIAAlgebra(ring, [embed(x) for x in self.a], self.names)


def pia_make(ring, a, names=None):
    return PIAAlgebra(ring, a, names)
