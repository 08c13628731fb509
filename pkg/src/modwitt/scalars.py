"""Exact scalar rings of prime characteristic.

Four kinds of ring are provided:

* :class:`PrimeField` -- ``F_p``, elements are ints in ``[0, p)``;
* :class:`ExtField` -- ``F_{p^k}`` as ``F_p[w]/(modulus)``, elements are
  ints encoding the coefficient vector base ``p``;
* :class:`RatFuncField` -- ``F(t)`` over a finite field ``F``, elements are
  reduced ``(numerator, denominator)`` coefficient tuples;
* :class:`TestRing` -- ``F[e_1..e_r]/(e_j^p)``, elements are dense tuples of
  base coefficients indexed by the base-``p`` exponent vector.

Elements are plain hashable values; all arithmetic goes through the ring
object (``R.add(a, b)``, ``R.mul(a, b)``, ...), so element equality is
ordinary ``==``.  Finite rings additionally expose a multiplication tensor
``T`` over ``F_p`` (``dig`` digits per element) used by the vectorised
linear algebra in :mod:`modwitt.linalg`.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from . import polys
from .errors import NotInvertible, NotPNilpotent, RingSpecError


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def base_p_digits(n, p, length=None):
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    if length is not None:
        if len(out) > length:
            raise ValueError(f"{n} does not fit in {length} base-{p} digits")
        out += [0] * (length - len(out))
    return out


# ---------------------------------------------------------------------------
# combinatorial coefficient kernel
# ---------------------------------------------------------------------------

def lucas_binomial(a, b, p):
    """Binomial coefficient ``C(a, b)`` reduced mod ``p`` via Lucas' theorem."""
    if a < 0 or b < 0:
        raise ValueError("lucas_binomial needs non-negative arguments")
    if b > a:
        raise ValueError(f"lucas_binomial needs b <= a, got a={a}, b={b}")
    result = 1
    while b:
        a, ad = divmod(a, p)
        b, bd = divmod(b, p)
        if bd > ad:
            return 0
        # small binomial directly; digits are < p
        num = den = 1
        for i in range(bd):
            num = num * (ad - i) % p
            den = den * (i + 1) % p
        result = result * num * pow(den, p - 2, p) % p
    return result


def legendre_valuation(n, p):
    """Exponent of ``p`` in ``n!``."""
    v = 0
    while n:
        n //= p
        v += n
    return v


def factorial_unit(n, p):
    """``n! / p^v`` mod ``p`` where ``v`` is the Legendre valuation."""
    result = 1
    while n > 1:
        q, r = divmod(n, p)
        fr = 1
        for i in range(2, r + 1):
            fr = fr * i % p
        if q % 2:
            fr = -fr
        result = result * fr % p
        n = q
    return result % p


def dp_power_coefficient(r, a, p):
    """``(ra)! / (r! (a!)^r)`` mod ``p``.

    This integer is the coefficient in ``gamma_r(x^(a)) = c * x^(ra)``.
    Computed from Legendre valuations and digitwise factorial residues, so
    no large factorial is ever formed.
    """
    if r < 0 or a < 0:
        raise ValueError("dp_power_coefficient needs non-negative arguments")
    v = legendre_valuation(r * a, p) - legendre_valuation(r, p) - r * legendre_valuation(a, p)
    if v > 0:
        return 0
    num = factorial_unit(r * a, p)
    den = factorial_unit(r, p) * pow(factorial_unit(a, p), r, p) % p
    return num * pow(den, p - 2, p) % p


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

class ScalarRing:
    """Common interface; concrete kinds override the arithmetic."""

    kind = "abstract"
    is_field = True
    is_finite = True
    order = None

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def is_zero(self, a):
        return a == self.zero

    def is_unit(self, a):
        return not self.is_zero(a)

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    # ``T2`` (finite rings) is the same tensor for a lift of the ring to
    # characteristic p^2; it is only used to compute divided p-th powers.

    def regular_matrix(self, a):
        """Matrix of multiplication by ``a`` on digit vectors (row convention)."""
        v = np.asarray(self.to_digits(a), dtype=np.int64)
        return np.einsum("a,abc->bc", v, self.T) % self.p


class PrimeField(ScalarRing):
    kind = "prime"

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.dig = 1
        self.zero = 0
        self.one = 1
        self.T = np.ones((1, 1, 1), dtype=np.int64)
        self.T2 = self.T
        self.spec = f"F{p}"

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise NotInvertible("zero is not invertible")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def pth_root(self, a):
        return a

    def to_digits(self, a):
        return (a,)

    def from_digits(self, v):
        return int(v[0]) % self.p

    def format(self, a):
        return str(a)

    def to_json(self, a):
        return a

    def from_json(self, o):
        return int(o) % self.p


def _poly_mulmod_fp(a, b, mod, p):
    k = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for j in range(k + 1):
                out[d - k + j] = (out[d - k + j] - c * mod[j]) % p
    out = out[:k] + [0] * max(0, k - len(out))
    return out


def least_irreducible(p, k):
    """Lexicographically least monic irreducible of degree ``k`` over ``F_p``.

    Candidates are ordered by the integer ``sum c_i p^i`` of their lower
    coefficients ``(c_0, ..., c_{k-1})``.
    """
    F = PrimeField(p)
    for code in range(p**k):
        f = tuple(base_p_digits(code, p, k)) + (1,)
        if k == 1 or (f[0] != 0 and polys.is_irreducible(F, f)):
            return f
    raise ValueError("no irreducible polynomial found")  # unreachable for prime p


class ExtField(ScalarRing):
    kind = "ext"
    _MAX_ORDER = 1 << 16

    def __init__(self, p, k):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        q = p**k
        if q > self._MAX_ORDER:
            raise ValueError(f"F_{p}^{k} is too large for table arithmetic")
        self.p, self.k, self.order = p, k, q
        self.dig = k
        self.zero, self.one = 0, 1
        self.modulus = least_irreducible(p, k)
        self.spec = f"F{p}^{k}"
        self._digits = np.array([base_p_digits(i, p, k) for i in range(q)], dtype=np.int64)
        self._pw = np.array([p**i for i in range(k)], dtype=np.int64)
        self._build_tables()
        self.T = self._tensor(p)
        self.T2 = self._tensor(p * p)

    def _tensor(self, q):
        # multiplication tensor of Z/q[w]/(modulus); q = p^2 gives the lift
        k = self.k
        T = np.zeros((k, k, k), dtype=np.int64)
        for a in range(k):
            for b in range(k):
                ea = [0] * k
                ea[a] = 1
                eb = [0] * k
                eb[b] = 1
                T[a, b] = _poly_mulmod_fp(ea, eb, self.modulus, q)
        return T

    def _encode(self, digs):
        return int(np.dot(np.asarray(digs, dtype=np.int64) % self.p, self._pw))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.order
        mod = list(self.modulus)
        # first element (by code) of multiplicative order q - 1
        for g in range(1, q):
            gd = list(self._digits[g])
            exp = []
            x = [1] + [0] * (k - 1)
            for _ in range(q - 1):
                exp.append(self._encode(x))
                x = _poly_mulmod_fp(x, gd, mod, p)
            if len(set(exp)) == q - 1:
                break
        self.primitive = g
        self._exp = exp + exp
        self._log = [0] * q
        for e, code in enumerate(exp):
            self._log[code] = e
        if q <= 1024:
            d = self._digits
            self._add = ((d[:, None, :] + d[None, :, :]) % p) @ self._pw
        else:
            self._add = None
        self._neg = [self._encode(-self._digits[a]) for a in range(q)]

    @property
    def gen(self):
        """The class of ``w`` in ``F_p[w]/(modulus)``."""
        return self._encode([0, 1] if self.k > 1 else [(-self.modulus[0]) % self.p])

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        if self._add is not None:
            return int(self._add[a, b])
        return self._encode(self._digits[a] + self._digits[b])

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise NotInvertible("zero is not invertible")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise NotInvertible("zero is not invertible")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def elements(self):
        return range(self.order)

    def random(self, rng):
        return rng.randrange(self.order)

    def pth_root(self, a):
        return self.pow(a, self.order // self.p)

    def to_digits(self, a):
        return tuple(int(x) for x in self._digits[a])

    def from_digits(self, v):
        return self._encode(v)

    def format(self, a):
        digs = self._digits[a]
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = int(digs[i])
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def to_json(self, a):
        return [int(x) for x in self._digits[a]]

    def from_json(self, o):
        if isinstance(o, int):
            return o % self.p
        return self._encode(list(o) + [0] * (self.k - len(o)))

    def embedding_from(self, other):
        """Field embedding ``other -> self`` for a subfield ``other``.

        The image of ``other``'s generator is the smallest root (by integer
        code) of ``other.modulus`` in ``self``.
        """
        if isinstance(other, PrimeField) or (isinstance(other, ExtField) and other.k == 1):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return lambda a: a % self.p
        if not isinstance(other, ExtField) or other.p != self.p or self.k % other.k:
            raise ValueError(f"{other.spec} is not a subfield of {self.spec}")
        if other.k == self.k and other.modulus == self.modulus:
            return lambda a: a
        root = next(r for r in range(self.order) if polys.evaluate(self, other.modulus, r) == 0)
        powers = [self.pow(root, i) for i in range(other.k)]

        def emb(a):
            acc = 0
            for c, w in zip(other.to_digits(a), powers):
                if c:
                    acc = self.add(acc, self.mul(c % self.p, w))
            return acc

        return emb


class RatFuncField(ScalarRing):
    """Univariate rational functions ``F(var)`` over a finite field ``F``."""

    kind = "ratfunc"
    is_finite = False

    def __init__(self, base, var="t"):
        if not base.is_field or not base.is_finite:
            raise ValueError("RatFuncField needs a finite base field")
        self.base = base
        self.p = base.p
        self.var = var
        self.zero = ((), (base.one,))
        self.one = ((base.one,), (base.one,))
        self.spec = f"{base.spec}({var})"

    def _norm(self, num, den):
        B = self.base
        num, den = polys.trim(B, num), polys.trim(B, den)
        if not den:
            raise NotInvertible("zero denominator")
        if not num:
            return self.zero
        g = polys.gcd(B, num, den)
        if polys.degree(g) > 0:
            num = polys.divmod_(B, num, g)[0]
            den = polys.divmod_(B, den, g)[0]
        lead = B.inv(den[-1])
        return polys.scale(B, lead, num), polys.scale(B, lead, den)

    def make(self, num, den=None):
        B = self.base
        if den is None:
            den = (B.one,)
        return self._norm(tuple(num), tuple(den))

    @property
    def gen(self):
        return ((self.base.zero, self.base.one), (self.base.one,))

    def from_base(self, c):
        return self._norm((c,), (self.base.one,))

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def add(self, a, b):
        B = self.base
        if a[1] == b[1]:
            return self._norm(polys.add(B, a[0], b[0]), a[1])
        num = polys.add(B, polys.mul(B, a[0], b[1]), polys.mul(B, b[0], a[1]))
        return self._norm(num, polys.mul(B, a[1], b[1]))

    def neg(self, a):
        return (polys.neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        B = self.base
        if not a[0] or not b[0]:
            return self.zero
        return self._norm(polys.mul(B, a[0], b[0]), polys.mul(B, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise NotInvertible("zero is not invertible")
        return self._norm(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def random(self, rng, max_degree=2):
        B = self.base
        num = [B.random(rng) for _ in range(rng.randint(0, max_degree + 1))]
        den = [B.random(rng) for _ in range(rng.randint(0, max_degree))] + [B.one]
        return self._norm(tuple(num), tuple(den))

    def pth_root(self, a):
        """The ``p``-th root if ``a`` is a ``p``-th power in this field, else ``None``."""
        B, p = self.base, self.p
        out = []
        for poly in a:
            if any(not B.is_zero(c) for i, c in enumerate(poly) if i % p):
                return None
            out.append(tuple(B.pth_root(poly[i]) for i in range(0, len(poly), p)))
        return self._norm(*out)

    def substitute_power(self, a, target, e):
        """Image of ``a(var)`` under ``var -> target.var ** e`` in ``target``."""
        B = self.base

        def spread(poly):
            out = [B.zero] * (e * (len(poly) - 1) + 1) if poly else []
            for i, c in enumerate(poly):
                out[i * e] = c
            return tuple(out)

        return target._norm(spread(a[0]), spread(a[1]))

    def format(self, a):
        num = polys.fmt(self.base, a[0], self.var)
        if a[1] == (self.base.one,):
            return num
        return f"({num})/({polys.fmt(self.base, a[1], self.var)})"

    def to_json(self, a):
        B = self.base
        return {"num": [B.to_json(c) for c in a[0]], "den": [B.to_json(c) for c in a[1]]}

    def from_json(self, o):
        B = self.base
        if isinstance(o, int):
            return self.from_int(o)
        return self._norm(tuple(B.from_json(c) for c in o["num"]), tuple(B.from_json(c) for c in o["den"]))


class TestRing(ScalarRing):
    """``base[e_1, ..., e_r] / (e_1^p, ..., e_r^p)`` for a finite base field."""

    __test__ = False  # keep pytest from collecting this class
    kind = "test"
    is_field = False
    MAX_GENERATORS = 3

    def __init__(self, base, r):
        if not base.is_field or not base.is_finite:
            raise ValueError("TestRing needs a finite base field")
        if r < 1 or r > self.MAX_GENERATORS:
            raise ValueError(f"TestRing supports 1 <= r <= {self.MAX_GENERATORS} nilpotents")
        self.base, self.r, self.p = base, r, base.p
        p = self.p
        self.size = p**r
        self.exponents = [tuple(base_p_digits(i, p, r)) for i in range(self.size)]
        self.zero = (base.zero,) * self.size
        self.one = (base.one,) + (base.zero,) * (self.size - 1)
        self.spec = f"{base.spec}[e;{r}]"
        pairs = []
        for i, ei in enumerate(self.exponents):
            for j, ej in enumerate(self.exponents):
                if all(a + b < p for a, b in zip(ei, ej)):
                    pairs.append((i, j, i + j))  # no carry, so codes add
        self._pairs = pairs
        bd = base.dig
        self.dig = bd * self.size
        self.T = self._tensor(base.T)
        self.T2 = self._tensor(base.T2)

    def _tensor(self, base_T):
        bd = self.base.dig
        T = np.zeros((self.dig, self.dig, self.dig), dtype=np.int64)
        for i, j, k in self._pairs:
            T[i * bd:(i + 1) * bd, j * bd:(j + 1) * bd, k * bd:(k + 1) * bd] = base_T
        return T

    def eps(self, j):
        """The ``j``-th nilpotent generator (1-based)."""
        if not 1 <= j <= self.r:
            raise IndexError(f"nilpotent index {j} outside 1..{self.r}")
        v = list(self.zero)
        v[self.p ** (j - 1)] = self.base.one
        return tuple(v)

    def from_base(self, c):
        return (c,) + (self.base.zero,) * (self.size - 1)

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        B = self.base
        out = list(self.zero)
        for i, j, k in self._pairs:
            x, y = a[i], b[j]
            if x and y:
                out[k] = B.add(out[k], B.mul(x, y))
        return tuple(out)

    def is_unit(self, a):
        return not self.base.is_zero(a[0])

    def inv(self, a):
        B = self.base
        if B.is_zero(a[0]):
            raise NotInvertible("element with zero constant term is not a unit")
        c = B.inv(a[0])
        n = tuple(B.mul(c, x) for x in a)
        n = (B.zero,) + n[1:]  # a = a0 (1 + n)
        minus_n = self.neg(n)
        total, term = self.one, self.one
        for _ in range(self.r * (self.p - 1)):
            term = self.mul(term, minus_n)
            total = self.add(total, term)
        return tuple(B.mul(c, x) for x in total)

    def constant_term(self, a):
        return a[0]

    def random(self, rng, nilpotent=False):
        B = self.base
        v = [B.random(rng) for _ in range(self.size)]
        if nilpotent:
            v[0] = B.zero
        return tuple(v)

    def to_digits(self, a):
        out = []
        for x in a:
            out.extend(self.base.to_digits(x))
        return tuple(out)

    def from_digits(self, v):
        bd = self.base.dig
        return tuple(self.base.from_digits(v[i * bd:(i + 1) * bd]) for i in range(self.size))

    def format(self, a):
        B = self.base
        terms = []
        for e, c in zip(self.exponents, a):
            if B.is_zero(c):
                continue
            mono = "*".join(
                (f"e{j + 1}" if x == 1 else f"e{j + 1}^{x}") for j, x in enumerate(e) if x
            )
            cs = B.format(c)
            if not mono:
                terms.append(cs)
            elif c == B.one:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}" if B.kind == "prime" else f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    def to_json(self, a):
        B = self.base
        return [[list(e), B.to_json(c)] for e, c in zip(self.exponents, a) if not B.is_zero(c)]

    def from_json(self, o):
        if isinstance(o, int):
            return self.from_int(o)
        v = list(self.zero)
        for e, c in o:
            code = sum(x * self.p**j for j, x in enumerate(e))
            v[code] = self.base.from_json(c)
        return tuple(v)


def make_test_ring(base, r):
    """Ring with ``r`` nilpotent generators ``e_j``, ``e_j^p = 0``; ``r = 0`` gives ``base``."""
    if r < 0:
        raise ValueError("number of nilpotent generators must be non-negative")
    if r == 0:
        return base
    return TestRing(base, r)


# ---------------------------------------------------------------------------
# Witt kernel points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WittKernelPoint:
    """Parameters ``a[i][s]`` (0-based ``i``) with every ``a[i][s]^p = 0``."""

    ring: ScalarRing
    entries: tuple  # tuple over i of tuples over s

    @property
    def shape(self):
        return tuple(len(row) for row in self.entries)

    def items(self):
        for i, row in enumerate(self.entries):
            for s, a in enumerate(row):
                yield i, s, a

    def negate(self):
        R = self.ring
        return WittKernelPoint(R, tuple(tuple(R.neg(a) for a in row) for row in self.entries))

    def is_zero(self):
        return all(self.ring.is_zero(a) for _, _, a in self.items())

    def to_json(self):
        R = self.ring
        return [[R.to_json(a) for a in row] for row in self.entries]

    @classmethod
    def zero(cls, ring, n):
        return cls(ring, tuple((ring.zero,) * ni for ni in n))


def validate_witt_kernel_point(ring, entries, n):
    """Check shape and the ``a^p = 0`` condition; return a :class:`WittKernelPoint`."""
    entries = tuple(tuple(row) for row in entries)
    if len(entries) != len(n) or any(len(row) != ni for row, ni in zip(entries, n)):
        raise ValueError(f"kernel point shape {[len(r) for r in entries]} does not match n={list(n)}")
    for i, row in enumerate(entries):
        for s, a in enumerate(row):
            if not ring.is_zero(ring.pow(a, ring.p)):
                raise NotPNilpotent(i, s, a)
    return WittKernelPoint(ring, entries)


# ---------------------------------------------------------------------------
# ring spec grammar:  F<p> | F<p>^<k> | F<p>(t) | F<p>^<k>(t) | F<p>[e;<r>] | F<p>^<k>[e;<r>]
# ---------------------------------------------------------------------------

_SPEC_RE = re.compile(r"F(\d+)(?:\^(\d+))?(?:(\((\w)\))|(\[e;(\d+)\]))?$")


def parse_ring_spec(spec):
    spec = spec.strip()
    if not spec.startswith("F"):
        raise RingSpecError(spec, 0, "expected 'F'")
    m = _SPEC_RE.match(spec)
    if not m:
        # locate the first offending character for the error message
        pos = 1
        while pos < len(spec) and spec[pos].isdigit():
            pos += 1
        if pos == 1:
            raise RingSpecError(spec, 1, "expected prime after 'F'")
        raise RingSpecError(spec, pos, f"unexpected {spec[pos:pos + 1]!r}")
    p = int(m.group(1))
    if not is_prime(p):
        raise RingSpecError(spec, 1, f"{p} is not prime")
    k = int(m.group(2) or 1)
    if k < 1:
        raise RingSpecError(spec, m.start(2), "extension degree must be positive")
    base = PrimeField(p) if k == 1 else ExtField(p, k)
    if m.group(3):
        return RatFuncField(base, m.group(4))
    if m.group(5):
        r = int(m.group(6))
        if r > TestRing.MAX_GENERATORS:
            raise RingSpecError(spec, m.start(6), f"at most {TestRing.MAX_GENERATORS} nilpotents")
        return make_test_ring(base, r)
    return base


def residue_field(R):
    """Field of constants used when reducing modulo the nilpotents."""
    return R.base if isinstance(R, TestRing) else R


def all_nilpotent_elements(R):
    """Enumerate the maximal ideal of a test ring (small rings only)."""
    if not isinstance(R, TestRing):
        return [R.zero]
    B = R.base
    vals = list(B.elements())
    for rest in itertools.product(vals, repeat=R.size - 1):
        yield (B.zero,) + rest
