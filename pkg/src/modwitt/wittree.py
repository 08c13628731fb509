"""Witt–Ree algebras: verification, twisted forms of ``W(1; n)`` and their recognition.

A candidate is a commutative algebra ``A`` over a field together with
derivations ``D_1..D_m``; its Lie algebra is the ``A``-span of the ``D_i``,
realised as a subspace of ``End(A)``.  The verification works over fields
only (the base ring of every report is a field).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from . import polys
from .dpalg import DPAlgebra, PIAAlgebra, TruncatedPolyIso
from .errors import (
    DependentEigenvalues,
    InseparableCharPoly,
    InternalDecompositionFailure,
    NoOrthonormalSystem,
    NotADerivation,
)
from .liecore import SCHEMA_VERSION, Derivation, LieData, center, enveloping_closure_dim, witt_algebra
from .linalg import Echelon, Matrix
from .scalars import ExtField, PrimeField, RatFuncField

REPORT_SCOPE = "field-level verification: base ring is a field"


# ---------------------------------------------------------------------------
# uniform access to DPAlgebra / PIAAlgebra elements
# ---------------------------------------------------------------------------

class _Ops:
    def __init__(self, A):
        self.A = A
        self.R = A.ring
        self.dp = isinstance(A, DPAlgebra)

    def col(self, f):
        if self.dp:
            return Matrix(self.R, f.vec[:, None, :])
        return Matrix.from_columns(self.R, [list(f)])

    def elem(self, M, j=0):
        if self.dp:
            return self.A.from_column(M, j)
        return tuple(M.column(j))

    def mul(self, f, g):
        return f * g if self.dp else self.A.mul(f, g)

    def add(self, f, g):
        return f + g if self.dp else self.A.add(f, g)

    def sub(self, f, g):
        return f - g if self.dp else self.A.sub(f, g)

    def scale(self, c, f):
        return f.scale(c) if self.dp else self.A.scale(c, f)

    def one(self):
        return self.A.one()

    def zero(self):
        return self.A.zero()

    def pow(self, f, e):
        return f ** e if self.dp else self.A.pow(f, e)

    def mul_matrix(self, f):
        return self.A.left_mul_matrix(f) if self.dp else self.A.mul_matrix(f)

    def basis(self):
        return [self.A.monomial(e) for e in self.A.monomials]

    def is_zero(self, f):
        return f.is_zero() if self.dp else all(self.R.is_zero(x) for x in f)

    def inv(self, f):
        x = self.mul_matrix(f).solve(self.col(self.one()))
        return None if x is None else self.elem(x)

    def is_unit(self, f):
        return self.mul_matrix(f).rank() == self.A.dim

    def as_scalar(self, f):
        """The scalar ``c`` if ``f = c * 1``, else ``None``."""
        col = self.col(f).column(0)
        if any(not self.R.is_zero(x) for x in col[1:]):
            return None
        return col[0]

    def format(self, f):
        return f.format() if self.dp else self.A.format(f)

    def to_json(self, f):
        if self.dp:
            return f.to_json()
        return [[list(e), self.R.to_json(c)] for e, c in zip(self.A.monomials, f) if not self.R.is_zero(c)]

    def net(self):
        """Monomials in degree-lexicographic order, then sums of two of them."""
        mons = sorted(self.A.monomials, key=lambda e: (sum(e), e))
        singles = [self.A.monomial(e) for e in mons if sum(e)]
        yield from singles
        for f, g in itertools.combinations(singles, 2):
            yield self.add(f, g)


def _gens_of(A):
    if isinstance(A, DPAlgebra):
        return [A.x(i) for i in range(A.m)]
    return [A.gen(j) for j in range(A.r)]


# ---------------------------------------------------------------------------
# candidates and reports
# ---------------------------------------------------------------------------

class WittReeCandidate:
    """``A`` with derivations ``D_1..D_m`` and the Lie algebra ``sum A D_i``."""

    def __init__(self, A, derivations, name="candidate"):
        if not A.ring.is_field:
            raise ValueError("Witt-Ree verification needs a field of scalars")
        self.A = A
        self.derivations = list(derivations)
        self.name = name
        self.ops = _Ops(A)
        self.lie = self._span_lie()

    @property
    def field(self):
        return self.A.ring

    def _span_lie(self):
        ops = self.ops
        A = self.A
        R = A.ring
        n = A.dim
        ech = Echelon(R, n * n)
        mats, labels = [], []
        for k, D in enumerate(self.derivations):
            for e, b in zip(A.monomials, ops.basis()):
                M = ops.mul_matrix(b) @ D.matrix
                if ech.add(M.reshape(1, n * n)):
                    mats.append(M)
                    labels.append(_mono_label(A, e, k, len(self.derivations)))
        try:
            return LieData.from_operators(R, mats, labels, {"candidate": self.name})
        except NotADerivation as exc:
            raise ValueError("the A-span of the derivations is not closed under brackets") from exc

    def base_change(self, ring, embed):
        """The same candidate with scalars extended along ``embed``."""
        if isinstance(self.A, DPAlgebra):
            A2 = self.A.with_ring(ring)
            conv = lambda f: A2.element({a: embed(c) for a, c in f.coeffs.items()})  # noqa: E731
        else:
            A2 = self.A.with_ring(ring, embed)
            conv = lambda f: tuple(embed(c) for c in f)  # noqa: E731
        ders = [Derivation(A2, [conv(f) for f in D.coeffs]) for D in self.derivations]
        return WittReeCandidate(A2, ders, f"{self.name} over {ring.spec}")


def _mono_label(A, e, k, m):
    if isinstance(A, DPAlgebra):
        mono = A.label(e)
    else:
        mono = A.format(A.monomial(e))
    d = "D" if m == 1 else f"D{k + 1}"
    return d if mono == "1" else f"{mono}*{d}"


def witt_candidate(p, m, n, ring=None):
    """``W(m; n)`` inside ``Der(A(m; n))`` as a candidate."""
    A = DPAlgebra(p, m, n, ring)
    ders = []
    for i in range(m):
        coeffs = [A.zero() for _ in range(m)]
        coeffs[i] = A.one()
        ders.append(Derivation(A, coeffs))
    return WittReeCandidate(A, ders, f"W({m};{list(n)})")


@dataclass
class OrthonormalSystem:
    derivations: list
    witnesses: list
    det: object

    def to_json(self, ops):
        return {
            "derivations": [D.format() for D in self.derivations],
            "witnesses": [ops.format(g) for g in self.witnesses],
        }


def _det(ops, rows):
    """Determinant of a small square matrix over the carrier (Laplace expansion)."""
    m = len(rows)
    if m == 1:
        return rows[0][0]
    total = ops.zero()
    for j in range(m):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = ops.mul(rows[0][j], _det(ops, minor))
        total = ops.add(total, term) if j % 2 == 0 else ops.sub(total, term)
    return total


def _inverse(ops, rows):
    """Inverse of a square matrix over the carrier via the adjugate."""
    m = len(rows)
    d = _det(ops, rows)
    dinv = ops.inv(d)
    if dinv is None:
        return None
    if m == 1:
        return [[dinv]]
    out = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(rows) if k != j]
            c = _det(ops, minor)
            if (i + j) % 2:
                c = ops.sub(ops.zero(), c)
            out[i][j] = ops.mul(c, dinv)
    return out


def orthonormal_system(c, limit=20000):
    """Derivations ``D'_i`` spanning the same ``A``-module and ``g_j`` with ``D'_i(g_j) = delta_ij``."""
    ops = c.ops
    Ds = c.derivations
    m = len(Ds)
    net = list(ops.net())
    best = 0
    tried = 0
    chosen = []

    def rank_of(gs):
        # largest leading minor that is a unit
        r = 0
        for k in range(1, len(gs) + 1):
            rows = [[Ds[i](g) for g in gs[:k]] for i in range(k)]
            if ops.is_unit(_det(ops, rows)):
                r = k
            else:
                break
        return r

    # greedy: extend by the first net element keeping the leading minor a unit
    for k in range(m):
        for g in net:
            tried += 1
            if rank_of(chosen + [g]) == k + 1:
                chosen.append(g)
                break
        else:
            break
        best = len(chosen)
    if best < m:
        for gs in itertools.permutations(net, m):
            tried += 1
            if tried > limit:
                break
            rows = [[Ds[i](g) for g in gs] for i in range(m)]
            if ops.is_unit(_det(ops, rows)):
                chosen = list(gs)
                best = m
                break
            best = max(best, rank_of(list(gs)))
    if best < m:
        raise NoOrthonormalSystem(best, m)
    rows = [[Ds[i](g) for g in chosen] for i in range(m)]
    inv = _inverse(ops, rows)
    # D'_i = sum_k inv[k][i]^T ... choose C with (C M)_{ij} = delta_ij where M[k][j] = D_k(g_j)
    new = []
    for i in range(m):
        coeffs = None
        for k in range(m):
            term = [ops.mul(inv[i][k], f) for f in Ds[k].coeffs]
            coeffs = term if coeffs is None else [ops.add(a, b) for a, b in zip(coeffs, term)]
        new.append(Derivation(c.A, coeffs))
    for i in range(m):
        for j in range(m):
            val = new[i](chosen[j])
            want = ops.one() if i == j else ops.zero()
            if not _elements_equal(ops, val, want):
                raise InternalDecompositionFailure("orthonormal system check failed")
    return OrthonormalSystem(new, chosen, _det(ops, rows))


def _elements_equal(ops, f, g):
    return ops.is_zero(ops.sub(f, g))


def wr2_constants(c):
    """Common kernel of the derivations (columns span it) and whether it is ``K * 1``."""
    A = c.A
    R = A.ring
    if not c.derivations:
        return Matrix.identity(R, A.dim), False
    K = Matrix.vstack([D.matrix for D in c.derivations]).nullspace()
    ok = K.shape[1] == 1 and c.ops.as_scalar(c.ops.elem(K)) is not None
    return K, ok


def wr3_central_simple(c):
    L = c.lie
    zdim = center(L).shape[1]
    env = enveloping_closure_dim(L)
    return {"center_dim": zdim, "enveloping_dim": env, "dim": L.dim, "pass": zdim == 0 and env == L.dim**2}


@dataclass
class WittReeReport:
    name: str
    field: str
    wr1: dict
    wr2: dict
    wr3: dict

    @property
    def verdict(self):
        return bool(self.wr1["pass"] and self.wr2["pass"] and self.wr3["pass"])

    def __bool__(self):
        return self.verdict

    def to_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "scope": REPORT_SCOPE,
            "candidate": self.name,
            "field": self.field,
            "wr1": self.wr1,
            "wr2": self.wr2,
            "wr3": self.wr3,
            "verdict": self.verdict,
        }


def verify_witt_ree(c):
    m = len(c.derivations)
    try:
        ons = orthonormal_system(c)
        wr1 = {"pass": True, "free": True, "rank": m, "orthonormal_system": ons.to_json(c.ops)}
    except NoOrthonormalSystem as exc:
        wr1 = {"pass": False, "free": False, "rank": m, "reason": str(exc),
               "achieved_rank": exc.achieved_rank}
    K, ok = wr2_constants(c)
    wr2 = {"pass": ok, "constants_dim": K.shape[1]}
    if c.lie.dim == 0:
        wr3 = {"center_dim": 0, "enveloping_dim": 0, "dim": 0, "pass": False}
    else:
        wr3 = wr3_central_simple(c)
    return WittReeReport(c.name, c.field.spec, wr1, wr2, wr3)


# ---------------------------------------------------------------------------
# twisted forms
# ---------------------------------------------------------------------------

def ree_form(p, n=1, field=None):
    """``K[x]/(x^p - t)`` over ``K = F_p(t)`` with ``D(x) = 1``."""
    if n != 1:
        raise NotImplementedError("only the one-variable form is supported")
    K = field or RatFuncField(PrimeField(p), "t")
    A = PIAAlgebra(K, [K.gen], ["x"])
    D = Derivation(A, [A.one()])
    return WittReeCandidate(A, [D], f"ree_form(p={p})")


def _field_of_order(q):
    p = min(d for d in range(2, q + 1) if q % d == 0)
    k = round(math.log(q, p))
    if p**k != q:
        raise ValueError(f"{q} is not a prime power")
    return PrimeField(p) if k == 1 else ExtField(p, k)


def _fp_independent(F, vals):
    rows = [list(F.to_digits(v)) for v in vals]
    return Matrix.from_fp(PrimeField(F.p), rows).rank() == len(vals) if rows else True


def _scalar_from_code(F, v):
    """Field element from its integer code (``0..q-1``; for ``F_p`` any integer)."""
    if isinstance(F, PrimeField):
        return int(v) % F.p
    if not 0 <= int(v) < F.order:
        raise ValueError(f"{v} is not an element code of {F.spec}")
    return int(v)


def multiplicative_form(q, lambdas):
    """``F_q[y_1..y_s]/(y_j^p - 1)`` with ``D(y_j) = lambda_j y_j``."""
    F = _field_of_order(q)
    lambdas = [_scalar_from_code(F, v) for v in lambdas]
    if not lambdas or not _fp_independent(F, lambdas):
        raise DependentEigenvalues("eigenvalues must be linearly independent over the prime field")
    s = len(lambdas)
    names = ["y"] if s == 1 else [f"y{j + 1}" for j in range(s)]
    A = PIAAlgebra(F, [F.one] * s, names)
    D = Derivation(A, [A.scale(lam, A.gen(j)) for j, lam in enumerate(lambdas)])
    return WittReeCandidate(A, [D], f"multiplicative_form(q={q}, s={s})")


# ---------------------------------------------------------------------------
# eigen-decomposition and recognition
# ---------------------------------------------------------------------------

@dataclass
class EigenDecomposition:
    field: object
    basis_eigenvalues: list  # lambda_{p^s}
    eigenvalues: dict  # digit tuple -> eigenvalue
    vectors: dict  # digit tuple -> normalised eigenvector (u^p = 1)
    candidate: object  # candidate over ``field`` (base-changed if needed)


def _roots(F, f):
    """Roots of ``f`` in the finite field ``F`` (or in the prime field of ``F_p(t)``)."""
    if F.is_finite:
        elems = F.elements()
    else:
        elems = [F.from_int(i) for i in range(F.p)]
    return [x for x in elems if F.is_zero(polys.evaluate(F, f, x))]


def _splitting_degree(F, f):
    degs = [d for d, g in polys.distinct_degree_factorization(F, f) if polys.degree(g) > 0]
    out = 1
    for d in degs:
        out = out * d // math.gcd(out, d)
    return out


def eigen_decompose(c, D=None):
    """Eigenvectors of ``D`` (default: the candidate's derivation), normalised by ``u^p = 1``."""
    D = D or c.derivations[0]
    F = c.field
    cp = D.matrix.charpoly()
    if not polys.is_separable(F, cp):
        raise InseparableCharPoly([F.to_json(x) for x in cp])
    roots = _roots(F, cp)
    if len(roots) < polys.degree(cp):
        if not F.is_finite:
            raise ValueError("eigenvalues outside the prime field are not supported over this field")
        k0 = 1 if isinstance(F, PrimeField) else F.k
        F2 = ExtField(F.p, k0 * _splitting_degree(F, cp))
        c2 = c.base_change(F2, F2.embedding_from(F))
        idx = c.derivations.index(D) if D in c.derivations else 0
        return eigen_decompose(c2, c2.derivations[idx])
    ops = c.ops
    p = F.p
    N = c.A.dim
    ident = Matrix.identity(F, N)
    vecs = {}
    for lam in roots:
        K = (D.matrix - ident.scale(lam)).nullspace()
        if K.shape[1] != 1:
            raise InternalDecompositionFailure("eigenspace is not one-dimensional")
        vecs[lam] = ops.elem(K)
    # an F_p-basis of the eigenvalue group, chosen greedily in root order
    basis = []
    for lam in sorted(roots, key=lambda x: _sort_key(F, x)):
        if F.is_zero(lam):
            continue
        if _fp_independent_general(F, basis + [lam]):
            basis.append(lam)
    n = len(basis)
    if p**n != N:
        raise InternalDecompositionFailure("eigenvalues do not form a group of the expected order")
    # normalise u_lambda^p = 1 using p-th roots of the constant u^p
    for lam, u in list(vecs.items()):
        cst = ops.as_scalar(ops.pow(u, p))
        if cst is None or F.is_zero(cst):
            raise InternalDecompositionFailure("u^p is not a nonzero constant")
        r = F.pth_root(cst)
        if r is None:
            raise InseparableCharPoly([F.to_json(x) for x in cp], "eigenvector normalisation needs a p-th root")
        vecs[lam] = ops.scale(F.inv(r), u)
    eig, out = {}, {}
    for digits in itertools.product(range(p), repeat=n):
        lam = F.zero
        for d, b in zip(digits, basis):
            lam = F.add(lam, F.mul(F.from_int(d), b))
        eig[digits] = lam
        out[digits] = vecs[lam]
    return EigenDecomposition(F, basis, eig, out, c)


def _sort_key(F, x):
    j = F.to_json(x)
    return j if isinstance(j, int) else str(j)


def _fp_independent_general(F, vals):
    if F.is_finite:
        return _fp_independent(F, vals)
    # prime-field elements of F_p(t)
    ints = [v[0][0] if v[0] else 0 for v in vals]
    return Matrix.from_fp(PrimeField(F.p), [[x] for x in ints]).rank() == len(vals)


@dataclass
class NonSplitCertificate:
    charpoly: list
    reason: str

    def to_json(self):
        return {"split": False, "reason": self.reason, "charpoly": self.charpoly}


@dataclass
class W1nIsomorphism:
    """``x^(a) d -> images[a]`` from ``W(1; n) (x) K`` onto the candidate's Lie algebra."""

    field: object
    n: int
    x_images: list  # images of x^(p^s) in A
    scale: object  # g with d -> g D
    operators: list  # operator matrices of the images of the W(1;n) basis
    coordinates: Matrix  # columns: coordinates of the images in the candidate's Lie basis
    verified: bool = False
    candidate: object = None

    def to_json(self):
        ops = self.candidate.ops
        return {
            "split": True,
            "field": self.field.spec,
            "n": self.n,
            "x_images": [ops.format(f) for f in self.x_images],
            "d_image": f"({ops.format(self.scale)})*D",
            "verified": self.verified,
        }


def _w1n_isomorphism(c, x0, n, D):
    """Build ``A(1; n) -> A`` from ``x0`` and the equations ``gD(x_s) = theta(x^(p^s - 1))``.

    Returns ``None`` when ``x0`` does not extend to an isomorphism.
    """
    ops = c.ops
    F = c.field
    p = F.p
    g = ops.inv(D(x0))
    if g is None:
        return None
    model = DPAlgebra(p, 1, (n,), PrimeField(p))
    iso = TruncatedPolyIso(model)
    xs = [x0]
    Dm = D.matrix
    for s in range(1, n):
        target = _theta(ops, iso, model, xs, p**s - 1)
        sol = Dm.solve(ops.col(ops.mul(D(x0), target)))
        if sol is None:
            return None
        x = ops.elem(sol)
        cst = ops.as_scalar(ops.pow(x, p))
        if cst is None:
            return None
        xs.append(ops.sub(x, ops.scale(F.pth_root(cst), ops.one())))
    images = [_theta(ops, iso, model, xs, a) for a in range(model.dim)]
    if Matrix.hstack([ops.col(f) for f in images]).rank() != c.A.dim:
        return None
    Gm = ops.mul_matrix(g) @ Dm
    operators = [ops.mul_matrix(f) @ Gm for f in images]
    return xs, g, operators


def _theta(ops, iso, model, xs, a):
    """Image of ``x^(a)`` given images ``xs`` of ``x^(p^s)``."""
    F = ops.R
    digits = iso._digits[(a,)]
    c = iso.constant((a,))
    f = ops.scale(F.from_int(int(c)), ops.one())
    for x, d in zip(xs, digits):
        if d:
            f = ops.mul(f, ops.pow(x, d))
    return f


def recognize_w1n(c, strict=False, seed=0, max_tries=5000):
    """Explicit isomorphism ``W(1; n) (x) K -> L`` or a :class:`NonSplitCertificate`.

    With normalised eigenvectors ``u`` (``u^p = 1``) the maximal ideal is
    spanned by the ``u - 1``.  A coordinate ``x0`` in it determines the rest
    of a divided power basis through linear equations; ``x0 = u - 1`` works
    for ``n = 1`` and seeded random elements of the ideal are tried otherwise.
    """
    if len(c.derivations) != 1:
        raise ValueError("recognition needs a single generating derivation")
    D = c.derivations[0]
    try:
        ed = eigen_decompose(c, D)
    except InseparableCharPoly as exc:
        if strict:
            raise
        return NonSplitCertificate(exc.coefficients, str(exc))
    c2 = ed.candidate
    D2 = c2.derivations[0]
    n = len(ed.basis_eigenvalues)
    ops = c2.ops
    F = c2.field
    first = tuple(1 if j == 0 else 0 for j in range(n))
    shifted = [ops.sub(u, ops.one()) for k, u in ed.vectors.items() if any(k)]
    rng = random.Random(seed)
    x0 = ops.sub(ed.vectors[first], ops.one())
    found = None
    for _ in range(max_tries):
        found = _w1n_isomorphism(c2, x0, n, D2)
        if found is not None:
            break
        x0 = ops.zero()
        for f in shifted:
            x0 = ops.add(x0, ops.scale(F.random(rng), f))
    if found is None:
        raise InternalDecompositionFailure("no divided power coordinate found")
    xs, g, operators = found
    L = c2.lie
    B = Matrix.hstack([M.reshape(M.shape[0] * M.shape[1], 1) for M in L.embedding])
    cols = []
    for M in operators:
        x = B.solve(M.reshape(M.shape[0] * M.shape[1], 1))
        if x is None:
            raise InternalDecompositionFailure("image operator is outside the Lie algebra")
        cols.append(x.column(0))
    P = Matrix.from_columns(F, cols)
    if P.rank() != L.dim:
        raise InternalDecompositionFailure("image operators are not a basis")
    W = witt_algebra(F.p, 1, (n,), allow_small_p=True)
    verified = structure_constants_match(LieData.from_operators(F, operators), W)
    if not verified:
        raise InternalDecompositionFailure("structure constants do not match W(1;n)")
    return W1nIsomorphism(F, n, xs, g, operators, P, verified, c2)


def structure_constants_match(L, W):
    """Exact equality of structure constants, reading ``W``'s integer constants in ``L``'s field."""
    if L.dim != W.dim:
        return False
    F = L.ring
    Wc = W.structure_constants()
    Lc = L.structure_constants()
    for i in range(L.dim):
        for j in range(L.dim):
            for k in range(L.dim):
                if Lc[i][j][k] != F.from_int(int(W.ring.to_json(Wc[i][j][k]))):
                    return False
    return True


# ---------------------------------------------------------------------------
# trivialisation of the inseparable form
# ---------------------------------------------------------------------------

@dataclass
class Trivialization:
    field: object  # F_p(u), u^p = t
    z: object  # x - u, with z^p = 0
    z_power_is_zero: bool
    candidate: object  # base-changed candidate with generator (1 + z) D
    operators: list  # images of z^(a) d_z
    verified: bool

    def to_json(self):
        ops = self.candidate.ops
        return {
            "field": self.field.spec,
            "z": ops.format(self.z),
            "z^p": "0" if self.z_power_is_zero else "nonzero",
            "verified": self.verified,
        }


def trivialize_insep(c):
    """Split the one-variable inseparable form over ``K(t^(1/p))``."""
    A = c.A
    K = c.field
    if not (isinstance(A, PIAAlgebra) and A.r == 1 and isinstance(K, RatFuncField)):
        raise ValueError("expected the one-variable form over a rational function field")
    p = K.p
    K2 = RatFuncField(K.base, "u")
    embed = lambda a: K.substitute_power(a, K2, p)  # noqa: E731
    c2 = c.base_change(K2, embed)
    A2, ops = c2.A, c2.ops
    u = K2.gen
    z = ops.sub(A2.gen(0), ops.scale(u, ops.one()))
    zp_zero = ops.is_zero(ops.pow(z, p))
    D = c2.derivations[0]
    if not _elements_equal(ops, D(z), ops.one()):
        raise InternalDecompositionFailure("D(z) is not 1")
    # z^(a) d_z -> (z^a / a!) D
    operators = []
    fact = K2.one
    for a in range(p):
        if a:
            fact = K2.mul(fact, K2.from_int(a))
        za = ops.scale(K2.inv(fact), ops.pow(z, a))
        operators.append(ops.mul_matrix(za) @ D.matrix)
    W = witt_algebra(p, 1, (1,), allow_small_p=True)
    verified = zp_zero and structure_constants_match(LieData.from_operators(K2, operators), W)
    if not verified:
        raise InternalDecompositionFailure("trivialisation does not reproduce W(1;1)")
    gen = Derivation(A2, [ops.mul(ops.add(ops.one(), z), f) for f in D.coeffs])
    split = WittReeCandidate(A2, [gen], f"{c.name} over {K2.spec}")
    return Trivialization(K2, z, zp_zero, split, operators, verified)
