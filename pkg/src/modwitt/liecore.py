"""Derivations, generalized Witt algebras and Lie algebras by structure constants.

A Lie algebra is stored as its list of adjoint matrices ``ad(e_i)``, with
``ad(e_i)[k, j]`` the coefficient of ``e_k`` in ``[e_i, e_j]``.  All the
structural computations (derivation algebra, centre, enveloping algebra,
simplicity) reduce to exact linear algebra on these matrices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .dpalg import DPAlgebra
from .errors import IterationCapExceeded, NotADerivation
from .linalg import Echelon, Matrix, _fmatmul
from .scalars import PrimeField, lucas_binomial

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# derivations of a carrier algebra
# ---------------------------------------------------------------------------

def _partials(carrier):
    """Matrices of the coordinate derivations of a carrier algebra."""
    cache = getattr(carrier, "_partials_cache", None)
    if cache is not None:
        return cache
    if isinstance(carrier, DPAlgebra):
        mats = [carrier.partial(i) for i in range(carrier.m)]
    else:
        R = carrier.ring
        mats = []
        for j in range(carrier.r):
            cols = []
            for e in carrier.monomials:
                if e[j] == 0:
                    cols.append(carrier.zero())
                else:
                    f = list(e)
                    f[j] -= 1
                    cols.append(carrier.monomial(f, R.from_int(e[j])))
            mats.append(Matrix.from_columns(R, cols))
    carrier._partials_cache = mats
    return mats


def _gens(carrier):
    if isinstance(carrier, DPAlgebra):
        return [carrier.x(i) for i in range(carrier.m)]
    return [carrier.gen(j) for j in range(carrier.r)]


def _nvars(carrier):
    return carrier.m if isinstance(carrier, DPAlgebra) else carrier.r


def _mul_matrix(carrier, f):
    if isinstance(carrier, DPAlgebra):
        return carrier.left_mul_matrix(f)
    return carrier.mul_matrix(f)


class Derivation:
    """``sum_i f_i d_i`` on a carrier (``DPAlgebra`` or ``PIAAlgebra``)."""

    def __init__(self, carrier, coeffs, matrix=None):
        self.carrier = carrier
        self.coeffs = list(coeffs)
        if len(self.coeffs) != _nvars(carrier):
            raise ValueError("one coefficient per variable is required")
        self._matrix = matrix

    @property
    def matrix(self):
        if self._matrix is None:
            parts = _partials(self.carrier)
            M = None
            for f, P in zip(self.coeffs, parts):
                term = _mul_matrix(self.carrier, f) @ P
                M = term if M is None else M + term
            self._matrix = M
        return self._matrix

    @classmethod
    def from_matrix(cls, carrier, M):
        """Re-express an operator as ``sum D(x_i) d_i``; fails if it is not of that form."""
        if isinstance(carrier, DPAlgebra):
            coeffs = [carrier.from_column(M, carrier.gen_index(i)) for i in range(carrier.m)]
        else:
            coeffs = [tuple(M.column(carrier.index[e])) for e in _gen_exponents(carrier)]
        D = cls(carrier, coeffs)
        if D.matrix != M:
            raise NotADerivation("operator is not in the span of the coordinate derivations")
        return D

    def __call__(self, f):
        if isinstance(self.carrier, DPAlgebra):
            return self.carrier.from_column(self.matrix @ Matrix(self.carrier.ring, f.vec[:, None, :]), 0)
        col = Matrix.from_columns(self.carrier.ring, [list(f)])
        return tuple((self.matrix @ col).column(0))

    def __add__(self, other):
        return Derivation.from_matrix(self.carrier, self.matrix + other.matrix)

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.matrix == other.matrix

    __hash__ = None

    def format(self):
        c = self.carrier
        names = [f"d{i + 1}" for i in range(_nvars(c))]
        parts = []
        for f, n in zip(self.coeffs, names):
            s = f.format() if isinstance(c, DPAlgebra) else c.format(f)
            if s != "0":
                parts.append(n if s == "1" else f"({s})*{n}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Derivation({self.format()})"


def _gen_exponents(carrier):
    out = []
    for j in range(carrier.r):
        e = [0] * carrier.r
        e[j] = 1
        out.append(tuple(e))
    return out


def bracket(D1, D2):
    """Commutator of two derivations, returned in coefficient form."""
    if D1.carrier is not D2.carrier and D1.carrier != D2.carrier:
        raise ValueError("derivations live on different algebras")
    M = D1.matrix @ D2.matrix - D2.matrix @ D1.matrix
    return Derivation.from_matrix(D1.carrier, M)


def is_leibniz(carrier, M, pairs=None):
    """Whether an operator matrix satisfies ``D(fg) = D(f) g + f D(g)`` on basis pairs."""
    if isinstance(carrier, DPAlgebra):
        A = carrier
        idx = range(A.dim) if pairs is None else pairs
        for a in idx:
            La = A.left_mul_matrix(A.from_column(Matrix.identity(A.ring, A.dim), a))
            Da = A.left_mul_matrix(A.from_column(M, a))
            if M @ La != Da + La @ M:
                return False
        return True
    for e in carrier.monomials:
        f = carrier.monomial(e)
        Lf = carrier.mul_matrix(f)
        Df = tuple((M @ Matrix.from_columns(carrier.ring, [list(f)])).column(0))
        if M @ Lf != carrier.mul_matrix(Df) + Lf @ M:
            return False
    return True


def is_special_derivation(D):
    """Whether ``D(x_i^(r)) = x_i^(r-1) D(x_i)`` for every variable and in-range ``r``.

    ``D`` may be a :class:`Derivation` or a bare operator matrix.  A
    derivation of ``A(m; n)`` is special exactly when it satisfies this
    rule on the variables; the special derivations are the ``A``-span of
    the coordinate derivations.
    """
    if isinstance(D, Derivation):
        A, M = D.carrier, D.matrix
    else:
        A, M = D
    for i in range(A.m):
        Dx = A.from_column(M, A.gen_index(i))
        for r in range(2, A.bounds[i]):
            lhs = A.from_column(M, A.index[_unit(A.m, i, r)])
            rhs = A.x(i, r - 1) * Dx
            if lhs != rhs:
                return False
    return True


def _unit(m, i, r):
    a = [0] * m
    a[i] = r
    return tuple(a)


# ---------------------------------------------------------------------------
# Lie algebras by adjoint matrices
# ---------------------------------------------------------------------------

@dataclass
class LieData:
    """A Lie algebra with basis ``e_0..e_{d-1}`` given by adjoint matrices."""

    ring: object
    ads: list
    labels: list = None
    embedding: list = None  # optional operator matrices realising the basis
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.labels is None:
            self.labels = [f"e{i}" for i in range(self.dim)]

    @property
    def dim(self):
        return len(self.ads)

    def ad(self, i):
        return self.ads[i]

    @property
    def fp_stack(self):
        """``(d, d, d)`` array of adjoint matrices for prime-field algebras."""
        if self.ring.kind != "prime":
            raise TypeError("fp_stack is only defined over prime fields")
        cached = getattr(self, "_fp_stack", None)
        if cached is None:
            cached = np.stack([a.fp() for a in self.ads]) if self.ads else np.zeros((0, 0, 0), dtype=np.int64)
            self._fp_stack = cached
        return cached

    def const(self, i, j, k):
        return self.ads[i][k, j]

    def ad_of(self, v):
        """``ad`` of the vector with coordinates ``v`` (list of scalars)."""
        R = self.ring
        d = self.dim
        if R.kind == "prime":
            coeffs = np.asarray(v, dtype=np.int64) % R.p
            out = np.tensordot(coeffs, self.fp_stack, axes=(0, 0)) % R.p
            return Matrix(R, out[:, :, None])
        total = Matrix.zeros(R, d, d)
        for c, A in zip(v, self.ads):
            if not R.is_zero(c):
                total = total + A.scale(c)
        return total

    def bracket(self, u, v):
        col = Matrix.from_columns(self.ring, [list(v)])
        return (self.ad_of(u) @ col).column(0)

    def basis_vector(self, i):
        R = self.ring
        v = [R.zero] * self.dim
        v[i] = R.one
        return v

    def structure_constants(self):
        """Nested list ``c[i][j][k]`` of scalars."""
        rows = [A.rows() for A in self.ads]
        d = self.dim
        return [[[rows[i][k][j] for k in range(d)] for j in range(d)] for i in range(d)]

    def is_antisymmetric(self):
        R = self.ring
        c = self.structure_constants()
        d = self.dim
        return all(
            R.is_zero(R.add(c[i][j][k], c[j][i][k])) for i in range(d) for j in range(i, d) for k in range(d)
        )

    def satisfies_jacobi(self):
        """Jacobi identity, checked as ``ad([e_i, e_j]) = [ad e_i, ad e_j]``."""
        d = self.dim
        R = self.ring
        if d == 0:
            return True
        if R.kind == "prime":
            S = self.fp_stack
            p = R.p
            prod = _fmatmul(S.reshape(d * d, d), S.transpose(1, 0, 2).reshape(d, d * d), p)
            prod = prod.reshape(d, d, d, d)  # [i, k, j, m] = (ad_i ad_j)[k, m]
            comm = (prod - prod.transpose(2, 1, 0, 3)) % p
            lhs = np.tensordot(S.transpose(0, 2, 1), S, axes=(2, 0)) % p  # [i, j, k, m]
            return bool(np.array_equal(lhs, comm.transpose(0, 2, 1, 3)))
        for i in range(d):
            for j in range(i + 1, d):
                v = [self.ads[i][k, j] for k in range(d)]
                if self.ad_of(v) != self.ads[i] @ self.ads[j] - self.ads[j] @ self.ads[i]:
                    return False
        return True

    def change_ring(self, ring, embed=None):
        """Same structure constants read in another ring (via ``embed`` or integers)."""
        embed = embed or (lambda x: ring.from_int(int(x)))
        ads = [Matrix.from_rows(ring, [[embed(x) for x in row] for row in A.rows()]) for A in self.ads]
        return LieData(ring, ads, list(self.labels), None, dict(self.meta))

    @classmethod
    def from_operators(cls, ring, mats, labels=None, meta=None):
        """Lie algebra spanned by linearly independent operators closed under commutators."""
        d = len(mats)
        if d == 0:
            return cls(ring, [], [], [], dict(meta or {}))
        n = mats[0].shape[0]
        B = Matrix.vstack([M.reshape(1, n * n) for M in mats])
        E, piv = B.rref()
        if len(piv) != d:
            raise ValueError("operators are linearly dependent")
        Binv = B.take_cols(piv).inverse()
        comms = []
        for i in range(d):
            for j in range(d):
                if j < i:
                    continue
                comms.append((i, j, mats[i] @ mats[j] - mats[j] @ mats[i]))
        C = Matrix.vstack([c.reshape(1, n * n) for _, _, c in comms])
        coords = C.take_cols(piv) @ Binv
        if coords @ B != C:
            raise NotADerivation("operator span is not closed under commutators")
        R = ring
        cols = [[[R.zero] * d for _ in range(d)] for _ in range(d)]  # cols[i][j] = coords of [e_i, e_j]
        rows = coords.rows()
        for (i, j, _), row in zip(comms, rows):
            cols[i][j] = row
            cols[j][i] = [R.neg(x) for x in row]
        ads = [Matrix.from_columns(R, cols[i]) for i in range(d)]
        return cls(R, ads, labels, list(mats), dict(meta or {}))

    def to_json(self):
        R = self.ring
        c = self.structure_constants()
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                terms = [[k, R.to_json(x)] for k, x in enumerate(c[i][j]) if not R.is_zero(x)]
                if terms:
                    brackets.append([i, j, terms])
        out = {"schema_version": SCHEMA_VERSION}
        out.update(self.meta)
        out.update({"ring": R.spec, "dim": self.dim, "basis": list(self.labels), "brackets": brackets})
        return out


def witt_label(alg, alpha, i):
    mono = alg.label(alpha)
    return f"d{i + 1}" if mono == "1" else f"{mono}*d{i + 1}"


def witt_algebra(p, m, n, ring=None, allow_small_p=False):
    """``W(m; n)`` with basis ``x^(alpha) d_i`` (``i`` major, ``alpha`` lexicographic).

    Structure constants come from the closed form
    ``[f d_i, g d_j] = f d_i(g) d_j - g d_j(f) d_i`` on monomials.
    """
    if p <= 3 and not allow_small_p:
        raise ValueError("generalized Witt algebras are only supported for p > 3")
    F = PrimeField(p)
    alg = DPAlgebra(p, m, n, F)
    N = alg.dim
    d = m * N
    S = np.zeros((d, d, d), dtype=np.int64)  # S[a, k, b]: coefficient of e_k in [e_a, e_b]
    mons = alg.monomials

    def mul_mono(al, be):
        ga = tuple(x + y for x, y in zip(al, be))
        if ga not in alg.index:
            return None, 0
        c = 1
        for x, y in zip(al, be):
            c = c * lucas_binomial(x + y, x, p) % p
        return alg.index[ga], c

    for i in range(m):
        for a, al in enumerate(mons):
            ea = i * N + a
            for j in range(m):
                for b, be in enumerate(mons):
                    eb = j * N + b
                    # f d_i(g) d_j
                    if be[i] > 0:
                        g1 = list(be)
                        g1[i] -= 1
                        idx, c = mul_mono(al, tuple(g1))
                        if c:
                            S[ea, j * N + idx, eb] += c
                    # - g d_j(f) d_i
                    if al[j] > 0:
                        f1 = list(al)
                        f1[j] -= 1
                        idx, c = mul_mono(be, tuple(f1))
                        if c:
                            S[ea, i * N + idx, eb] -= c
    S %= p
    R = F if ring is None else ring
    labels = [witt_label(alg, al, i) for i in range(m) for al in mons]
    meta = {"p": p, "m": m, "n": list(n)}
    if p == 2 and m == 1 and tuple(n) == (1,):
        meta["regime"] = "non-simple"
    L = LieData(F, [Matrix(F, S[a][:, :, None]) for a in range(d)], labels, None, meta)
    if R != F:
        L = L.change_ring(R)
    return L


def witt_derivations(alg):
    """The basis ``x^(alpha) d_i`` of ``W(m; n) (x) R`` as :class:`Derivation` objects."""
    out = []
    for i in range(alg.m):
        for al in alg.monomials:
            coeffs = [alg.zero() for _ in range(alg.m)]
            coeffs[i] = alg.monomial(al)
            out.append(Derivation(alg, coeffs))
    return out


def witt_operator_algebra(p, m, n, ring=None):
    """``W(m; n)`` built from operator commutators on ``A(m; n)`` (independent path)."""
    alg = DPAlgebra(p, m, n, ring)
    mats = [D.matrix for D in witt_derivations(alg)]
    labels = [witt_label(alg, al, i) for i in range(m) for al in alg.monomials]
    return LieData.from_operators(alg.ring, mats, labels, {"p": p, "m": m, "n": list(n)})


# ---------------------------------------------------------------------------
# structure computations
# ---------------------------------------------------------------------------

def lie_generating_set(L):
    """Greedy generating set with, for every spanned basis vector, a bracket word.

    Returns ``(gens, spanning)`` where ``spanning`` is a list of
    ``(vector, word)`` with ``word = ('g', t)`` for the ``t``-th generator
    or ``('b', t, s)`` meaning ``[gens[t], spanning[s].vector]``.
    """
    R = L.ring
    d = L.dim
    gens = []
    spanning = []
    ech = Echelon(R, d)
    for i in range(d):
        v = L.basis_vector(i)
        if ech.contains(Matrix.from_rows(R, [v])):
            continue
        gens.append(i)
        t = len(gens) - 1
        ech.add(Matrix.from_rows(R, [v]))
        spanning.append((v, ("g", t)))
        # spin up: bracket every spanned vector with every generator until closed
        queue = list(range(len(spanning)))
        done = set()
        while queue:
            s = queue.pop(0)
            for tt, g in enumerate(gens):
                if (tt, s) in done:
                    continue
                done.add((tt, s))
                w = (L.ads[g] @ Matrix.from_columns(R, [spanning[s][0]])).column(0)
                wm = Matrix.from_rows(R, [w])
                if ech.add(wm):
                    spanning.append((w, ("b", tt, s)))
                    queue.append(len(spanning) - 1)
        if ech.dim == d:
            break
    return gens, spanning


def derivation_algebra(L, method="generators"):
    """``Der(L)`` as a Lie algebra of ``d x d`` matrices.

    ``method='generators'`` solves for the images of a Lie generating set
    only and propagates through bracket words; ``method='direct'`` solves
    for the whole ``d x d`` matrix and is meant for cross-checking.
    """
    R = L.ring
    d = L.dim
    if method == "direct":
        eqs = _direct_equations(L)
        N = eqs.nullspace()
        mats = [N.take_cols([c]).reshape(d, d) for c in range(N.shape[1])]
    else:
        mats = _derivations_via_generators(L)
    labels = [f"D{i}" for i in range(len(mats))]
    meta = dict(L.meta)
    meta["of"] = "derivation algebra"
    return LieData.from_operators(R, mats, labels, meta)


def _direct_equations(L):
    # unknown: X (d x d) flattened row-major, X[r, k] = coefficient of e_r in D(e_k)
    R = L.ring
    d = L.dim
    blocks = []
    for i in range(d):
        for j in range(i + 1, d):
            # sum_k c_ij^k X[:, k] + ad(e_j) X[:, i] - ad(e_i) X[:, j] = 0
            cvec = L.ads[i].take_cols([j])  # d x 1, entry k = c_ij^k
            # coefficient of X[s, k] in row r: delta_{rs} c_ij^k + ad_j[r, s] delta_{ki} - ad_i[r, s] delta_{kj}
            Ident = Matrix.identity(R, d)
            E_c = _kron_cols(Ident, cvec.T)  # d x d^2: [r, (s,k)] = delta_rs c_k
            E_i = _kron_cols(L.ads[j], _unit_row(R, d, i))
            E_j = _kron_cols(L.ads[i], _unit_row(R, d, j))
            blocks.append(E_c + E_i - E_j)
    if not blocks:
        return Matrix.zeros(R, 0, d * d)
    return Matrix.vstack(blocks)


def _unit_row(R, d, i):
    M = Matrix.zeros(R, 1, d)
    if R.is_finite:
        M.data[0, i] = R.to_digits(R.one)
    else:
        M.data[0][i] = R.one
    return M


def _kron_cols(A, b):
    """``[r, (s, k)] = A[r, s] * b[0, k]`` as a ``rows x (cols * len(b))`` matrix."""
    R = A.ring
    r, s = A.shape
    k = b.shape[1]
    if R.is_finite:
        from .linalg import _dense_emul

        data = _dense_emul(R, A.data[:, :, None, :], b.data[0][None, None, :, :])
        return Matrix(R, data.reshape(r, s * k, R.dig))
    rows = [[R.mul(A.data[x][y], b.data[0][z]) for y in range(s) for z in range(k)] for x in range(r)]
    return Matrix(R, rows, (r, s * k))


def _derivations_via_generators(L):
    R = L.ring
    d = L.dim
    gens, spanning = lie_generating_set(L)
    g = len(gens)
    U = g * d
    # Dmat[s]: d x U matrix sending the unknown vector to D(spanning[s])
    dmats = []
    for v, word in spanning:
        if word[0] == "g":
            M = Matrix.zeros(R, d, U)
            t = word[1]
            blockI = Matrix.identity(R, d)
            M = _place_block(M, blockI, t * d)
        else:
            _, t, s = word
            w_prev, _ = spanning[s]
            # D([g, w]) = ad(g) D(w) - ad(w) D(g)
            M = L.ads[gens[t]] @ dmats[s]
            M = M - _place_block(Matrix.zeros(R, d, U), L.ad_of(w_prev), t * d)
        dmats.append(M)
    V = Matrix.from_columns(R, [v for v, _ in spanning])
    Vinv = V.inverse()
    Dall = Matrix.vstack([M.reshape(1, d * U) for M in dmats])  # s x (d*U)
    Dk = Vinv.T @ Dall  # row k: D(e_k) flattened (d x U)
    Dk_mats = [Dk.take_rows([k]).reshape(d, U) for k in range(d)]
    Dcat = Matrix.hstack(Dk_mats)  # d x (d*U), block k = D(e_k)
    ech = Echelon(R, U)
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    # term sum_k c_ij^k D(e_k): rows (pair) of constants times Dk
    Cp = Matrix.vstack([L.ads[i].take_cols([j]).T for i, j in pairs]) if pairs else None
    if Cp is not None:
        T1 = Cp @ Dk  # P x (d*U)
    adD = [L.ads[j] @ Dcat for j in range(d)]  # adD[j] block i = ad(e_j) D(e_i)
    batch = []
    for n_pair, (i, j) in enumerate(pairs):
        eq = (
            T1.take_rows([n_pair]).reshape(d, U)
            + adD[j].take_cols(range(i * U, (i + 1) * U))
            - adD[i].take_cols(range(j * U, (j + 1) * U))
        )
        batch.append(eq)
        if len(batch) * d >= 2000:
            ech.add(Matrix.vstack(batch))
            batch = []
            if ech.dim == U:
                break
    if batch and ech.dim < U:
        ech.add(Matrix.vstack(batch))
    if ech.dim:
        N = ech.basis.nullspace()
    else:
        N = Matrix.identity(R, U)
    mats = []
    for c in range(N.shape[1]):
        u = N.take_cols([c])
        cols = [(Dk_mats[k] @ u).column(0) for k in range(d)]
        mats.append(Matrix.from_columns(R, cols))
    return mats


def _place_block(M, B, col0):
    R = M.ring
    if R.is_finite:
        data = M.data.copy()
        data[:, col0:col0 + B.shape[1]] = B.data
        return Matrix(R, data)
    rows = [list(r) for r in M.data]
    for r in range(B.shape[0]):
        rows[r][col0:col0 + B.shape[1]] = B.data[r]
    return Matrix(R, rows, M.shape)


def p_power(D, p=None):
    """``D^p`` of an operator (matrix or :class:`Derivation`)."""
    M = D.matrix if isinstance(D, Derivation) else D
    return M ** (p or M.ring.p)


def in_span(target, basis_mats):
    """Coordinates of ``target`` in the span of ``basis_mats``, or ``None``."""
    n, k = target.shape
    B = Matrix.hstack([M.reshape(n * k, 1) for M in basis_mats])
    x = B.solve(target.reshape(n * k, 1))
    return None if x is None else x.column(0)


def center(L):
    """Basis (matrix columns) of the centre ``{z : [z, L] = 0}``."""
    R = L.ring
    d = L.dim
    if d == 0:
        return Matrix.zeros(R, 0, 0)
    # [z, e_j] = -ad(e_j) z
    return Matrix.vstack(L.ads).nullspace()


def derived_dim(L):
    d = L.dim
    if d < 2:
        return 0
    cols = [L.ads[i].take_cols([j]) for i in range(d) for j in range(i + 1, d)]
    return Matrix.hstack(cols).rank()


def enveloping_closure_dim(L, chunk=1500, cap=None):
    """Dimension of the associative algebra generated by ``1`` and all ``ad(x)``.

    Right multiplications ``[-, x] = -ad(x)`` generate nothing new, and the
    ``ad`` of a Lie generating set suffices, so the spin-up multiplies
    spanned elements by ``ad(g)`` for generators ``g``, one word length at a
    time, until the span is stable or all of ``End(L)``.
    """
    R = L.ring
    d = L.dim
    full = d * d
    if d == 0:
        return 0
    gens, _ = lie_generating_set(L)
    gmats = [L.ads[g] for g in gens]
    ech = Echelon(R, full)
    ech.add(Matrix.identity(R, d).reshape(1, full))
    frontier = [Matrix.identity(R, d)]
    processed = 0
    cap = cap if cap is not None else (full + 1) * max(1, len(gmats)) + 10
    while frontier and ech.dim < full:
        cands = [S @ G for S in frontier for G in gmats]
        frontier = []
        for k in range(0, len(cands), chunk):
            batch = cands[k:k + chunk]
            processed += len(batch)
            if processed > cap:
                raise IterationCapExceeded("enveloping algebra spin-up did not stabilise")
            new = ech.add(Matrix.vstack([M.reshape(1, full) for M in batch]))
            if new:
                B = ech.basis.take_rows(new)
                frontier.extend(B.take_rows([r]).reshape(d, d) for r in range(len(new)))
            if ech.dim == full:
                break
    return ech.dim


def _spin(R, mats, v, d):
    """Smallest subspace containing ``v`` stable under ``mats`` (as an Echelon)."""
    ech = Echelon(R, d)
    ech.add(Matrix.from_rows(R, [v]))
    queue = [list(v)]
    while queue and ech.dim < d:
        w = queue.pop()
        col = Matrix.from_columns(R, [w])
        imgs = [(M @ col).column(0) for M in mats]
        X = Matrix.from_rows(R, imgs)
        for r in ech.add(X):
            queue.append(ech.basis.take_rows([r]).rows()[0])
    return ech


@dataclass
class SimplicityReport:
    status: str  # "simple", "not simple", "inconclusive"
    certificate: dict

    @property
    def simple(self):
        return {"simple": True, "not simple": False}.get(self.status)

    def __bool__(self):
        return self.status == "simple"


def is_simple(L, seed=0, max_tries=64):
    """Simplicity of ``L`` through irreducibility of its adjoint module.

    ``[L, L] = L`` is checked first.  Then, following Norton's criterion, a
    random element ``theta`` of the enveloping algebra with an eigenvalue
    ``lam`` of geometric multiplicity one is sought; the adjoint module is
    irreducible iff a kernel vector of ``theta - lam`` generates ``L`` and a
    kernel vector of its transpose generates the dual module.
    """
    R = L.ring
    d = L.dim
    if d < 2:
        return SimplicityReport("not simple", {"reason": "dimension below 2", "dim": d})
    dd = derived_dim(L)
    if dd < d:
        return SimplicityReport("not simple", {"reason": "not perfect", "derived_dim": dd})
    gens, _ = lie_generating_set(L)
    gmats = [L.ads[g] for g in gens]
    gmats_t = [M.T for M in gmats]
    rng = random.Random(seed)
    if R.is_finite:
        scalars = [R.from_digits(tuple(int(x) for x in R.to_digits(c))) for c in R.elements()]
    else:
        scalars = [R.from_int(i) for i in range(R.p)]
    ident = Matrix.identity(R, d)
    for attempt in range(1, max_tries + 1):
        theta = Matrix.zeros(R, d, d)
        for length in (1, 2, 3):
            term = ident
            for _ in range(length):
                term = term @ L.ad_of([_rand(R, rng) for _ in range(d)])
            theta = theta + term.scale(_rand(R, rng))
        for lam in scalars:
            K = (theta - ident.scale(lam)).nullspace()
            if K.shape[1] != 1:
                continue
            v = K.column(0)
            sp = _spin(R, gmats, v, d)
            if sp.dim < d:
                return SimplicityReport(
                    "not simple",
                    {"reason": "proper ideal", "ideal_dim": sp.dim,
                     "ideal_basis": [[R.to_json(x) for x in row] for row in sp.basis.rows()]},
                )
            Kt = (theta.T - ident.scale(lam)).nullspace()
            w = Kt.column(0)
            spt = _spin(R, gmats_t, w, d)
            if spt.dim < d:
                return SimplicityReport(
                    "not simple",
                    {"reason": "proper submodule of the dual adjoint module", "dual_submodule_dim": spt.dim},
                )
            return SimplicityReport(
                "simple",
                {
                    "seed": seed,
                    "attempt": attempt,
                    "eigenvalue": R.to_json(lam),
                    "kernel_vector": [R.to_json(x) for x in v],
                    "spin_dim": sp.dim,
                    "dual_kernel_vector": [R.to_json(x) for x in w],
                    "dual_spin_dim": spt.dim,
                    "derived_dim": dd,
                },
            )
    return SimplicityReport("inconclusive", {"reason": "retry cap reached", "tries": max_tries, "seed": seed})


def _rand(R, rng):
    if R.is_finite:
        return R.random(rng)
    return R.from_int(rng.randrange(R.p))
