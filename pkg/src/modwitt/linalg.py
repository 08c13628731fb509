"""Exact matrices over the scalar rings of :mod:`modwitt.scalars`.

Two storage backends sit behind one :class:`Matrix` type.

Finite rings use a dense ``int64`` array of shape ``(rows, cols, dig)``
holding every entry as its ``F_p`` digit vector.  A ring product of digit
vectors is a contraction with the ring's multiplication tensor ``T``, so
matrix products become a single float64 BLAS call followed by reduction
mod ``p`` (exact: all partial sums stay far below ``2**53``).

Infinite rings (rational function fields) use nested lists of elements
with Gauss-Jordan elimination on reduced fractions.

Elimination over a finite local ring (a :class:`~modwitt.scalars.TestRing`)
pivots on units only, which is enough to invert any invertible matrix.
"""
from __future__ import annotations

import numpy as np

from . import polys
from .errors import NotInvertible

_EXACT_LIMIT = float(2**52)


def _unit_mask(R, X):
    """Boolean mask of entries (digit vectors on the last axis) that are units."""
    if R.kind == "test":
        return X[..., : R.base.dig].any(axis=-1)
    return X.any(axis=-1)


def _check_exact(p, inner):
    if (p - 1) ** 2 * inner >= _EXACT_LIMIT:
        raise OverflowError("matrix too large for exact float64 accumulation")


def _fmatmul(A, B, p):
    """Product of 2-D int arrays mod ``p`` through float64 BLAS."""
    _check_exact(p, A.shape[1])
    C = A.astype(np.float64) @ B.astype(np.float64)
    return np.fmod(C, p).astype(np.int64)


def _dense_matmul(R, A, B):
    p, k = R.p, R.dig
    i, j, _ = A.shape
    kk = B.shape[1]
    if k == 1:
        return _fmatmul(A[:, :, 0], B[:, :, 0], p)[:, :, None]
    # one factor with entries in the prime field: digits do not interact
    if not B[:, :, 1:].any():
        C = _fmatmul(A.transpose(0, 2, 1).reshape(i * k, j), B[:, :, 0], p)
        return C.reshape(i, k, kk).transpose(0, 2, 1)
    if not A[:, :, 1:].any():
        C = _fmatmul(A[:, :, 0], B.reshape(j, kk * k), p)
        return C.reshape(i, kk, k)
    u = R.T.shape[0]
    BT = _fmatmul(B.reshape(j * kk, k), R.T.transpose(1, 0, 2).reshape(k, u * k), p)
    BT = BT.reshape(j, kk, u, k).transpose(0, 2, 1, 3)
    C = _fmatmul(A.reshape(i, j * k), BT.reshape(j * k, kk * k), p)
    return C.reshape(i, kk, k)


def _dense_outer(R, f, g):
    """``out[r, c] = f[r] * g[c]`` for digit vectors ``f`` (r, dig), ``g`` (c, dig)."""
    p, k = R.p, R.dig
    if k == 1:
        return (np.outer(f[:, 0], g[:, 0]) % p)[:, :, None]
    GT = _fmatmul(g, R.T.transpose(1, 0, 2).reshape(k, k * k), p)
    GT = GT.reshape(g.shape[0], k, k).transpose(1, 0, 2).reshape(k, -1)
    return _fmatmul(f, GT, p).reshape(f.shape[0], g.shape[0], k)


def _dense_emul(R, X, Y):
    """Entrywise ring product with numpy broadcasting."""
    if R.dig == 1:
        return X * Y % R.p
    k = R.dig
    X, Y = np.broadcast_arrays(X, Y)
    shape = X.shape[:-1]
    XT = (X.reshape(-1, k) @ R.T.reshape(k, k * k)).reshape(-1, k, k)
    return (np.einsum("nv,nvw->nw", Y.reshape(-1, k), XT) % R.p).reshape(*shape, k)


def _digits_inverse(R, d):
    return np.asarray(R.to_digits(R.inv(R.from_digits(tuple(int(x) for x in d)))), dtype=np.int64)


def _dense_rref(R, X, stop_cols=None):
    """Reduced row echelon form over a finite field or local ring.

    Only the first ``stop_cols`` columns are used for pivots.  Returns the
    reduced copy and the pivot column list.
    """
    X = X.copy()
    p = R.p
    rows, cols, k = X.shape
    stop = cols if stop_cols is None else stop_cols
    pivots = []
    r = 0
    for c in range(stop):
        if r == rows:
            break
        mask = _unit_mask(R, X[r:, c])
        hit = np.flatnonzero(mask)
        if hit.size == 0:
            continue
        piv = r + int(hit[0])
        if piv != r:
            X[[r, piv]] = X[[piv, r]]
        if k == 1:
            inv = pow(int(X[r, c, 0]), p - 2, p)
            X[r, c:, 0] = X[r, c:, 0] * inv % p
            col = X[:, c, 0].copy()
            col[r] = 0
            nz = np.flatnonzero(col)
            if nz.size:
                X[nz, c:, 0] = (X[nz, c:, 0] - np.outer(col[nz], X[r, c:, 0])) % p
        else:
            inv = _digits_inverse(R, X[r, c])
            X[r, c:] = _dense_emul(R, inv[None, :], X[r, c:])
            col = X[:, c].copy()
            col[r] = 0
            nz = np.flatnonzero(col.any(axis=1))
            if nz.size:
                X[nz, c:] = (X[nz, c:] - _dense_outer(R, col[nz], X[r, c:])) % p
        pivots.append(c)
        r += 1
    return X, pivots


# ---------------------------------------------------------------------------
# generic list backend
# ---------------------------------------------------------------------------

def _gen_matmul(R, A, B):
    if not A or not B:
        return [[R.zero] * (len(B[0]) if B else 0) for _ in A]
    cols = len(B[0])
    out = []
    for row in A:
        acc = [R.zero] * cols
        for a, brow in zip(row, B):
            if R.is_zero(a):
                continue
            for c, b in enumerate(brow):
                if not R.is_zero(b):
                    acc[c] = R.add(acc[c], R.mul(a, b))
        out.append(acc)
    return out


def _gen_rref(R, X, stop_cols=None):
    X = [list(row) for row in X]
    rows = len(X)
    cols = len(X[0]) if X else 0
    stop = cols if stop_cols is None else stop_cols
    pivots = []
    r = 0
    for c in range(stop):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if R.is_unit(X[i][c])), None)
        if piv is None:
            continue
        X[r], X[piv] = X[piv], X[r]
        inv = R.inv(X[r][c])
        X[r] = [X[r][j] if j < c else R.mul(inv, X[r][j]) for j in range(cols)]
        for i in range(rows):
            if i != r and not R.is_zero(X[i][c]):
                f = X[i][c]
                X[i] = [
                    X[i][j] if j < c else R.sub(X[i][j], R.mul(f, X[r][j]))
                    for j in range(cols)
                ]
        pivots.append(c)
        r += 1
    return X, pivots


# ---------------------------------------------------------------------------
# Matrix
# ---------------------------------------------------------------------------

class Matrix:
    """An immutable-by-convention matrix over a scalar ring."""

    __slots__ = ("ring", "data", "shape")

    def __init__(self, ring, data, shape=None):
        self.ring = ring
        self.data = data
        if ring.is_finite:
            self.shape = data.shape[:2]
        else:
            self.shape = shape if shape is not None else (len(data), len(data[0]) if data else 0)

    @property
    def dense(self):
        return self.ring.is_finite

    # ---- construction ----------------------------------------------------
    @classmethod
    def zeros(cls, R, rows, cols):
        if R.is_finite:
            return cls(R, np.zeros((rows, cols, R.dig), dtype=np.int64))
        return cls(R, [[R.zero] * cols for _ in range(rows)], (rows, cols))

    @classmethod
    def identity(cls, R, n):
        M = cls.zeros(R, n, n)
        if R.is_finite:
            one = np.asarray(R.to_digits(R.one), dtype=np.int64)
            M.data[np.arange(n), np.arange(n)] = one
        else:
            for i in range(n):
                M.data[i][i] = R.one
        return M

    @classmethod
    def from_rows(cls, R, rows, ncols=None):
        rows = [list(r) for r in rows]
        nc = len(rows[0]) if rows else (ncols or 0)
        if R.is_finite:
            if R.dig == 1:
                arr = np.asarray(rows, dtype=np.int64).reshape(len(rows), nc, 1) % R.p
            else:
                arr = np.asarray(
                    [[R.to_digits(x) for x in row] for row in rows], dtype=np.int64
                ).reshape(len(rows), nc, R.dig)
            return cls(R, arr)
        return cls(R, rows, (len(rows), nc))

    @classmethod
    def from_columns(cls, R, cols, nrows=None):
        cols = [list(c) for c in cols]
        if not cols:
            return cls.zeros(R, nrows or 0, 0)
        return cls.from_rows(R, cols).T

    @classmethod
    def from_fp(cls, R, arr):
        """Wrap a 2-D array of ``F_p`` values as a matrix over ``R``."""
        arr = np.asarray(arr, dtype=np.int64) % R.p
        if R.is_finite:
            out = np.zeros(arr.shape + (R.dig,), dtype=np.int64)
            one = np.asarray(R.to_digits(R.one), dtype=np.int64)
            out[...] = arr[..., None] * one
            return cls(R, out % R.p)
        return cls(R, [[R.from_int(int(x)) for x in row] for row in arr], arr.shape)

    @classmethod
    def hstack(cls, mats):
        R = mats[0].ring
        if R.is_finite:
            return cls(R, np.concatenate([m.data for m in mats], axis=1))
        rows = [sum((m.data[i] for m in mats), []) for i in range(mats[0].shape[0])]
        return cls(R, rows, (mats[0].shape[0], sum(m.shape[1] for m in mats)))

    @classmethod
    def vstack(cls, mats):
        R = mats[0].ring
        if R.is_finite:
            return cls(R, np.concatenate([m.data for m in mats], axis=0))
        rows = [list(r) for m in mats for r in m.data]
        return cls(R, rows, (len(rows), mats[0].shape[1]))

    # ---- access ------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        if self.dense:
            R = self.ring
            return R.from_digits(tuple(int(x) for x in self.data[i, j]))
        return self.data[i][j]

    def rows(self):
        r, c = self.shape
        if self.dense:
            R = self.ring
            if R.dig == 1:
                return [[int(x) for x in row] for row in self.data[:, :, 0]]
            return [[R.from_digits(tuple(int(x) for x in e)) for e in row] for row in self.data]
        return [list(row) for row in self.data]

    def columns(self):
        return self.T.rows()

    def column(self, j):
        return [row[0] for row in self.take_cols([j]).rows()]

    def take_rows(self, idx):
        idx = list(idx)
        if self.dense:
            return Matrix(self.ring, self.data[idx])
        return Matrix(self.ring, [list(self.data[i]) for i in idx], (len(idx), self.shape[1]))

    def take_cols(self, idx):
        idx = list(idx)
        if self.dense:
            return Matrix(self.ring, self.data[:, idx])
        return Matrix(self.ring, [[row[j] for j in idx] for row in self.data], (self.shape[0], len(idx)))

    def reshape(self, rows, cols):
        """Row-major reshape (used to flatten square matrices into vectors)."""
        if self.dense:
            return Matrix(self.ring, self.data.reshape(rows, cols, self.ring.dig))
        flat = [x for row in self.data for x in row]
        return Matrix(self.ring, [flat[i * cols:(i + 1) * cols] for i in range(rows)], (rows, cols))

    @property
    def T(self):
        if self.dense:
            return Matrix(self.ring, np.ascontiguousarray(self.data.transpose(1, 0, 2)))
        r, c = self.shape
        return Matrix(self.ring, [[self.data[i][j] for i in range(r)] for j in range(c)], (c, r))

    def fp(self):
        """The underlying ``F_p`` array of a prime-field matrix."""
        assert self.dense and self.ring.dig == 1
        return self.data[:, :, 0]

    # ---- arithmetic ------------------------------------------------------
    def _binary(self, other, op):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        R = self.ring
        if self.dense:
            return Matrix(R, op(self.data, other.data) % R.p)
        f = R.add if op is np.add else R.sub
        return Matrix(R, [[f(a, b) for a, b in zip(x, y)] for x, y in zip(self.data, other.data)], self.shape)

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __neg__(self):
        R = self.ring
        if self.dense:
            return Matrix(R, -self.data % R.p)
        return Matrix(R, [[R.neg(a) for a in row] for row in self.data], self.shape)

    def scale(self, c):
        R = self.ring
        if self.dense:
            cd = np.asarray(R.to_digits(c), dtype=np.int64)
            if R.dig == 1:
                return Matrix(R, self.data * cd % R.p)
            # multiplication by c as a dig x dig matrix on digit vectors
            CT = np.tensordot(cd, R.T, axes=(0, 0))
            k = R.dig
            out = _fmatmul(self.data.reshape(-1, k), CT, R.p)
            return Matrix(R, out.reshape(self.data.shape))
        return Matrix(R, [[R.mul(c, a) for a in row] for row in self.data], self.shape)

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        if self.dense:
            return Matrix(R, _dense_matmul(R, self.data, other.data))
        return Matrix(R, _gen_matmul(R, self.data, other.data), (self.shape[0], other.shape[1]))

    def __pow__(self, n):
        result = Matrix.identity(self.ring, self.shape[0])
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        if self.dense:
            return bool(np.array_equal(self.data, other.data))
        return self.data == other.data

    __hash__ = None

    def is_zero(self):
        if self.dense:
            return not self.data.any()
        R = self.ring
        return all(R.is_zero(a) for row in self.data for a in row)

    def is_identity(self):
        return self.shape[0] == self.shape[1] and self == Matrix.identity(self.ring, self.shape[0])

    def nonzero_entries(self):
        """Mask (nested lists for generic rings) of nonzero entries."""
        if self.dense:
            return self.data.any(axis=-1)
        R = self.ring
        return np.array([[not R.is_zero(a) for a in row] for row in self.data], dtype=bool).reshape(self.shape)

    # ---- elimination -----------------------------------------------------
    def rref(self, stop_cols=None):
        R = self.ring
        if self.dense:
            X, piv = _dense_rref(R, self.data, stop_cols)
            return Matrix(R, X), piv
        X, piv = _gen_rref(R, self.data, stop_cols)
        return Matrix(R, X, self.shape), piv

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Matrix whose columns form a basis of ``{v : self @ v = 0}`` (fields only)."""
        R = self.ring
        rows, cols = self.shape
        E, piv = self.rref()
        free = [c for c in range(cols) if c not in set(piv)]
        N = Matrix.zeros(R, cols, len(free))
        if not free:
            return N
        Ef = E.take_rows(range(len(piv))).take_cols(free)
        if self.dense:
            N.data[piv] = (-Ef.data) % R.p
            one = np.asarray(R.to_digits(R.one), dtype=np.int64)
            N.data[free, np.arange(len(free))] = one
        else:
            for r, c in enumerate(piv):
                N.data[c] = [R.neg(x) for x in Ef.data[r]]
            for k, c in enumerate(free):
                N.data[c][k] = R.one
        return N

    def inverse(self):
        n = self.shape[0]
        if self.shape[1] != n:
            raise NotInvertible("non-square matrix")
        aug = Matrix.hstack([self, Matrix.identity(self.ring, n)])
        E, piv = aug.rref(stop_cols=n)
        if piv != list(range(n)):
            raise NotInvertible("matrix is singular")
        return E.take_cols(range(n, 2 * n))

    def solve(self, b):
        """Some ``x`` with ``self @ x = b`` (``b`` a matrix), or ``None``."""
        rows, cols = self.shape
        aug = Matrix.hstack([self, b])
        E, piv = aug.rref(stop_cols=cols)
        rest = E.take_rows(range(len(piv), rows)).take_cols(range(cols, cols + b.shape[1]))
        if not rest.is_zero():
            return None
        x = Matrix.zeros(self.ring, cols, b.shape[1])
        sol = E.take_rows(range(len(piv))).take_cols(range(cols, cols + b.shape[1]))
        if self.dense:
            x.data[piv] = sol.data
        else:
            for r, c in enumerate(piv):
                x.data[c] = list(sol.data[r])
        return x

    def charpoly(self):
        """Characteristic polynomial ``det(T - M)`` as a coefficient tuple (fields only)."""
        return charpoly(self.ring, self.rows())

    def format(self):
        R = self.ring
        return [[R.format(x) for x in row] for row in self.rows()]

    def __repr__(self):
        return f"Matrix({self.ring.spec}, {self.shape[0]}x{self.shape[1]})"


def charpoly(F, rows):
    """Characteristic polynomial by reduction to Hessenberg form."""
    n = len(rows)
    H = [list(r) for r in rows]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if not F.is_zero(H[i][m - 1])), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for r in range(n):
                H[r][i], H[r][m] = H[r][m], H[r][i]
        t = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = F.mul(H[i][m - 1], t)
            if F.is_zero(u):
                continue
            for j in range(n):
                H[i][j] = F.sub(H[i][j], F.mul(u, H[m][j]))
            for r in range(n):
                H[r][m] = F.add(H[r][m], F.mul(u, H[r][i]))
    # recurrence on leading principal minors of T - H
    P = [(F.one,)]
    for m in range(1, n + 1):
        pm = polys.mul(F, (F.neg(H[m - 1][m - 1]), F.one), P[m - 1])
        t = F.one
        for i in range(1, m):
            t = F.mul(t, H[m - i][m - i - 1])
            c = F.mul(t, H[m - i - 1][m - 1])
            pm = polys.sub(F, pm, polys.scale(F, c, P[m - i - 1]))
        P.append(pm)
    return P[n]


class Echelon:
    """Incrementally maintained reduced basis of a row space (fields only).

    Rows of ``basis`` each carry a ``1`` at their own pivot column and ``0``
    at every other pivot column.  New batches are reduced against the
    current basis with one matrix product, then echelonized among
    themselves.
    """

    def __init__(self, ring, ncols):
        self.ring = ring
        self.ncols = ncols
        self.basis = Matrix.zeros(ring, 0, ncols)
        self.pivots = []

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, X):
        if not self.pivots:
            return X
        return X - X.take_cols(self.pivots) @ self.basis

    def contains(self, X):
        return self.reduce(X).is_zero()

    def add(self, X):
        """Add the rows of ``X``; return the indices (into the new basis) of rows added."""
        res = self.reduce(X)
        E, piv = res.rref()
        if not piv:
            return []
        new = E.take_rows(range(len(piv)))
        if self.pivots:
            self.basis = self.basis - self.basis.take_cols(piv) @ new
            self.basis = Matrix.vstack([self.basis, new])
        else:
            self.basis = new
        start = len(self.pivots)
        self.pivots.extend(piv)
        return list(range(start, len(self.pivots)))

    def coordinates(self, X):
        """Coordinates of rows of ``X`` (assumed inside the span) in the basis."""
        return X.take_cols(self.pivots)
