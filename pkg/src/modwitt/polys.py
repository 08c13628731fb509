"""Dense univariate polynomials over a scalar field.

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is the empty tuple.  Every function
takes the coefficient ring as its first argument.
"""
from __future__ import annotations


def trim(F, c):
    c = list(c)
    while c and F.is_zero(c[-1]):
        c.pop()
    return tuple(c)


def degree(f):
    return len(f) - 1


def add(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero
        b = g[i] if i < len(g) else F.zero
        out.append(F.add(a, b))
    return trim(F, out)


def neg(F, f):
    return tuple(F.neg(a) for a in f)


def sub(F, f, g):
    return add(F, f, neg(F, g))


def scale(F, c, f):
    if F.is_zero(c):
        return ()
    return trim(F, [F.mul(c, a) for a in f])


def mul(F, f, g):
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv_lead = F.inv(g[-1])
    dg = len(g) - 1
    q = [F.zero] * max(len(f) - dg, 0)
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv_lead)
        q[k - dg] = c
        for j, b in enumerate(g):
            f[k - dg + j] = F.sub(f[k - dg + j], F.mul(c, b))
    return trim(F, q), trim(F, f[:dg])


def monic(F, f):
    if not f:
        return f
    return scale(F, F.inv(f[-1]), f)


def gcd(F, f, g):
    while g:
        f, g = g, divmod_(F, f, g)[1]
    return monic(F, f)


def derivative(F, f):
    return trim(F, [F.mul(F.from_int(i), f[i]) for i in range(1, len(f))])


def evaluate(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def powmod(F, f, e, m):
    result = (F.one,)
    base = divmod_(F, f, m)[1]
    while e:
        if e & 1:
            result = divmod_(F, mul(F, result, base), m)[1]
        base = divmod_(F, mul(F, base, base), m)[1]
        e >>= 1
    return result


def is_separable(F, f):
    return degree(gcd(F, f, derivative(F, f))) == 0


def distinct_degree_factorization(F, f):
    """Split a squarefree polynomial over a finite field into equal-degree parts.

    Returns a list of (degree, product of all irreducible factors of that
    degree) pairs.
    """
    q = F.order
    f = monic(F, f)
    out = []
    x = (F.zero, F.one)
    h = x
    i = 0
    while degree(f) > 0:
        i += 1
        if 2 * i > degree(f):
            out.append((degree(f), f))
            break
        h = powmod(F, h, q, f)
        g = gcd(F, f, sub(F, h, x))
        if degree(g) > 0:
            out.append((i, g))
            f = divmod_(F, f, g)[0]
            h = divmod_(F, h, f)[1] if degree(f) > 0 else h
    return out


def is_irreducible(F, f):
    if degree(f) <= 0:
        return False
    if F.order is None:
        raise ValueError("irreducibility test needs a finite field")
    if not is_separable(F, f):
        return False
    parts = distinct_degree_factorization(F, f)
    return len(parts) == 1 and parts[0][0] == degree(f)


def fmt(F, f, var="T"):
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if F.is_zero(c):
            continue
        cs = F.format(c)
        if i == 0:
            terms.append(cs)
        elif c == F.one:
            terms.append(var if i == 1 else f"{var}^{i}")
        else:
            terms.append(f"({cs})*{var}" if i == 1 else f"({cs})*{var}^{i}")
    return " + ".join(terms)
