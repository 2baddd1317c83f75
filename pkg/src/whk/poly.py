"""Univariate polynomials over Q, just enough for splitting idempotents.

A polynomial is a tuple of Fractions, constant term first, with no
trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .exact import Matrix, ZERO, ONE, rref, q

Poly = tuple


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    return len(p) - 1


def monic(p: Poly) -> Poly:
    lead = p[-1]
    return tuple(c / lead for c in p)


def padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)])


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    quot = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and r:
        c = r[-1] / lead
        shift = len(r) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r = list(trim(r))
    return trim(quot), trim(r)


def pgcd(a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return monic(a) if a else ()


def derivative(p: Poly) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def squarefree(p: Poly) -> Poly:
    g = pgcd(p, derivative(p))
    return monic(pdivmod(p, g)[0])


def evaluate(p: Poly, x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def evaluate_matrix(p: Poly, m: Matrix) -> Matrix:
    n = m.rows
    acc = Matrix.zeros(n, n)
    eye = Matrix.identity(n)
    for c in reversed(p):
        acc = acc @ m + eye.scale(c)
    return acc


def minimal_polynomial(m: Matrix) -> Poly:
    """Monic minimal polynomial of a square matrix (Krylov on the powers)."""
    if not m.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.rows
    powers = [Matrix.identity(n).flatten()]
    cur = Matrix.identity(n)
    for k in range(1, n + 1):
        cur = cur @ m
        vecs = powers + [cur.flatten()]
        # find the first k with M^k in the span of lower powers
        cols = Matrix.from_columns(vecs[:-1])
        red, piv = rref([list(r) + [x] for r, x in zip(cols.to_rows(), vecs[-1])], k + 1)
        if not (piv and piv[-1] == k):
            coeffs = [ZERO] * k
            for row, p in zip(red, piv):
                coeffs[p] = row[k]
            return tuple([-c for c in coeffs] + [ONE])
        powers.append(cur.flatten())
    raise ArithmeticError("Cayley-Hamilton bound exceeded")


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> tuple[list[Fraction], Poly]:
    """Distinct rational roots of ``p`` and the monic cofactor left over.

    The cofactor has no rational roots; if it has positive degree then ``p``
    does not split over Q.
    """
    p = squarefree(trim(p))
    roots: list[Fraction] = []
    if p and not p[0]:
        roots.append(ZERO)
        p = pdivmod(p, (ZERO, ONE))[0]
    if degree(p) <= 0:
        return sorted(roots), p
    # clear denominators to get an integer polynomial
    lcm = 1
    for c in p:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p]
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for sgn in (1, -1):
                r = Fraction(sgn * a, b)
                if r not in roots and degree(p) > 0 and not evaluate(p, r):
                    roots.append(r)
                    p = pdivmod(p, (-r, ONE))[0]
    return sorted(roots), monic(p) if p else p


def from_roots(roots: Sequence) -> Poly:
    out: Poly = (ONE,)
    for r in roots:
        out = pmul(out, (-q(r), ONE))
    return out
