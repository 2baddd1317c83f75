"""Exhaustive Hopf-ideal search over a prime field.

This is an oracle for :func:`whk.modalg.largest_hopf_ideal_in`.  It shares
no code with the fixed-point algorithm: every subspace of ``W cap ker eps``
over GF(p) is enumerated and tested directly against the Hopf ideal
conditions, and the maximum is compared with the rational answer reduced
mod p.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .algebra import WeakHopfPresentation
from .exact import Subspace

SMALL_PRIMES = (3, 5, 7, 11, 13)


def _mod(x: Fraction, p: int) -> int:
    return x.numerator * pow(x.denominator, -1, p) % p


def rref_mod(rows: list, p: int) -> tuple:
    a = [list(r) for r in rows]
    ncols = len(a[0]) if a else 0
    piv, r = [], 0
    for c in range(ncols):
        k = next((i for i in range(r, len(a)) if a[i][c] % p), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
    return tuple(tuple(x) for x in a[:r]), tuple(piv)


def _in_span(basis: tuple, piv: tuple, v: Sequence, p: int) -> bool:
    r = [x % p for x in v]
    for b, c in zip(basis, piv):
        f = r[c]
        if f:
            r = [(x - f * y) % p for x, y in zip(r, b)]
    return not any(r)


def _null_space_mod(basis: tuple, piv: tuple, n: int, p: int) -> list:
    free = [j for j in range(n) if j not in piv]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, c in zip(basis, piv):
            v[c] = -row[f] % p
        out.append(v)
    return out


def subspaces_mod(k: int, p: int):
    """All subspaces of GF(p)^k, each as an RREF basis (tuple of rows)."""
    for d in range(k + 1):
        for piv in itertools.combinations(range(k), d):
            free = [(r, c) for r in range(d) for c in range(k) if c > piv[r] and c not in piv]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * k for _ in range(d)]
                for r, c in enumerate(piv):
                    rows[r][c] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                yield rows


class _ModH:
    """Structure constants of H reduced mod p."""

    def __init__(self, H: WeakHopfPresentation, p: int):
        self.p, self.n = p, H.dim
        n = self.n
        self.mult = {k: {t: _mod(c, p) for t, c in row.items()} for k, row in H.algebra.mult.items()}
        self.comult = [[(j, k, _mod(c, p)) for j, k, c in H.coalgebra.comult[i]] for i in range(n)]
        self.counit = [_mod(c, p) for c in H.coalgebra.counit]
        self.S = [[_mod(H.antipode[i, j], p) for j in range(n)] for i in range(n)]

    def mul(self, u, v):
        out = [0] * self.n
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        for k, c in self.mult.get((i, j), {}).items():
                            out[k] = (out[k] + a * b * c) % self.p
        return out

    def is_hopf_ideal(self, basis: list) -> bool:
        p, n = self.p, self.n
        red, piv = rref_mod(basis, p) if basis else ((), ())
        for v in red:
            if sum(a * e for a, e in zip(v, self.counit)) % p:
                return False
            Sv = [sum(self.S[i][j] * v[j] for j in range(n)) % p for i in range(n)]
            if not _in_span(red, piv, Sv, p):
                return False
            for i in range(n):
                b = [0] * n
                b[i] = 1
                if not _in_span(red, piv, self.mul(b, v), p) or not _in_span(red, piv, self.mul(v, b), p):
                    return False
        perp = _null_space_mod(red, piv, n, p)
        for v in red:
            D = {}
            for i, a in enumerate(v):
                if a:
                    for j, k, c in self.comult[i]:
                        D[(j, k)] = (D.get((j, k), 0) + a * c) % p
            for f in perp:
                for g in perp:
                    if sum(c * f[j] * g[k] for (j, k), c in D.items()) % p:
                        return False
        return True


def choose_prime(H: WeakHopfPresentation, W: Subspace) -> int:
    dens = {c.denominator for row in H.algebra.mult.values() for c in row.values()}
    dens |= {c.denominator for terms in H.coalgebra.comult for _, _, c in terms}
    dens |= {x.denominator for x in H.coalgebra.counit + H.unit}
    dens |= {H.antipode[i, j].denominator for i in range(H.dim) for j in range(H.dim)}
    dens |= {x.denominator for v in W.basis for x in v}
    for p in SMALL_PRIMES:
        if H.dim % p and all(d % p for d in dens):
            return p
    raise ValueError("no small prime avoids the denominators")


def reduce_subspace(V: Subspace, p: int) -> tuple:
    rows = [[_mod(x, p) for x in v] for v in V.basis]
    return rref_mod(rows, p)[0] if rows else ()


def brute_force_largest(H: WeakHopfPresentation, W: Subspace, p: int) -> tuple:
    """Every Hopf ideal inside W over GF(p); returns (maximum, count).

    Raises if the Hopf ideals have no maximum (they always should, since a
    sum of Hopf ideals is one).
    """
    M = _ModH(H, p)
    n = H.dim
    Wb = reduce_subspace(W, p)
    # restrict to the kernel of eps inside W
    eps_vals = [sum(a * e for a, e in zip(w, M.counit)) % p for w in Wb]
    k = len(Wb)
    if any(eps_vals):
        j = next(i for i, x in enumerate(eps_vals) if x)
        inv = pow(eps_vals[j], -1, p)
        gens = []
        for i in range(k):
            if i == j:
                continue
            f = eps_vals[i] * inv % p
            gens.append([(x - f * y) % p for x, y in zip(Wb[i], Wb[j])])
    else:
        gens = [list(w) for w in Wb]
    found = []
    for coeffs in subspaces_mod(len(gens), p):
        basis = [[sum(c * g[t] for c, g in zip(row, gens)) % p for t in range(n)] for row in coeffs]
        if M.is_hopf_ideal(basis):
            found.append(rref_mod(basis, p)[0] if basis else ())
    best = max(found, key=len)
    bpiv = rref_mod([list(r) for r in best], p)[1] if best else ()
    for f in found:
        if not all(_in_span(best, bpiv, v, p) for v in f):
            raise ArithmeticError("Hopf ideals in W have no maximum")
    return best, len(found)


def agrees_with_brute_force(H: WeakHopfPresentation, W: Subspace, I: Subspace, p: int | None = None) -> tuple:
    p = p or choose_prime(H, W)
    best, _ = brute_force_largest(H, W, p)
    return tuple(best) == tuple(reduce_subspace(I, p)), p
