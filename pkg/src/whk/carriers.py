"""Finite carriers: truncated polynomial algebras and the operators acting on them."""

from __future__ import annotations

import itertools
from typing import Sequence

from .algebra import FiniteDimAlgebra
from .exact import Matrix, ONE, ZERO, q


class TruncationError(ValueError):
    """An operator does not preserve the finite truncation it was asked to act on."""


def monomials(nvars: int, degree: int) -> list:
    """Exponent tuples of total degree <= degree, by degree then descending lex."""
    out = []
    for d in range(degree + 1):
        block = [e for e in itertools.product(range(d + 1), repeat=nvars) if sum(e) == d]
        out.extend(sorted(block, reverse=True))
    return out


def monomial_label(e: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for k, name in zip(e, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


def truncated_polynomial_algebra(names: Sequence[str], degree: int, prefix: str = "") -> tuple[FiniteDimAlgebra, list]:
    """k[names] modulo all monomials of total degree > degree."""
    mons = monomials(len(names), degree)
    idx = {e: i for i, e in enumerate(mons)}
    mult = {}
    for i, a in enumerate(mons):
        for j, b in enumerate(mons):
            c = tuple(x + y for x, y in zip(a, b))
            if c in idx:
                mult[(i, j)] = {idx[c]: ONE}
    unit = tuple(ONE if sum(e) == 0 else ZERO for e in mons)
    labels = tuple(prefix + monomial_label(e, names) for e in mons)
    return FiniteDimAlgebra(labels, mult, unit), mons


def nilpotent_algebra(n: int, var: str = "x") -> FiniteDimAlgebra:
    """k[x]/(x^n)."""
    return truncated_polynomial_algebra([var], n - 1)[0]


def xi_dj(mons: list, i: int, j: int) -> Matrix:
    """Matrix of x_i d/dx_j on the monomial basis (grade preserving)."""
    idx = {e: k for k, e in enumerate(mons)}
    n = len(mons)
    cols = []
    for e in mons:
        col = [ZERO] * n
        if e[j]:
            f = list(e)
            f[j] -= 1
            f[i] += 1
            col[idx[tuple(f)]] += e[j]
        cols.append(col)
    return Matrix.from_columns(cols)


def _poly_mul(p: dict, r: dict) -> dict:
    out: dict = {}
    for a, x in p.items():
        for b, y in r.items():
            c = tuple(u + v for u, v in zip(a, b))
            out[c] = out.get(c, ZERO) + x * y
    return {k: v for k, v in out.items() if v}


def linear_substitution(mons: list, M: Matrix) -> Matrix:
    """Algebra map induced by x_k -> sum_i M[i, k] x_i on the monomial basis.

    Linear substitutions preserve the total degree, so the truncation is
    respected automatically.
    """
    nv = len(mons[0]) if mons else 0
    if M.shape != (nv, nv):
        raise ValueError(f"substitution matrix must be {nv}x{nv}")
    idx = {e: k for k, e in enumerate(mons)}
    images = []
    for k in range(nv):
        images.append({tuple(1 if t == i else 0 for t in range(nv)): M[i, k] for i in range(nv) if M[i, k]})
    n = len(mons)
    cols = []
    for e in mons:
        p = {(0,) * nv: ONE}
        for k, power in enumerate(e):
            for _ in range(power):
                p = _poly_mul(p, images[k])
        col = [ZERO] * n
        for mono, c in p.items():
            col[idx[mono]] += c
        cols.append(col)
    return Matrix.from_columns(cols)


def laurent_labels(lo: int, hi: int) -> list:
    return [f"t^{k}" for k in range(lo, hi + 1)]


def laurent_shift(lo: int, hi: int, shift: int, generator: str = "g") -> Matrix:
    """Multiplication by t^shift on span{t^lo, ..., t^hi}.

    Any nonzero shift pushes an end of the window out of the truncation, so
    it is not an operator on it; that is reported naming the generator.
    """
    n = hi - lo + 1
    cols = []
    for k in range(lo, hi + 1):
        m = k + shift
        if not lo <= m <= hi:
            raise TruncationError(
                f"generator {generator!r} maps t^{k} to t^{m}, outside the truncation t^{lo}..t^{hi}"
            )
        col = [ZERO] * n
        col[m - lo] = ONE
        cols.append(col)
    return Matrix.from_columns(cols)


def truncate_operator(op: Matrix, mons_big: list, mons_small: list) -> Matrix:
    """Restrict an operator on a larger truncation to the smaller one (rows and columns)."""
    pos = [mons_big.index(e) for e in mons_small]
    return op.restrict(pos, pos)
