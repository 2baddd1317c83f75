"""Structure-constant presentations of algebras, coalgebras and weak Hopf algebras.

Basis elements are referred to by index.  Products are stored sparsely:
``mult[(i, j)]`` is a dict ``{k: c}`` with ``b_i b_j = sum c b_k``; a missing
pair means the product is zero.  Elements of tensor powers are dicts keyed
by index tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact import (
    Matrix,
    Subspace,
    ONE,
    ZERO,
    column_space,
    kernel,
    q,
    unit_vector,
)
from .report import Report


class NonInvertibleAntipode(ValueError):
    pass


class LabelCollision(ValueError):
    pass


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key, ZERO) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _vec_to_sparse(v: Sequence) -> dict:
    return {i: x for i, x in enumerate(v) if x}


def sparse_diff(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        _add_into(out, k, -v)
    return out


def residual(labels: Sequence[str], diff: dict) -> tuple:
    """Sparse residual as sorted ``(basis label(s), coefficient)`` pairs."""
    items = []
    for key, c in diff.items():
        if isinstance(key, tuple):
            name = "⊗".join(labels[i] for i in key)
        else:
            name = labels[key]
        items.append((name, c))
    return tuple(sorted(items))


def _check_labels(labels: Sequence[str], what: str) -> tuple:
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        dup = sorted({x for x in labels if labels.count(x) > 1})
        raise LabelCollision(f"duplicate {what} labels: {dup}")
    return labels


@dataclass(frozen=True, eq=False)
class FiniteDimAlgebra:
    labels: tuple
    mult: dict  # (i, j) -> {k: Fraction}
    unit: tuple

    def __post_init__(self):
        labels = _check_labels(self.labels, "basis")
        object.__setattr__(self, "labels", labels)
        n = len(labels)
        mult = {}
        for (i, j), row in self.mult.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"product index ({i}, {j}) out of range for dim {n}")
            row = {k: q(c) for k, c in row.items() if q(c)}
            for k in row:
                if not 0 <= k < n:
                    raise ValueError(f"product coefficient index {k} out of range")
            if row:
                mult[(i, j)] = row
        object.__setattr__(self, "mult", mult)
        if len(self.unit) != n:
            raise ValueError(f"unit has length {len(self.unit)}, expected {n}")
        object.__setattr__(self, "unit", tuple(q(x) for x in self.unit))

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def from_dense(cls, labels, tensor, unit) -> "FiniteDimAlgebra":
        n = len(labels)
        mult = {}
        for i in range(n):
            for j in range(n):
                row = {k: q(tensor[i][j][k]) for k in range(n) if tensor[i][j][k]}
                if row:
                    mult[(i, j)] = row
        return cls(tuple(labels), mult, tuple(unit))

    def product(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def basis_vector(self, i: int) -> tuple:
        return unit_vector(self.dim, i)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element labelled {label!r}") from None

    def mul_sparse(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mult.get((i, j), {}).items():
                    _add_into(out, k, a * b * c)
        return out

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        out = self.mul_sparse(_vec_to_sparse(u), _vec_to_sparse(v))
        return tuple(out.get(k, ZERO) for k in range(self.dim))

    def mul_many(self, *vs: Sequence) -> tuple:
        acc = tuple(vs[0])
        for v in vs[1:]:
            acc = self.mul(acc, v)
        return acc

    @cached_property
    def _left(self) -> list:
        n = self.dim
        mats = []
        for i in range(n):
            cols = []
            for j in range(n):
                row = self.product(i, j)
                cols.append(tuple(row.get(k, ZERO) for k in range(n)))
            mats.append(Matrix.from_columns(cols))
        return mats

    @cached_property
    def _right(self) -> list:
        n = self.dim
        mats = []
        for j in range(n):
            cols = []
            for i in range(n):
                row = self.product(i, j)
                cols.append(tuple(row.get(k, ZERO) for k in range(n)))
            mats.append(Matrix.from_columns(cols))
        return mats

    def left_matrix(self, v: Sequence) -> Matrix:
        """Matrix of x -> v x."""
        acc = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(v):
            if c:
                acc = acc + self._left[i].scale(c)
        return acc

    def right_matrix(self, v: Sequence) -> Matrix:
        """Matrix of x -> x v."""
        acc = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(v):
            if c:
                acc = acc + self._right[i].scale(c)
        return acc

    def left_basis_matrix(self, i: int) -> Matrix:
        return self._left[i]

    def right_basis_matrix(self, j: int) -> Matrix:
        return self._right[j]

    def is_commutative(self) -> bool:
        return all(self.product(i, j) == self.product(j, i) for i in range(self.dim) for j in range(i))

    def trace_form(self) -> Matrix:
        # Tr(L_i L_j) = sum over k of the b_k-coefficient of b_i (b_j b_k)
        n = self.dim
        T = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    for l, c in self.product(j, k).items():
                        d = self.product(i, l).get(k)
                        if d:
                            acc += c * d
                T[i][j] = acc
        return Matrix(T, n)


@dataclass(frozen=True, eq=False)
class FiniteDimCoalgebra:
    labels: tuple
    comult: tuple  # comult[i] = ((j, k, c), ...)
    counit: tuple

    def __post_init__(self):
        labels = _check_labels(self.labels, "basis")
        object.__setattr__(self, "labels", labels)
        n = len(labels)
        if len(self.comult) != n or len(self.counit) != n:
            raise ValueError("coalgebra data does not match the basis size")
        comult = []
        for terms in self.comult:
            acc: dict = {}
            for j, k, c in terms:
                if not (0 <= j < n and 0 <= k < n):
                    raise ValueError(f"coproduct index ({j}, {k}) out of range")
                _add_into(acc, (j, k), q(c))
            comult.append(tuple((j, k, c) for (j, k), c in sorted(acc.items())))
        object.__setattr__(self, "comult", tuple(comult))
        object.__setattr__(self, "counit", tuple(q(x) for x in self.counit))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def delta_basis(self, i: int) -> dict:
        return {(j, k): c for j, k, c in self.comult[i]}

    def delta_sparse(self, v: dict) -> dict:
        out: dict = {}
        for i, a in v.items():
            for j, k, c in self.comult[i]:
                _add_into(out, (j, k), a * c)
        return out

    def delta(self, v: Sequence) -> dict:
        return self.delta_sparse(_vec_to_sparse(v))

    def eps(self, v: Sequence) -> Fraction:
        return sum((a * e for a, e in zip(v, self.counit) if a), ZERO)

    def eps_sparse(self, v: dict) -> Fraction:
        return sum((a * self.counit[i] for i, a in v.items()), ZERO)

    def delta_matrix(self) -> Matrix:
        """Delta as an (n^2 x n) matrix, row index j * n + k."""
        n = self.dim
        cols = []
        for i in range(n):
            col = [ZERO] * (n * n)
            for j, k, c in self.comult[i]:
                col[j * n + k] += c
            cols.append(col)
        return Matrix.from_columns(cols)


@dataclass(frozen=True, eq=False)
class WeakHopfPresentation:
    algebra: FiniteDimAlgebra
    coalgebra: FiniteDimCoalgebra
    antipode: Matrix | None = None
    name: str = ""

    def __post_init__(self):
        if self.algebra.labels != self.coalgebra.labels:
            raise ValueError("algebra and coalgebra must share the basis")
        if self.antipode is not None:
            n = self.algebra.dim
            if self.antipode.shape != (n, n):
                raise ValueError(f"antipode has shape {self.antipode.shape}, expected {(n, n)}")
            if self.antipode.det() == 0:
                raise NonInvertibleAntipode("antipode is not invertible")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def labels(self) -> tuple:
        return self.algebra.labels

    @property
    def unit(self) -> tuple:
        return self.algebra.unit

    def mul(self, u, v) -> tuple:
        return self.algebra.mul(u, v)

    def delta(self, v) -> dict:
        return self.coalgebra.delta(v)

    def eps(self, v) -> Fraction:
        return self.coalgebra.eps(v)

    def S(self, v) -> tuple:
        if self.antipode is None:
            raise ValueError("presentation has no antipode")
        return self.antipode.apply(v)

    @cached_property
    def antipode_inverse(self) -> Matrix:
        if self.antipode is None:
            raise ValueError("presentation has no antipode")
        return self.antipode.inverse()

    def vector(self, combo: dict) -> tuple:
        """Vector from ``{label: coefficient}``."""
        v = [ZERO] * self.dim
        for lab, c in combo.items():
            v[self.algebra.index(lab)] += q(c)
        return tuple(v)

    def format(self, v: Sequence) -> str:
        return format_vector(self.labels, v)


def format_vector(labels: Sequence[str], v: Sequence) -> str:
    """Readable rendering, highest basis index first: ``g2 - e2``."""
    parts = []
    for i in reversed(range(len(v))):
        c = v[i]
        if not c:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag}*"
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{coef}{labels[i]}"))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


# ---------------------------------------------------------------- tensors

def tensor_mul(A: FiniteDimAlgebra, X: dict, Y: dict) -> dict:
    """Product in the tensor power of A, factorwise."""
    out: dict = {}
    for kx, cx in X.items():
        for ky, cy in Y.items():
            factors = [A.product(a, b) for a, b in zip(kx, ky)]
            if any(not f for f in factors):
                continue
            c0 = cx * cy
            for combo in itertools.product(*(f.items() for f in factors)):
                c = c0
                for _, x in combo:
                    c *= x
                _add_into(out, tuple(k for k, _ in combo), c)
    return out


def apply_at(C: FiniteDimCoalgebra, X: dict, pos: int) -> dict:
    """Apply Delta to tensor factor ``pos``."""
    out: dict = {}
    for key, c in X.items():
        for j, k, d in C.comult[key[pos]]:
            _add_into(out, key[:pos] + (j, k) + key[pos + 1:], c * d)
    return out


def counit_at(C: FiniteDimCoalgebra, X: dict, pos: int) -> dict:
    out: dict = {}
    for key, c in X.items():
        e = C.counit[key[pos]]
        if e:
            _add_into(out, key[:pos] + key[pos + 1:], c * e)
    return out


def linear_at(M: Matrix, X: dict, pos: int) -> dict:
    out: dict = {}
    for key, c in X.items():
        col = M.column(key[pos])
        for r, x in enumerate(col):
            if x:
                _add_into(out, key[:pos] + (r,) + key[pos + 1:], c * x)
    return out


def pure_tensor(*vs: Sequence) -> dict:
    out: dict = {}
    sparse = [_vec_to_sparse(v) for v in vs]
    for combo in itertools.product(*(s.items() for s in sparse)):
        c = ONE
        for _, x in combo:
            c *= x
        _add_into(out, tuple(k for k, _ in combo), c)
    return out


def _as_vector(d: dict, n: int) -> tuple:
    return tuple(d.get(k, ZERO) for k in range(n))


# ---------------------------------------------------------------- checks

def check_algebra(A: FiniteDimAlgebra) -> Report:
    """Associativity on all basis triples and two-sided unitality."""
    rep = Report("algebra")
    rep.ran("associativity")
    rep.ran("unit")
    n = A.dim
    L = A.labels
    for i in range(n):
        for j in range(n):
            ij = A.product(i, j)
            for k in range(n):
                lhs = A.mul_sparse(ij, {k: ONE})
                rhs = A.mul_sparse({i: ONE}, A.product(j, k))
                d = sparse_diff(lhs, rhs)
                if d:
                    rep.fail("associativity", (L[i], L[j], L[k]), residual(L, d))
    u = _vec_to_sparse(A.unit)
    for i in range(n):
        for side, prod in (("left", A.mul_sparse(u, {i: ONE})), ("right", A.mul_sparse({i: ONE}, u))):
            d = sparse_diff(prod, {i: ONE})
            if d:
                rep.fail("unit", (L[i], side), residual(L, d))
    return rep


def check_coalgebra(C: FiniteDimCoalgebra) -> Report:
    """Coassociativity and the two counit identities on each basis element."""
    rep = Report("coalgebra")
    rep.ran("coassociativity")
    rep.ran("counit")
    L = C.labels
    for i in range(C.dim):
        D = C.delta_basis(i)
        d = sparse_diff(apply_at(C, D, 0), apply_at(C, D, 1))
        if d:
            rep.fail("coassociativity", (L[i],), residual(L, d))
        for pos, side in ((0, "left"), (1, "right")):
            back = {k[0]: c for k, c in counit_at(C, D, pos).items()}
            d = sparse_diff(back, {i: ONE})
            if d:
                rep.fail("counit", (L[i], side), residual(L, d))
    return rep


def _eps_products(H: WeakHopfPresentation) -> list:
    """E[i][j] = eps(b_i b_j)."""
    A, C = H.algebra, H.coalgebra
    n = A.dim
    return [[C.eps_sparse(A.product(i, j)) for j in range(n)] for i in range(n)]


def check_weak_bialgebra(H: WeakHopfPresentation) -> Report:
    """Multiplicative coproduct, weak counit identity, weak unit identity.

    The counit identity is trilinear in (a, b, c), so checking it on basis
    triples covers every element.
    """
    A, C = H.algebra, H.coalgebra
    n, L = A.dim, A.labels
    rep = Report("weak_bialgebra")
    for name in ("delta_multiplicative", "weak_counit_12", "weak_counit_21", "weak_unit_left", "weak_unit_right"):
        rep.ran(name)

    deltas = [C.delta_basis(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = C.delta_sparse(A.product(i, j))
            rhs = tensor_mul(A, deltas[i], deltas[j])
            d = sparse_diff(lhs, rhs)
            if d:
                rep.fail("delta_multiplicative", (L[i], L[j]), residual(L, d))

    E = _eps_products(H)
    for i in range(n):
        for j in range(n):
            ij = A.product(i, j)
            for k in range(n):
                lhs = sum((c * E[l][k] for l, c in ij.items()), ZERO)
                r12 = sum((c * E[i][p] * E[r][k] for p, r, c in C.comult[j]), ZERO)
                r21 = sum((c * E[i][r] * E[p][k] for p, r, c in C.comult[j]), ZERO)
                if lhs != r12:
                    rep.fail("weak_counit_12", (L[i], L[j], L[k]), (("value", lhs - r12),))
                if lhs != r21:
                    rep.fail("weak_counit_21", (L[i], L[j], L[k]), (("value", lhs - r21),))

    one = _vec_to_sparse(A.unit)
    D1 = C.delta_sparse(one)
    D2 = apply_at(C, D1, 0)
    left = {k + (u,): c * cu for k, c in D1.items() for u, cu in one.items()}
    right = {(u,) + k: c * cu for k, c in D1.items() for u, cu in one.items()}
    for name, X, Y in (("weak_unit_left", left, right), ("weak_unit_right", right, left)):
        d = sparse_diff(D2, tensor_mul(A, X, Y))
        if d:
            rep.fail(name, ("1",), residual(L, d))
    return rep


@dataclass(frozen=True)
class CounitalMaps:
    eps_s: Matrix
    eps_t: Matrix
    Hs: Subspace
    Ht: Subspace


def counital_maps(H: WeakHopfPresentation) -> CounitalMaps:
    """eps_s(x) = 1_1 eps(x 1_2) and eps_t(x) = eps(1_1 x) 1_2."""
    A, C = H.algebra, H.coalgebra
    n = A.dim
    E = _eps_products(H)
    D1 = C.delta_sparse(_vec_to_sparse(A.unit))
    s_cols, t_cols = [], []
    for x in range(n):
        s = [ZERO] * n
        t = [ZERO] * n
        for (j, k), c in D1.items():
            # eps(x b_k) and eps(b_j x) via E, since x is a basis vector
            s[j] += c * E[x][k]
            t[k] += c * E[j][x]
        s_cols.append(s)
        t_cols.append(t)
    eps_s = Matrix.from_columns(s_cols)
    eps_t = Matrix.from_columns(t_cols)
    return CounitalMaps(eps_s, eps_t, column_space(eps_s), column_space(eps_t))


def check_antipode(H: WeakHopfPresentation, maps: CounitalMaps | None = None) -> Report:
    A, C = H.algebra, H.coalgebra
    n, L = A.dim, A.labels
    rep = Report("antipode")
    names = ("S(h1)h2=eps_s(h)", "h1S(h2)=eps_t(h)", "S(h1)h2S(h3)=S(h)", "anti_multiplicative", "anti_comultiplicative")
    if H.antipode is None:
        rep.fail("antipode_present", (), note="presentation has no antipode")
        return rep
    for nm in names:
        rep.ran(nm)
    maps = maps or counital_maps(H)
    S = H.antipode
    Scol = [_vec_to_sparse(S.column(i)) for i in range(n)]
    for i in range(n):
        lhs_s: dict = {}
        lhs_t: dict = {}
        for j, k, c in C.comult[i]:
            for key, v in A.mul_sparse(Scol[j], {k: ONE}).items():
                _add_into(lhs_s, key, c * v)
            for key, v in A.mul_sparse({j: ONE}, Scol[k]).items():
                _add_into(lhs_t, key, c * v)
        d = sparse_diff(lhs_s, _vec_to_sparse(maps.eps_s.column(i)))
        if d:
            rep.fail(names[0], (L[i],), residual(L, d))
        d = sparse_diff(lhs_t, _vec_to_sparse(maps.eps_t.column(i)))
        if d:
            rep.fail(names[1], (L[i],), residual(L, d))
        D2 = apply_at(C, C.delta_basis(i), 0)
        acc: dict = {}
        for (j, k, l), c in D2.items():
            x = A.mul_sparse(A.mul_sparse(Scol[j], {k: ONE}), Scol[l])
            for key, v in x.items():
                _add_into(acc, key, c * v)
        d = sparse_diff(acc, Scol[i])
        if d:
            rep.fail(names[2], (L[i],), residual(L, d))
        # Delta(S(h)) = S(h2) (x) S(h1)
        lhs = C.delta_sparse(Scol[i])
        rhs: dict = {}
        for j, k, c in C.comult[i]:
            for a, x in Scol[k].items():
                for b, y in Scol[j].items():
                    _add_into(rhs, (a, b), c * x * y)
        d = sparse_diff(lhs, rhs)
        if d:
            rep.fail(names[4], (L[i],), residual(L, d))
    for i in range(n):
        for j in range(n):
            lhs = {}
            for k, c in A.product(i, j).items():
                for key, v in Scol[k].items():
                    _add_into(lhs, key, c * v)
            rhs = A.mul_sparse(Scol[j], Scol[i])
            d = sparse_diff(lhs, rhs)
            if d:
                rep.fail(names[3], (L[i], L[j]), residual(L, d))
    return rep


def check_weak_hopf(H: WeakHopfPresentation) -> Report:
    """The full axiom suite: algebra, coalgebra, weak bialgebra, antipode."""
    rep = Report(H.name or "weak_hopf")
    rep.merge(check_algebra(H.algebra), "algebra.")
    rep.merge(check_coalgebra(H.coalgebra), "coalgebra.")
    rep.merge(check_weak_bialgebra(H), "weak_bialgebra.")
    if H.antipode is not None:
        rep.merge(check_antipode(H), "antipode.")
    return rep


def is_hopf(H: WeakHopfPresentation) -> bool:
    """True iff Delta(1) = 1 (x) 1.

    The equivalent condition eps(xy) = eps(x) eps(y) is evaluated too and
    any disagreement is raised as an internal error.
    """
    A, C = H.algebra, H.coalgebra
    one = A.unit
    hopf = C.delta(one) == pure_tensor(one, one)
    E = _eps_products(H)
    mult_eps = all(E[i][j] == C.counit[i] * C.counit[j] for i in range(A.dim) for j in range(A.dim))
    if hopf != mult_eps:
        raise AssertionError("Delta(1) = 1(x)1 disagrees with multiplicativity of eps")
    return hopf


def is_cocommutative(H: WeakHopfPresentation | FiniteDimCoalgebra) -> bool:
    C = H.coalgebra if isinstance(H, WeakHopfPresentation) else H
    for i in range(C.dim):
        D = C.delta_basis(i)
        if D != {(k, j): c for (j, k), c in D.items()}:
            return False
    return True


# ---------------------------------------------------------------- constructions

def direct_sum(parts: Sequence[WeakHopfPresentation], name: str = "") -> WeakHopfPresentation:
    if not parts:
        raise ValueError("direct sum of an empty family")
    labels = [lab for P in parts for lab in P.labels]
    _check_labels(labels, "summand")
    mult, comult, unit, counit = {}, [], [], []
    offset = 0
    has_S = all(P.antipode is not None for P in parts)
    blocks = []
    for P in parts:
        A, C = P.algebra, P.coalgebra
        for (i, j), row in A.mult.items():
            mult[(i + offset, j + offset)] = {k + offset: c for k, c in row.items()}
        for terms in C.comult:
            comult.append(tuple((j + offset, k + offset, c) for j, k, c in terms))
        unit.extend(A.unit)
        counit.extend(C.counit)
        if has_S:
            blocks.append(P.antipode)
        offset += A.dim
    alg = FiniteDimAlgebra(tuple(labels), mult, tuple(unit))
    coa = FiniteDimCoalgebra(tuple(labels), tuple(comult), tuple(counit))
    S = Matrix.block_diagonal(blocks) if has_S else None
    return WeakHopfPresentation(alg, coa, S, name)


def tensor_product(H: WeakHopfPresentation, K: WeakHopfPresentation, sep: str = "#", name: str = "") -> WeakHopfPresentation:
    """H (x) K with factorwise structure; basis (i, j) sits at i * dim K + j."""
    n, m = H.dim, K.dim
    labels = tuple(f"{a}{sep}{b}" for a in H.labels for b in K.labels)
    mult = {}
    for (i, j), r1 in H.algebra.mult.items():
        for (k, l), r2 in K.algebra.mult.items():
            mult[(i * m + k, j * m + l)] = {a * m + b: x * y for a, x in r1.items() for b, y in r2.items()}
    unit = tuple(x * y for x in H.unit for y in K.unit)
    comult = []
    for i in range(n):
        for k in range(m):
            comult.append(tuple(
                (a * m + c, b * m + d, x * y)
                for a, b, x in H.coalgebra.comult[i]
                for c, d, y in K.coalgebra.comult[k]
            ))
    counit = tuple(x * y for x in H.coalgebra.counit for y in K.coalgebra.counit)
    S = None
    if H.antipode is not None and K.antipode is not None:
        from .exact import kronecker
        S = kronecker(H.antipode, K.antipode)
    return WeakHopfPresentation(
        FiniteDimAlgebra(labels, mult, unit), FiniteDimCoalgebra(labels, tuple(comult), counit), S, name
    )


def reindex(H: WeakHopfPresentation, order: Sequence[int], labels: Sequence[str] | None = None) -> WeakHopfPresentation:
    """Permute the basis: new basis element ``k`` is old element ``order[k]``."""
    n = H.dim
    if sorted(order) != list(range(n)):
        raise ValueError("reindexing needs a permutation of the basis")
    new = {old: k for k, old in enumerate(order)}
    labels = tuple(labels) if labels is not None else tuple(H.labels[o] for o in order)
    A, C = H.algebra, H.coalgebra
    mult = {(new[i], new[j]): {new[k]: c for k, c in row.items()} for (i, j), row in A.mult.items()}
    unit = tuple(A.unit[o] for o in order)
    comult = tuple(tuple((new[j], new[k], c) for j, k, c in C.comult[o]) for o in order)
    counit = tuple(C.counit[o] for o in order)
    S = None
    if H.antipode is not None:
        S = Matrix([[H.antipode[order[r], order[c]] for c in range(n)] for r in range(n)])
    return WeakHopfPresentation(FiniteDimAlgebra(labels, mult, unit), FiniteDimCoalgebra(labels, comult, counit), S, H.name)


def same_structure(H: WeakHopfPresentation, K: WeakHopfPresentation) -> bool:
    """Equality of all structure constants (labels included)."""
    return (
        H.labels == K.labels
        and H.algebra.mult == K.algebra.mult
        and H.unit == K.unit
        and H.coalgebra.comult == K.coalgebra.comult
        and H.coalgebra.counit == K.coalgebra.counit
        and H.antipode == K.antipode
    )


def relabel_to(H: WeakHopfPresentation, K: WeakHopfPresentation, mapping: dict) -> WeakHopfPresentation:
    """Reorder and rename H's basis through ``mapping`` (H label -> K label) to match K."""
    order = [H.labels.index(next(h for h, k in mapping.items() if k == lab)) for lab in K.labels]
    return reindex(H, order, K.labels)


def dual_algebra(C: FiniteDimCoalgebra | WeakHopfPresentation) -> FiniteDimAlgebra:
    """Convolution algebra on the dual basis: (f g)(x) = f(x_1) g(x_2), unit eps."""
    if isinstance(C, WeakHopfPresentation):
        C = C.coalgebra
    mult: dict = {}
    for i in range(C.dim):
        for j, k, c in C.comult[i]:
            row = mult.setdefault((j, k), {})
            _add_into(row, i, c)
    labels = tuple(f"{lab}*" for lab in C.labels)
    return FiniteDimAlgebra(labels, mult, C.counit)


def product_algebra(labels: Sequence[str]) -> FiniteDimAlgebra:
    """k x ... x k with orthogonal idempotent basis."""
    n = len(labels)
    return FiniteDimAlgebra(tuple(labels), {(i, i): {i: ONE} for i in range(n)}, (ONE,) * n)


def matrix_algebra(n: int, prefix: str = "E") -> FiniteDimAlgebra:
    """M_n(k) in the matrix-unit basis E_ij (index i * n + j)."""
    labels = tuple(f"{prefix}{i + 1}{j + 1}" for i in range(n) for j in range(n))
    mult = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                mult[(i * n + j, j * n + l)] = {i * n + l: ONE}
    unit = tuple(ONE if i == j else ZERO for i in range(n) for j in range(n))
    return FiniteDimAlgebra(labels, mult, unit)


def algebra_direct_sum(parts: Sequence[FiniteDimAlgebra]) -> FiniteDimAlgebra:
    labels = [lab for P in parts for lab in P.labels]
    _check_labels(labels, "summand")
    mult, unit, off = {}, [], 0
    for P in parts:
        for (i, j), row in P.mult.items():
            mult[(i + off, j + off)] = {k + off: c for k, c in row.items()}
        unit.extend(P.unit)
        off += P.dim
    return FiniteDimAlgebra(tuple(labels), mult, tuple(unit))


# ---------------------------------------------------------------- ideals, sub- and quotient algebras

def two_sided_ideal(A: FiniteDimAlgebra, gens: Iterable[Sequence]) -> Subspace:
    """Smallest two-sided ideal containing ``gens`` (increasing fixed point)."""
    n = A.dim
    V = Subspace.span(list(gens), n)
    while True:
        new = list(V.basis)
        for v in V.basis:
            for i in range(n):
                new.append(A.left_basis_matrix(i).apply(v))
                new.append(A.right_basis_matrix(i).apply(v))
        W = Subspace.span(new, n)
        if W.dim == V.dim:
            return V
        V = W


def generated_subalgebra(A: FiniteDimAlgebra, gens: Iterable[Sequence], unital: bool = True) -> Subspace:
    n = A.dim
    seed = list(gens) + ([A.unit] if unital else [])
    V = Subspace.span(seed, n)
    while True:
        prods = list(V.basis) + [A.mul(u, v) for u in V.basis for v in V.basis]
        W = Subspace.span(prods, n)
        if W.dim == V.dim:
            return V
        V = W


def subalgebra_structure(A: FiniteDimAlgebra, V: Subspace, prefix: str = "s") -> tuple[FiniteDimAlgebra, Matrix]:
    """Structure constants of a subalgebra in its canonical basis.

    Returns the algebra and the embedding matrix (columns = basis vectors).
    The unit of the result is the coordinate vector of 1_A, which must lie
    in V; use :func:`corner_algebra` for non-unital corners.
    """
    d = V.dim
    mult = {}
    for a in range(d):
        for b in range(d):
            p = A.mul(V.basis[a], V.basis[b])
            if not V.contains(p):
                raise ValueError("subspace is not closed under multiplication")
            coords = V.coordinates(p)
            row = {k: c for k, c in enumerate(coords) if c}
            if row:
                mult[(a, b)] = row
    if not V.contains(A.unit):
        raise ValueError("subspace does not contain the unit")
    unit = V.coordinates(A.unit)
    labels = tuple(f"{prefix}{k}" for k in range(d))
    emb = Matrix.from_columns(list(V.basis), A.dim) if d else Matrix.zeros(A.dim, 0)
    return FiniteDimAlgebra(labels, mult, unit), emb


def corner_algebra(A: FiniteDimAlgebra, V: Subspace, unit: Sequence, prefix: str = "s") -> tuple[FiniteDimAlgebra, Matrix]:
    """Like :func:`subalgebra_structure` but with an explicit local unit."""
    d = V.dim
    mult = {}
    for a in range(d):
        for b in range(d):
            p = A.mul(V.basis[a], V.basis[b])
            coords = V.coordinates(p)
            row = {k: c for k, c in enumerate(coords) if c}
            if row:
                mult[(a, b)] = row
    labels = tuple(f"{prefix}{k}" for k in range(d))
    emb = Matrix.from_columns(list(V.basis), A.dim) if d else Matrix.zeros(A.dim, 0)
    return FiniteDimAlgebra(labels, mult, V.coordinates(unit)), emb


def quotient_algebra(A: FiniteDimAlgebra, I: Subspace, prefix: str = "q") -> tuple[FiniteDimAlgebra, Matrix]:
    """A / I for a two-sided ideal I.

    The quotient basis is the images of the standard basis vectors at the
    non-pivot positions of I.  Returns the algebra and the projection matrix.
    """
    n = A.dim
    keep = I.complement_indices()

    def proj(v):
        r = I.reduce(v)
        return tuple(r[k] for k in keep)

    d = len(keep)
    mult = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            p = proj(A.mul(unit_vector(n, i), unit_vector(n, j)))
            row = {k: c for k, c in enumerate(p) if c}
            if row:
                mult[(a, b)] = row
    labels = tuple(f"{prefix}{k}" for k in range(d))
    P = Matrix.from_columns([proj(unit_vector(n, i)) for i in range(n)], d) if n else Matrix.zeros(d, 0)
    return FiniteDimAlgebra(labels, mult, proj(A.unit)), P


def commutator_ideal(A: FiniteDimAlgebra) -> Subspace:
    n = A.dim
    gens = []
    for i in range(n):
        for j in range(i):
            d = sparse_diff(A.product(i, j), A.product(j, i))
            if d:
                gens.append(_as_vector(d, n))
    return two_sided_ideal(A, gens)


def nilradical_commutative(A: FiniteDimAlgebra) -> Subspace:
    """Radical of the trace form; equals the nilradical for commutative A in characteristic 0."""
    return kernel(A.trace_form())
