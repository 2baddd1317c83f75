"""Grouplike elements, the groupoid Gamma(H), idempotent splitting and local units."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    FiniteDimAlgebra,
    WeakHopfPresentation,
    commutator_ideal,
    counital_maps,
    dual_algebra,
    format_vector,
    is_hopf,
    nilradical_commutative,
    pure_tensor,
    quotient_algebra,
    subalgebra_structure,
)
from .exact import Matrix, Subspace, ONE, ZERO, is_zero_vector, solve, stack, vsub
from .groupoid import FiniteGroupoid
from .poly import degree, evaluate, pdivmod, rational_roots
from .report import Report


class NotSplitError(ArithmeticError):
    """Some minimal polynomial has roots outside Q."""


class IdempotentGuardError(RuntimeError):
    pass


class IdempotentFamilyError(ValueError):
    pass


def is_grouplike(H: WeakHopfPresentation, h: Sequence) -> bool:
    return H.eps(h) == 1 and H.delta(h) == pure_tensor(h, h)


# ---------------------------------------------------------------- splitting

def element_minimal_polynomial(A: FiniteDimAlgebra, y: Sequence, unit: Sequence) -> tuple:
    """Minimal polynomial of ``y`` in the algebra with identity ``unit``."""
    powers = [tuple(unit)]
    while True:
        nxt = A.mul(powers[-1], y)
        k = len(powers)
        coeffs = solve(Matrix.from_columns(powers), nxt)
        if coeffs is not None:
            return tuple([-c for c in coeffs] + [ONE])
        powers.append(nxt)
        if k > A.dim:
            raise ArithmeticError("minimal polynomial degree exceeds the dimension")


def evaluate_in(A: FiniteDimAlgebra, p: tuple, y: Sequence, unit: Sequence) -> tuple:
    acc = tuple(ZERO for _ in unit)
    for c in reversed(p):
        acc = A.mul(acc, y)
        acc = tuple(a + c * u for a, u in zip(acc, unit))
    return acc


def primitive_idempotents(A: FiniteDimAlgebra) -> tuple[list, bool]:
    """Primitive idempotents of a commutative semisimple algebra.

    Blocks are split with rational eigenvalues of multiplication operators:
    if ``y`` has minimal polynomial ``m`` with rational root ``l`` then
    ``f(y)`` with ``f = m / (t - l)`` rescaled so ``f(l) = 1`` is the
    idempotent of the ``l``-eigenspace.  Returns the idempotents whose block
    is one-dimensional and a flag telling whether everything split.
    """
    if not A.is_commutative():
        raise ValueError("idempotent splitting needs a commutative algebra")
    if nilradical_commutative(A).dim:
        raise ValueError("algebra is not semisimple")
    split = True
    todo = [A.unit] if not is_zero_vector(A.unit) else []
    done = []
    n = A.dim
    while todo:
        e = todo.pop()
        for i in range(n):
            y = A.mul(e, A.basis_vector(i))
            m = element_minimal_polynomial(A, y, e)
            if degree(m) >= 2:
                break
        else:
            done.append(e)
            continue
        roots, rest = rational_roots(m)
        pieces = []
        for lam in roots:
            f, _ = pdivmod(m, (-lam, ONE))
            f = tuple(c / evaluate(f, lam) for c in f)
            pieces.append(evaluate_in(A, f, y, e))
        if degree(rest) >= 1:
            split = False
        todo.extend(pieces)
    done.sort(reverse=True)
    return done, split


def character_of(A: FiniteDimAlgebra, e: Sequence, z: Sequence):
    """The scalar c with z e = c e, for e a primitive idempotent with 1-dim block."""
    ze = A.mul(z, e)
    k = next(i for i, x in enumerate(e) if x)
    c = ze[k] / e[k]
    if ze != tuple(c * x for x in e):
        raise ArithmeticError("idempotent block is not one-dimensional")
    return c


# ---------------------------------------------------------------- grouplikes

@dataclass(frozen=True, eq=False)
class GrouplikeSet:
    parent: WeakHopfPresentation
    elements: tuple
    complete: bool

    def labels(self) -> list:
        return [label_of(self.parent, h) for h in self.elements]

    def __len__(self) -> int:
        return len(self.elements)


def label_of(H: WeakHopfPresentation, v: Sequence) -> str:
    return format_vector(H.labels, v)


def enumerate_grouplikes(H: WeakHopfPresentation, strict: bool = False) -> GrouplikeSet:
    """All grouplikes of H, as the unital characters of the dual algebra.

    Characters kill commutators and nilpotents, so they factor through the
    semisimple commutative quotient of H*; there they are read off from
    the primitive idempotents.
    """
    D = dual_algebra(H)
    B, P1 = quotient_algebra(D, commutator_ideal(D))
    B2, P2 = quotient_algebra(B, nilradical_commutative(B))
    P = P2 @ P1
    idems, split = primitive_idempotents(B2)
    if not split and strict:
        raise NotSplitError("dual algebra does not split over the rationals")
    out = []
    for e in idems:
        h = tuple(character_of(B2, e, P.column(i)) for i in range(H.dim))
        if not is_grouplike(H, h):
            raise ArithmeticError("character did not produce a grouplike element")
        out.append(h)
    out.sort(reverse=True)
    return GrouplikeSet(H, tuple(out), split)


def gamma_groupoid(H: WeakHopfPresentation) -> FiniteGroupoid:
    """Gamma(H): objects are grouplikes in H_t, h is an arrow eps_s(h) -> eps_t(h)."""
    if H.antipode is None:
        raise ValueError("Gamma(H) needs an antipode")
    gl = enumerate_grouplikes(H, strict=True)
    maps = counital_maps(H)
    elems = list(gl.elements)
    lab = {h: label_of(H, h) for h in elems}
    objs = [h for h in elems if maps.Ht.contains(h)]
    src, tgt, inv, comp = {}, {}, {}, {}
    for h in elems:
        s = maps.eps_s.apply(h)
        t = maps.eps_t.apply(h)
        if s not in objs or t not in objs:
            raise ArithmeticError(f"source or target of {lab[h]} is not an object of Gamma")
        src[lab[h]], tgt[lab[h]] = lab[s], lab[t]
        Sh = H.S(h)
        if Sh not in lab:
            raise ArithmeticError(f"antipode of {lab[h]} is not grouplike")
        inv[lab[h]] = lab[Sh]
    for g in elems:
        for h in elems:
            if src[lab[g]] == tgt[lab[h]]:
                gh = H.mul(g, h)
                if gh not in lab:
                    raise ArithmeticError(f"composite {lab[g]} . {lab[h]} escapes Gamma")
                comp[(lab[g], lab[h])] = lab[gh]
    return FiniteGroupoid(
        tuple(lab[o] for o in objs),
        tuple(lab[h] for h in elems),
        src, tgt, comp, inv,
        {lab[o]: lab[o] for o in objs},
        f"Gamma({H.name})" if H.name else "Gamma",
        allow_empty=True,
    )


def gamma_objects_via_idempotents(H: WeakHopfPresentation, max_idempotents: int = 16) -> list:
    """Idempotents p of H_s cap H_t with dim(H_min p) = 1, H_min = H_s H_t."""
    maps = counital_maps(H)
    A = H.algebra
    C = maps.Hs.intersect(maps.Ht)
    Calg, emb = subalgebra_structure(A, C)
    prim, split = primitive_idempotents(Calg)
    if not split:
        raise NotSplitError("H_s cap H_t does not split over the rationals")
    if len(prim) > max_idempotents:
        raise IdempotentGuardError(f"{len(prim)} primitive idempotents exceed the bound {max_idempotents}")
    prim = [emb.apply(p) for p in prim]
    Hmin = Subspace.span([A.mul(x, y) for x in maps.Hs.basis for y in maps.Ht.basis], A.dim)
    out = []
    for r in range(1, len(prim) + 1):
        for combo in itertools.combinations(prim, r):
            p = tuple(sum(c) for c in zip(*combo))
            if Subspace.span([A.mul(m, p) for m in Hmin.basis], A.dim).dim == 1:
                out.append(p)
    out.sort(reverse=True)
    return out


def check_gamma_dichotomy(H: WeakHopfPresentation) -> Report:
    """When H_s cap H_t is one-dimensional, H is Hopf or Gamma(H) has no objects."""
    rep = Report("gamma_dichotomy")
    maps = counital_maps(H)
    d = maps.Hs.intersect(maps.Ht).dim
    rep.info["dim_Hs_cap_Ht"] = d
    rep.ran("hopf_or_no_objects")
    if d != 1:
        rep.info["vacuous"] = True
        return rep
    gl = enumerate_grouplikes(H)
    objs = [h for h in gl.elements if maps.Ht.contains(h)]
    rep.info["complete"] = gl.complete
    rep.expect("hopf_or_no_objects", is_hopf(H) or not objs, tuple(label_of(H, o) for o in objs))
    return rep


# ---------------------------------------------------------------- local units

def validate_idempotents(A: FiniteDimAlgebra, idems: dict) -> None:
    keys = list(idems)
    for x in keys:
        e = idems[x]
        if is_zero_vector(e):
            raise IdempotentFamilyError(f"idempotent for {x!r} is zero")
        if A.mul(e, e) != tuple(e):
            raise IdempotentFamilyError(f"element for {x!r} is not idempotent")
    for x, y in itertools.permutations(keys, 2):
        if not is_zero_vector(A.mul(idems[x], idems[y])):
            raise IdempotentFamilyError(f"idempotents for {x!r} and {y!r} are not orthogonal")


def in_corner(A: FiniteDimAlgebra, a: Sequence, left: Sequence, right: Sequence) -> bool:
    return A.mul(A.mul(left, a), right) == tuple(a)


def is_local_unit(A: FiniteDimAlgebra, idems: dict, a: Sequence, x: str, y: str):
    """Local inverse of ``a in e_y A e_x``, or None.

    The inverse is the solution of a linear system (a b = e_y, b a = e_x,
    b = e_x b e_y) which is unique whenever it exists.
    """
    validate_idempotents(A, idems)
    ex, ey = idems[x], idems[y]
    a = tuple(a)
    if is_zero_vector(a) or not in_corner(A, a, ey, ex):
        return None
    n = A.dim
    I = Matrix.identity(n)
    corner = A.left_matrix(ex) @ A.right_matrix(ey) - I
    M = stack([A.left_matrix(a), A.right_matrix(a), corner], n)
    rhs = tuple(ey) + tuple(ex) + (ZERO,) * n
    return solve(M, rhs)


@dataclass(frozen=True)
class LocalUnit:
    label: str
    a: tuple
    source: str
    target: str
    inverse: tuple


@dataclass(eq=False)
class LocalUnitGroupoid:
    algebra: FiniteDimAlgebra
    idems: dict
    witnesses: list = field(default_factory=list)

    def add(self, label: str, a: Sequence, x: str, y: str) -> LocalUnit:
        b = is_local_unit(self.algebra, self.idems, a, x, y)
        if b is None:
            raise ValueError(f"{label!r} is not a local unit {x} -> {y}")
        w = LocalUnit(label, tuple(a), x, y, b)
        self.witnesses.append(w)
        return w

    def find(self, a: Sequence) -> LocalUnit | None:
        return next((w for w in self.witnesses if w.a == tuple(a)), None)

    def as_groupoid(self, name: str = "") -> FiniteGroupoid:
        """The finite groupoid spanned by the witnesses; they must be closed."""
        W = self.witnesses
        A = self.algebra
        objs = tuple(self.idems)
        idents = {}
        for x in objs:
            w = self.find(self.idems[x])
            if w is None:
                raise ValueError(f"identity of {x!r} is not among the witnesses")
            idents[x] = w.label
        comp, inv = {}, {}
        for w in W:
            wi = self.find(w.inverse)
            if wi is None:
                raise ValueError(f"inverse of {w.label!r} is not among the witnesses")
            inv[w.label] = wi.label
            for v in W:
                if w.source == v.target:
                    p = self.find(A.mul(w.a, v.a))
                    if p is None:
                        raise ValueError(f"product {w.label} . {v.label} is not among the witnesses")
                    comp[(w.label, v.label)] = p.label
        return FiniteGroupoid(
            objs, tuple(w.label for w in W),
            {w.label: w.source for w in W}, {w.label: w.target for w in W},
            comp, inv, idents, name,
        )


def local_unit_closure_check(G: LocalUnitGroupoid) -> Report:
    """Composable witnesses multiply to local units with inverse b1 b2."""
    A = G.algebra
    rep = Report("local_unit_closure")
    rep.ran("certified")
    rep.ran("closure")
    for w in G.witnesses:
        b = is_local_unit(A, G.idems, w.a, w.source, w.target)
        rep.expect("certified", b == w.inverse, (w.label,))
    for w1 in G.witnesses:
        for w2 in G.witnesses:
            if w1.target != w2.source:
                continue
            prod = A.mul(w2.a, w1.a)
            b = is_local_unit(A, G.idems, prod, w1.source, w2.target)
            expected = A.mul(w1.inverse, w2.inverse)
            if b is None or b != expected:
                rep.fail("closure", (w2.label, w1.label), tuple(vsub(b, expected)) if b else ())
    return rep
