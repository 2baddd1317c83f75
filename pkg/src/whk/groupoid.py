"""Finite groupoids, their homomorphisms, and groupoid algebras."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    FiniteDimAlgebra,
    FiniteDimCoalgebra,
    LabelCollision,
    WeakHopfPresentation,
)
from .exact import Matrix, ONE, ZERO
from .report import Report


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """Objects, morphisms and a partial composition table.

    ``comp[(g, h)]`` is ``g . h`` (first h, then g) and is present exactly
    when ``src[g] == tgt[h]``.  Only references are validated here; the
    groupoid axioms are the business of :func:`check_groupoid`.
    """

    objects: tuple
    morphisms: tuple
    src: dict
    tgt: dict
    comp: dict
    inv: dict
    idents: dict
    name: str = ""
    allow_empty: bool = field(default=False, repr=False)  # only Gamma(H) may come out empty

    def __post_init__(self):
        objs = tuple(str(x) for x in self.objects)
        mors = tuple(str(x) for x in self.morphisms)
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "morphisms", mors)
        if not objs and not self.allow_empty:
            raise ValueError("a groupoid needs at least one object")
        if len(set(objs)) != len(objs):
            raise LabelCollision("duplicate object labels")
        if len(set(mors)) != len(mors):
            raise LabelCollision("duplicate morphism labels")
        os_, ms = set(objs), set(mors)
        for g in mors:
            if self.src.get(g) not in os_ or self.tgt.get(g) not in os_:
                raise ValueError(f"morphism {g!r} has an unknown source or target")
            if self.inv.get(g) not in ms:
                raise ValueError(f"morphism {g!r} has no inverse entry")
        for x in objs:
            if self.idents.get(x) not in ms:
                raise ValueError(f"object {x!r} has no identity morphism")
        for (g, h), gh in self.comp.items():
            if g not in ms or h not in ms or gh not in ms:
                raise ValueError(f"composition entry ({g}, {h}) -> {gh} references unknown morphisms")

    def hom(self, x: str, y: str) -> list:
        return [g for g in self.morphisms if self.src[g] == x and self.tgt[g] == y]

    def compose(self, g: str, h: str) -> str | None:
        return self.comp.get((g, h))

    def basis_order(self) -> list:
        """Identities in object order, then the rest in declaration order."""
        ids = [self.idents[x] for x in self.objects]
        seen = set(ids)
        return ids + [g for g in self.morphisms if g not in seen]

    def vertex_group(self, x: str) -> list:
        return self.hom(x, x)

    def is_connected(self) -> bool:
        if not self.objects:
            return False
        x0 = self.objects[0]
        return all(self.hom(x0, y) for y in self.objects)


@dataclass(frozen=True, eq=False)
class GroupoidHom:
    source: FiniteGroupoid
    target: FiniteGroupoid
    obj_map: dict
    mor_map: dict
    x_preserving: bool = False


def check_groupoid(G: FiniteGroupoid) -> Report:
    rep = Report(G.name or "groupoid")
    for c in ("identity_endpoints", "composable_domain", "composite_endpoints", "associativity", "identity_law", "inverse"):
        rep.ran(c)
    s, t, comp = G.src, G.tgt, G.comp
    for x in G.objects:
        e = G.idents[x]
        rep.expect("identity_endpoints", s[e] == x and t[e] == x, (x, e))
    for g in G.morphisms:
        for h in G.morphisms:
            composable = s[g] == t[h]
            if composable != ((g, h) in comp):
                rep.fail("composable_domain", (g, h), note="defined" if not composable else "missing")
            if composable and (g, h) in comp:
                gh = comp[(g, h)]
                if s[gh] != s[h] or t[gh] != t[g]:
                    rep.fail("composite_endpoints", (g, h), (gh,))
    for (g, h), gh in comp.items():
        for k in G.morphisms:
            if (h, k) in comp:
                left = comp.get((gh, k))
                right = comp.get((g, comp[(h, k)]))
                if left != right:
                    rep.fail("associativity", (g, h, k), (left, right))
    for g in G.morphisms:
        a = comp.get((G.idents[t[g]], g))
        b = comp.get((g, G.idents[s[g]]))
        if a != g or b != g:
            rep.fail("identity_law", (g,), (a, b))
        gi = G.inv[g]
        r1 = comp.get((g, gi))
        r2 = comp.get((gi, g))
        if r1 != G.idents[t[g]] or r2 != G.idents[s[g]]:
            rep.fail("inverse", (g, gi), (r1, r2), note="undefined composite" if r1 is None or r2 is None else "")
    return rep


def check_groupoid_hom(f: GroupoidHom) -> Report:
    rep = Report("groupoid_hom")
    G, K = f.source, f.target
    for c in ("maps_defined", "endpoints", "composition", "identities"):
        rep.ran(c)
    for x in G.objects:
        if f.obj_map.get(x) not in K.objects:
            rep.fail("maps_defined", (x,), note="object")
    for g in G.morphisms:
        if f.mor_map.get(g) not in K.morphisms:
            rep.fail("maps_defined", (g,), note="morphism")
    if not rep.ok:
        return rep
    F, O = f.mor_map, f.obj_map
    for g in G.morphisms:
        ok = K.src[F[g]] == O[G.src[g]] and K.tgt[F[g]] == O[G.tgt[g]]
        rep.expect("endpoints", ok, (g,), (F[g],))
    for (g, h), gh in G.comp.items():
        img = K.comp.get((F[g], F[h]))
        rep.expect("composition", img == F[gh], (g, h), (F[gh], img))
    for x in G.objects:
        rep.expect("identities", F[G.idents[x]] == K.idents[O[x]], (x,), (F[G.idents[x]],))
    if f.x_preserving:
        rep.ran("x_preserving")
        for x in G.objects:
            rep.expect("x_preserving", O[x] == x, (x,), (O[x],))
    return rep


def identity_hom(G: FiniteGroupoid) -> GroupoidHom:
    return GroupoidHom(G, G, {x: x for x in G.objects}, {g: g for g in G.morphisms}, True)


def compose_homs(f: GroupoidHom, g: GroupoidHom) -> GroupoidHom:
    """f after g."""
    return GroupoidHom(
        g.source,
        f.target,
        {x: f.obj_map[g.obj_map[x]] for x in g.source.objects},
        {m: f.mor_map[g.mor_map[m]] for m in g.source.morphisms},
        f.x_preserving and g.x_preserving,
    )


def groupoid_algebra(G: FiniteGroupoid) -> WeakHopfPresentation:
    """k G: composition-or-zero product, Delta(g) = g (x) g, eps = 1, S(g) = g^-1."""
    order = G.basis_order()
    idx = {g: i for i, g in enumerate(order)}
    n = len(order)
    mult = {(idx[g], idx[h]): {idx[gh]: ONE} for (g, h), gh in G.comp.items()}
    unit = [ZERO] * n
    for x in G.objects:
        unit[idx[G.idents[x]]] = ONE
    alg = FiniteDimAlgebra(tuple(order), mult, tuple(unit))
    coalg = FiniteDimCoalgebra(tuple(order), tuple(((i, i, ONE),) for i in range(n)), (ONE,) * n)
    S = Matrix.from_columns([[ONE if r == idx[G.inv[g]] else ZERO for r in range(n)] for g in order])
    return WeakHopfPresentation(alg, coalg, S, f"k[{G.name}]" if G.name else "")


def linearize_hom(f: GroupoidHom) -> Matrix:
    """Matrix of the linear extension k f : k G -> k K (groupoid-algebra bases)."""
    src = f.source.basis_order()
    tgt = f.target.basis_order()
    tidx = {g: i for i, g in enumerate(tgt)}
    cols = []
    for g in src:
        col = [ZERO] * len(tgt)
        col[tidx[f.mor_map[g]]] = ONE
        cols.append(col)
    return Matrix.from_columns(cols)


def disjoint_union(G1: FiniteGroupoid, G2: FiniteGroupoid, name: str = "") -> FiniteGroupoid:
    if set(G1.objects) & set(G2.objects) or set(G1.morphisms) & set(G2.morphisms):
        raise LabelCollision("disjoint union needs disjoint object and morphism labels")
    return FiniteGroupoid(
        G1.objects + G2.objects,
        G1.morphisms + G2.morphisms,
        {**G1.src, **G2.src},
        {**G1.tgt, **G2.tgt},
        {**G1.comp, **G2.comp},
        {**G1.inv, **G2.inv},
        {**G1.idents, **G2.idents},
        name or f"{G1.name}+{G2.name}",
    )


def same_groupoid(G: FiniteGroupoid, K: FiniteGroupoid) -> bool:
    """Isomorphic via the identity on morphism labels (objects matched through identities)."""
    if set(G.morphisms) != set(K.morphisms):
        return False
    if {G.idents[x] for x in G.objects} != {K.idents[x] for x in K.objects}:
        return False
    for g in G.morphisms:
        if G.idents[G.src[g]] != K.idents[K.src[g]] or G.idents[G.tgt[g]] != K.idents[K.tgt[g]]:
            return False
        if G.inv[g] != K.inv[g]:
            return False
    return dict(G.comp) == dict(K.comp)


# ---------------------------------------------------------------- builders

@dataclass(frozen=True)
class FiniteGroup:
    """Multiplication table on labels; element 0 is the identity."""

    labels: tuple
    table: tuple  # table[i][j] = index of labels[i] * labels[j]

    @property
    def order(self) -> int:
        return len(self.labels)

    def inverse(self, i: int) -> int:
        return next(j for j in range(self.order) if self.table[i][j] == 0)


def cyclic_group(n: int, gen: str = "g") -> FiniteGroup:
    labels = tuple("1" if k == 0 else (gen if k == 1 else f"{gen}^{k}") for k in range(n))
    return FiniteGroup(labels, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def klein_group() -> FiniteGroup:
    labels = ("1", "a", "b", "ab")
    return FiniteGroup(labels, tuple(tuple(i ^ j for j in range(4)) for i in range(4)))


def symmetric_group_3() -> FiniteGroup:
    perms = sorted(itertools.permutations(range(3)))
    ident = (0, 1, 2)
    perms.remove(ident)
    perms = [ident] + perms
    names = {(0, 1, 2): "1", (1, 0, 2): "s1", (0, 2, 1): "s2", (1, 2, 0): "c", (2, 0, 1): "c^2", (2, 1, 0): "s3"}
    idx = {p: i for i, p in enumerate(perms)}

    def mul(p, r):  # p after r
        return tuple(p[r[i]] for i in range(3))

    return FiniteGroup(tuple(names[p] for p in perms), tuple(tuple(idx[mul(p, r)] for r in perms) for p in perms))


def trivial_group() -> FiniteGroup:
    return FiniteGroup(("1",), ((0,),))


def transitive_groupoid(
    objects: Sequence[str], group: FiniteGroup, name: str = "", sep: str = ":", ident: str = "e_{}"
) -> FiniteGroupoid:
    """Connected groupoid on ``objects`` with vertex group ``group``.

    A morphism x -> y is a pair (a, x -> y), composed by multiplying the
    group parts.  Identities are labelled ``ident.format(x)``.
    """
    objects = [str(x) for x in objects]
    single = len(objects) == 1

    def lab(a, s, t):
        if a == 0 and s == t:
            return ident.format(s)
        base = group.labels[a]
        return base if single else f"{base}{sep}{s}->{t}"

    mors, src, tgt, inv = [], {}, {}, {}
    data = {}
    for s in objects:
        for t in objects:
            for a in range(group.order):
                m = lab(a, s, t)
                mors.append(m)
                src[m], tgt[m] = s, t
                data[m] = (a, s, t)
    comp = {}
    for g in mors:
        a, sg, tg = data[g]
        inv[g] = lab(group.inverse(a), tg, sg)
        for h in mors:
            b, sh, th = data[h]
            if sg == th:
                comp[(g, h)] = lab(group.table[a][b], sh, tg)
    idents = {x: ident.format(x) for x in objects}
    return FiniteGroupoid(tuple(objects), tuple(mors), src, tgt, comp, inv, idents, name)


def group_groupoid(group: FiniteGroup, obj: str = "*", name: str = "", ident: str = "e_{}") -> FiniteGroupoid:
    return transitive_groupoid([obj], group, name, ident=ident)


def eq_gg_groupoid() -> FiniteGroupoid:
    """Two objects x, y with a single arrow g : x -> y and its inverse."""
    mors = ("e_x", "e_y", "g", "g^-1")
    src = {"e_x": "x", "e_y": "y", "g": "x", "g^-1": "y"}
    tgt = {"e_x": "x", "e_y": "y", "g": "y", "g^-1": "x"}
    comp = {
        ("e_x", "e_x"): "e_x",
        ("e_y", "e_y"): "e_y",
        ("g", "e_x"): "g",
        ("e_y", "g"): "g",
        ("g^-1", "e_y"): "g^-1",
        ("e_x", "g^-1"): "g^-1",
        ("g", "g^-1"): "e_y",
        ("g^-1", "g"): "e_x",
    }
    inv = {"e_x": "e_x", "e_y": "e_y", "g": "g^-1", "g^-1": "g"}
    return FiniteGroupoid(("x", "y"), mors, src, tgt, comp, inv, {"x": "e_x", "y": "e_y"}, "eqGG")


VERTEX_GROUPS = {
    "1": trivial_group,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z2xZ2": klein_group,
    "S3": symmetric_group_3,
}


def random_groupoid(rng: random.Random, max_objects: int = 4, max_morphisms: int = 12, name: str = "") -> FiniteGroupoid:
    """Disjoint union of transitive components with small vertex groups."""
    n_obj = rng.randint(1, max_objects)
    budget = max_morphisms
    remaining = n_obj
    comps = []
    while remaining:
        # every later object needs at least one morphism (its identity)
        sizes = [m for m in range(1, remaining + 1) if m * m <= budget - (remaining - m)]
        m = rng.choice(sizes)
        room = budget - (remaining - m)
        groups = [k for k, mk in VERTEX_GROUPS.items() if m * m * mk().order <= room]
        gname = rng.choice(groups)
        comps.append((m, gname))
        budget -= m * m * VERTEX_GROUPS[gname]().order
        remaining -= m
    G = None
    k = 0
    for c, (m, gname) in enumerate(comps):
        objs = [f"o{k + i}" for i in range(m)]
        k += m
        grp = VERTEX_GROUPS[gname]()
        # relabel group elements per component to keep labels disjoint
        grp = FiniteGroup(tuple(f"{lab}.{c}" for lab in grp.labels), grp.table)
        part = transitive_groupoid(objs, grp)
        G = part if G is None else disjoint_union(G, part)
    return FiniteGroupoid(G.objects, G.morphisms, G.src, G.tgt, G.comp, G.inv, G.idents, name or "random")
