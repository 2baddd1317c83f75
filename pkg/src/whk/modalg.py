"""Groupoid actions, module algebras, Hopf ideals and inner faithfulness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    FiniteDimAlgebra,
    WeakHopfPresentation,
    algebra_direct_sum,
    corner_algebra,
    counital_maps,
    dual_algebra,
    format_vector,
    generated_subalgebra,
    pure_tensor,
    subalgebra_structure,
    two_sided_ideal,
)
from .exact import (
    Matrix,
    Subspace,
    ONE,
    ZERO,
    column_space,
    kernel,
    kronecker,
    stack,
    unit_vector,
    vsub,
)
from .groupoid import FiniteGroupoid, groupoid_algebra
from .grouplike import is_grouplike, primitive_idempotents
from .report import Report


class ShapeError(ValueError):
    pass


class CertificationError(ValueError):
    def __init__(self, message: str, failures: list | None = None):
        super().__init__(message)
        self.failures = failures or []


class DecompositionError(ValueError):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------- carriers

@dataclass(frozen=True, eq=False)
class XDecompSpace:
    objects: tuple
    dims: dict

    @property
    def total_dim(self) -> int:
        return sum(self.dims[x] for x in self.objects)

    def offset(self, x: str) -> int:
        off = 0
        for y in self.objects:
            if y == x:
                return off
            off += self.dims[y]
        raise KeyError(x)

    def inject(self, x: str, v: Sequence) -> tuple:
        out = [ZERO] * self.total_dim
        off = self.offset(x)
        for i, c in enumerate(v):
            out[off + i] = c
        return tuple(out)

    def project(self, x: str, v: Sequence) -> tuple:
        off = self.offset(x)
        return tuple(v[off:off + self.dims[x]])


@dataclass(frozen=True, eq=False)
class XDecompAlgebra:
    """Direct sum of unital algebras A_x indexed by objects.

    ``embeddings[x]`` maps A_x into ``total``; for an algebra assembled
    block-diagonally these are coordinate inclusions, for one recovered
    from idempotents they land in the original algebra.
    """

    objects: tuple
    components: dict
    total: FiniteDimAlgebra
    local_identities: dict
    embeddings: dict

    @classmethod
    def build(cls, objects: Sequence[str], components: dict) -> "XDecompAlgebra":
        objects = tuple(objects)
        labels = [lab for x in objects for lab in components[x].labels]
        prefix = len(set(labels)) != len(labels)
        parts = []
        for x in objects:
            A = components[x]
            if prefix:
                A = FiniteDimAlgebra(tuple(f"{x}.{lab}" for lab in A.labels), A.mult, A.unit)
            parts.append(A)
        total = algebra_direct_sum(parts)
        space = XDecompSpace(objects, {x: components[x].dim for x in objects})
        ids, embs = {}, {}
        for x in objects:
            ids[x] = space.inject(x, components[x].unit)
            d = components[x].dim
            cols = [space.inject(x, unit_vector(d, i)) for i in range(d)]
            embs[x] = Matrix.from_columns(cols, total.dim) if cols else Matrix.zeros(total.dim, 0)
        return cls(objects, dict(components), total, ids, embs)

    @property
    def space(self) -> XDecompSpace:
        return XDecompSpace(self.objects, {x: self.components[x].dim for x in self.objects})

    @property
    def dims(self) -> dict:
        return {x: self.components[x].dim for x in self.objects}


def check_xdecomp(X: XDecompAlgebra) -> Report:
    """Local identities: orthogonal, central, idempotent, summing to 1."""
    A = X.total
    rep = Report("xdecomp")
    for c in ("idempotent", "orthogonal", "central", "complete"):
        rep.ran(c)
    ids = X.local_identities
    for x in X.objects:
        e = ids[x]
        rep.expect("idempotent", A.mul(e, e) == e, (x,))
        for y in X.objects:
            if y != x:
                rep.expect("orthogonal", not any(A.mul(e, ids[y])), (x, y))
        for i in range(A.dim):
            b = A.basis_vector(i)
            rep.expect("central", A.mul(e, b) == A.mul(b, e), (x, A.labels[i]))
    total = tuple(sum(c) for c in zip(*ids.values())) if ids else ()
    rep.expect("complete", total == A.unit, (), tuple(vsub(total, A.unit)) if total else ())
    return rep


# ---------------------------------------------------------------- groupoid actions

@dataclass(frozen=True, eq=False)
class GroupoidAction:
    groupoid: FiniteGroupoid
    carrier: object  # XDecompSpace or XDecompAlgebra
    nu: dict  # morphism label -> Matrix V_{s(g)} -> V_{t(g)}
    name: str = ""

    def __post_init__(self):
        G, dims = self.groupoid, self.carrier.dims
        if set(self.carrier.objects) != set(G.objects):
            raise ShapeError("carrier objects differ from the groupoid objects")
        for g in G.morphisms:
            if g not in self.nu:
                raise ShapeError(f"no structure map for morphism {g!r}")
            M = self.nu[g]
            if M.shape != (dims[G.tgt[g]], dims[G.src[g]]):
                raise ShapeError(f"structure map of {g!r} has shape {M.shape}, expected {(dims[G.tgt[g]], dims[G.src[g]])}")


def check_groupoid_module(act: GroupoidAction) -> Report:
    G, nu = act.groupoid, act.nu
    rep = Report(act.name or "groupoid_module")
    for c in ("composition", "identity", "invertible"):
        rep.ran(c)
    for (g, h), gh in G.comp.items():
        d = nu[g] @ nu[h] - nu[gh]
        rep.expect("composition", d.is_zero(), (g, h), d.flatten() if not d.is_zero() else ())
    for x in G.objects:
        e = nu[G.idents[x]]
        rep.expect("identity", e == Matrix.identity(e.rows), (x,))
    for g in G.morphisms:
        M = nu[g]
        ok = M.is_square() and (M.rows == 0 or M.det() != 0)
        rep.expect("invertible", ok, (g,))
        if ok and M.rows:
            rep.ran("inverse_is_nu_of_inverse")
            rep.expect("inverse_is_nu_of_inverse", M.inverse() == nu[G.inv[g]], (g,))
    return rep


def check_groupoid_module_algebra(act: GroupoidAction) -> Report:
    """g.(ab) = (g.a)(g.b) on basis pairs of A_{s(g)}, and g.1_{s(g)} = 1_{t(g)}."""
    X = act.carrier
    if not isinstance(X, XDecompAlgebra):
        raise ShapeError("module-algebra check needs an XDecompAlgebra carrier")
    G, nu = act.groupoid, act.nu
    rep = Report(act.name or "groupoid_module_algebra")
    rep.ran("multiplicative")
    rep.ran("unital")
    for g in G.morphisms:
        As, At = X.components[G.src[g]], X.components[G.tgt[g]]
        M = nu[g]
        imgs = [M.column(i) for i in range(As.dim)]
        for i in range(As.dim):
            for j in range(As.dim):
                lhs = M.apply(As.mul(As.basis_vector(i), As.basis_vector(j)))
                rhs = At.mul(imgs[i], imgs[j])
                if lhs != rhs:
                    rep.fail("multiplicative", (g, As.labels[i], As.labels[j]), vsub(lhs, rhs))
        img1 = M.apply(As.unit)
        if img1 != At.unit:
            rep.fail("unital", (g, As.unit, img1), vsub(img1, At.unit))
    return rep


@dataclass(frozen=True, eq=False)
class AutFunctor:
    """A functor G -> Aut_X(A) with x -> A_x; images are certified isomorphisms."""

    groupoid: FiniteGroupoid
    carrier: XDecompAlgebra
    obj_map: dict
    images: dict


def certify_algebra_iso(As: FiniteDimAlgebra, At: FiniteDimAlgebra, M: Matrix) -> list:
    """Names of violated conditions for M to be a unital algebra isomorphism."""
    bad = []
    if M.shape != (At.dim, As.dim) or not M.is_square() or (M.rows and M.det() == 0):
        bad.append("invertible")
        return bad
    if M.apply(As.unit) != At.unit:
        bad.append("unital")
    for i in range(As.dim):
        for j in range(As.dim):
            if M.apply(As.mul(As.basis_vector(i), As.basis_vector(j))) != At.mul(M.column(i), M.column(j)):
                bad.append("multiplicative")
                return bad
    return bad


def action_to_functor(act: GroupoidAction) -> AutFunctor:
    X = act.carrier
    G = act.groupoid
    failures = []
    for g in G.morphisms:
        for cond in certify_algebra_iso(X.components[G.src[g]], X.components[G.tgt[g]], act.nu[g]):
            failures.append((g, cond))
    if not check_groupoid_module(act).ok:
        failures.append(("*", "functoriality"))
    if failures:
        raise CertificationError(f"structure maps are not X-algebra isomorphisms: {failures}", failures)
    return AutFunctor(G, X, {x: x for x in G.objects}, dict(act.nu))


def functor_to_action(F: AutFunctor) -> GroupoidAction:
    G, X = F.groupoid, F.carrier
    failures = []
    for x in G.objects:
        if F.obj_map.get(x) != x:
            failures.append((x, "object_map"))
    for g in G.morphisms:
        for cond in certify_algebra_iso(X.components[G.src[g]], X.components[G.tgt[g]], F.images[g]):
            failures.append((g, cond))
    for (g, h), gh in G.comp.items():
        if F.images[g] @ F.images[h] != F.images[gh]:
            failures.append(((g, h), "functoriality"))
    for x in G.objects:
        e = F.images[G.idents[x]]
        if e != Matrix.identity(e.rows):
            failures.append((x, "identity"))
    if failures:
        raise CertificationError(f"functor images fail certification: {failures}", failures)
    return GroupoidAction(G, X, dict(F.images))


def same_action(a: GroupoidAction, b: GroupoidAction) -> bool:
    return a.groupoid is b.groupoid and a.carrier is b.carrier and a.nu == b.nu


def tensor_action(a: GroupoidAction, b: GroupoidAction) -> GroupoidAction:
    """Componentwise tensor product with structure maps nu_g (x) omega_g."""
    if a.groupoid is not b.groupoid and a.groupoid.morphisms != b.groupoid.morphisms:
        raise ValueError("tensor product of actions of different groupoids")
    G = a.groupoid
    space = XDecompSpace(G.objects, {x: a.carrier.dims[x] * b.carrier.dims[x] for x in G.objects})
    return GroupoidAction(G, space, {g: kronecker(a.nu[g], b.nu[g]) for g in G.morphisms})


def unit_action(G: FiniteGroupoid) -> GroupoidAction:
    space = XDecompSpace(G.objects, {x: 1 for x in G.objects})
    return GroupoidAction(G, space, {g: Matrix.identity(1) for g in G.morphisms})


def check_module_morphism(f: dict, a: GroupoidAction, b: GroupoidAction) -> Report:
    """omega_g f_{s(g)} = f_{t(g)} nu_g for every morphism."""
    G = a.groupoid
    rep = Report("module_morphism")
    rep.ran("intertwines")
    for g in G.morphisms:
        d = b.nu[g] @ f[G.src[g]] - f[G.tgt[g]] @ a.nu[g]
        rep.expect("intertwines", d.is_zero(), (g,), d.flatten() if not d.is_zero() else ())
    return rep


# ---------------------------------------------------------------- H-module actions

@dataclass(frozen=True, eq=False)
class HModuleAction:
    H: WeakHopfPresentation
    dim: int
    rho: tuple  # one Matrix per basis element of H
    name: str = ""

    def __post_init__(self):
        if len(self.rho) != self.H.dim:
            raise ShapeError(f"need {self.H.dim} action matrices, got {len(self.rho)}")
        for M in self.rho:
            if M.shape != (self.dim, self.dim):
                raise ShapeError(f"action matrix of shape {M.shape} on a {self.dim}-dim carrier")

    def act(self, h: Sequence) -> Matrix:
        acc = Matrix.zeros(self.dim, self.dim)
        for c, M in zip(h, self.rho):
            if c:
                acc = acc + M.scale(c)
        return acc


def check_h_module(act: HModuleAction) -> Report:
    H = act.H
    A = H.algebra
    rep = Report("h_module")
    rep.ran("multiplicative")
    rep.ran("unit")
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = act.rho[i] @ act.rho[j]
            rhs = act.act(A.mul(A.basis_vector(i), A.basis_vector(j)))
            if lhs != rhs:
                rep.fail("multiplicative", (A.labels[i], A.labels[j]), (lhs - rhs).flatten())
    one = act.act(A.unit)
    rep.expect("unit", one == Matrix.identity(act.dim), ("1",))
    return rep


def check_h_module_algebra(act: HModuleAction, A: FiniteDimAlgebra) -> Report:
    """h.(ab) = (h1.a)(h2.b) and h.1 = eps_t(h).1 on basis elements."""
    H = act.H
    if A.dim != act.dim:
        raise ShapeError("carrier algebra dimension differs from the action")
    rep = Report(act.name or "h_module_algebra")
    rep.merge(check_h_module(act), "module.")
    rep.ran("multiplicative")
    rep.ran("unital")
    maps = counital_maps(H)
    n = A.dim
    basis = [A.basis_vector(i) for i in range(n)]
    images = [[act.rho[k].column(i) for i in range(n)] for k in range(H.dim)]
    for h in range(H.dim):
        terms = H.coalgebra.comult[h]
        for a in range(n):
            for b in range(n):
                lhs = act.rho[h].apply(A.mul(basis[a], basis[b]))
                rhs = [ZERO] * n
                for j, k, c in terms:
                    p = A.mul(images[j][a], images[k][b])
                    for t in range(n):
                        rhs[t] += c * p[t]
                d = vsub(lhs, rhs)
                if any(d):
                    rep.fail("multiplicative", (H.labels[h], A.labels[a], A.labels[b]), d)
        lhs = act.rho[h].apply(A.unit)
        rhs = act.act(maps.eps_t.column(h)).apply(A.unit)
        if lhs != rhs:
            rep.fail("unital", (H.labels[h],), vsub(lhs, rhs))
    return rep


def _block(space, x_to: str, x_from: str, M: Matrix) -> Matrix:
    n = space.total_dim
    out = [[ZERO] * n for _ in range(n)]
    r0, c0 = space.offset(x_to), space.offset(x_from)
    for i in range(M.rows):
        for j in range(M.cols):
            out[r0 + i][c0 + j] = M[i, j]
    return Matrix(out, n) if n else Matrix.zeros(0, 0)


def linearize_action(act: GroupoidAction, H: WeakHopfPresentation | None = None) -> HModuleAction:
    """rho(g) = nu_g padded by zero outside V_{s(g)}, over the groupoid algebra."""
    G = act.groupoid
    H = H or groupoid_algebra(G)
    space = act.carrier.space if isinstance(act.carrier, XDecompAlgebra) else act.carrier
    rho = tuple(_block(space, G.tgt[g], G.src[g], act.nu[g]) for g in G.basis_order())
    if tuple(G.basis_order()) != H.labels:
        raise ShapeError("groupoid algebra basis does not match the groupoid")
    return HModuleAction(H, space.total_dim, rho, act.name)


def delinearize_action(lin: HModuleAction, G: FiniteGroupoid, carrier) -> GroupoidAction:
    """Read nu_g back off the blocks of rho(g)."""
    space = carrier.space if isinstance(carrier, XDecompAlgebra) else carrier
    nu = {}
    for i, g in enumerate(G.basis_order()):
        s, t = G.src[g], G.tgt[g]
        r0, c0 = space.offset(t), space.offset(s)
        rows = range(r0, r0 + space.dims[t])
        cols = range(c0, c0 + space.dims[s])
        nu[g] = lin.rho[i].restrict(list(rows), list(cols)) if space.dims[t] else Matrix.zeros(0, space.dims[s])
    return GroupoidAction(G, carrier, nu)


# ---------------------------------------------------------------- decomposition

def decompose_from_idempotents(
    H: WeakHopfPresentation,
    act: HModuleAction,
    A: FiniteDimAlgebra,
    idempotents: dict | None = None,
) -> XDecompAlgebra:
    """Split a module algebra with the local identities e_i . 1_A.

    Requires H_s = H_t.  When ``idempotents`` is omitted the primitive
    idempotents of H_t are computed.
    """
    maps = counital_maps(H)
    if maps.Hs != maps.Ht:
        raise DecompositionError("H_s and H_t differ")
    Halg = H.algebra
    if idempotents is None:
        Ht_alg, emb = subalgebra_structure(Halg, maps.Ht)
        prim, split = primitive_idempotents(Ht_alg)
        if not split:
            raise DecompositionError("H_t does not split over the rationals")
        idempotents = {format_vector(H.labels, emb.apply(p)): emb.apply(p) for p in prim}
    rep = Report("decomposition")
    for c in ("primitive", "grouplike", "central", "orthogonal", "complete", "cross_action_zero"):
        rep.ran(c)
    for x, e in idempotents.items():
        if not maps.Ht.contains(e) or Halg.mul(e, e) != tuple(e):
            raise DecompositionError(f"{x!r} is not an idempotent of H_t")
        dim_block = Subspace.span([Halg.mul(b, e) for b in maps.Ht.basis], H.dim).dim
        rep.expect("primitive", dim_block == 1, (x,), (dim_block,))
        rep.expect("grouplike", H.delta(e) == pure_tensor(e, e), (x,))
    if not rep.passed("primitive"):
        raise DecompositionError("supplied idempotents are not primitive", rep)
    ones = {x: act.act(e).apply(A.unit) for x, e in idempotents.items()}
    for x, u in ones.items():
        for i in range(A.dim):
            b = A.basis_vector(i)
            rep.expect("central", A.mul(u, b) == A.mul(b, u), (x, A.labels[i]))
        for y, v in ones.items():
            if y != x:
                rep.expect("orthogonal", not any(A.mul(u, v)), (x, y))
    total = tuple(sum(c) for c in zip(*ones.values()))
    rep.expect("complete", total == A.unit, (), vsub(total, A.unit))
    components, embs = {}, {}
    objects = tuple(idempotents)
    for x in objects:
        V = column_space(A.left_matrix(ones[x]))
        comp, emb = corner_algebra(A, V, ones[x], prefix=f"{x}.")
        components[x], embs[x] = comp, emb
        for y, e in idempotents.items():
            if y != x:
                img = act.act(e)
                rep.expect("cross_action_zero", all(not any(img.apply(v)) for v in V.basis), (y, x))
    if not rep.ok:
        raise DecompositionError("idempotent decomposition failed", rep)
    return XDecompAlgebra(objects, components, A, ones, embs)


# ---------------------------------------------------------------- Hopf ideals

@dataclass(eq=False)
class HopfIdealWitness:
    parent: WeakHopfPresentation
    ideal: Subspace
    report: Report

    @property
    def ok(self) -> bool:
        return self.report.ok

    def generators(self) -> list:
        """Basis normalised so the highest-index coefficient is 1."""
        out = []
        for v in self.ideal.basis:
            k = max(i for i, c in enumerate(v) if c)
            out.append(tuple(c / v[k] for c in v))
        return out

    def describe(self) -> list:
        return [format_vector(self.parent.labels, v) for v in self.generators()]


def ideal_from_generators(H: WeakHopfPresentation, gens: Sequence[Sequence]) -> Subspace:
    return two_sided_ideal(H.algebra, gens)


def is_hopf_ideal(H: WeakHopfPresentation, I: Subspace) -> HopfIdealWitness:
    A = H.algebra
    n = H.dim
    L = H.labels
    rep = Report("hopf_ideal")
    for c in ("two_sided_ideal", "coideal", "counit", "antipode"):
        rep.ran(c)
    for v in I.basis:
        name = format_vector(L, v)
        for i in range(n):
            b = A.basis_vector(i)
            if not I.contains(A.mul(b, v)):
                rep.fail("two_sided_ideal", (L[i], name), note="left")
            if not I.contains(A.mul(v, b)):
                rep.fail("two_sided_ideal", (name, L[i]), note="right")
        e = H.eps(v)
        if e:
            rep.fail("counit", (name,), (e,))
        if H.antipode is not None and not I.contains(H.S(v)):
            rep.fail("antipode", (name,))
    # Delta(I) in I(x)H + H(x)I  iff  (f (x) g) Delta(v) = 0 for f, g in I-perp
    P = I.annihilator().basis
    for v in I.basis:
        D = H.delta(v)
        for a, f in enumerate(P):
            for b, g in enumerate(P):
                val = sum((c * f[j] * g[k] for (j, k), c in D.items()), ZERO)
                if val:
                    rep.fail("coideal", (format_vector(L, v),), (a, b, val))
    return HopfIdealWitness(H, I, rep)


def largest_ideal_in(A: FiniteDimAlgebra, W: Subspace) -> Subspace:
    """Largest two-sided ideal contained in W."""
    n = A.dim
    while True:
        ann = W.annihilator()
        if not ann.basis:
            return W
        P = ann.matrix()
        blocks = [P]
        for i in range(n):
            blocks.append(P @ A.left_basis_matrix(i))
            blocks.append(P @ A.right_basis_matrix(i))
        W2 = kernel(stack(blocks, n))
        if W2 == W:
            return W
        W = W2


def largest_coideal_in(H: WeakHopfPresentation, W: Subspace) -> Subspace:
    """Largest coideal J in W with eps(J) = 0, as the annihilator of <W-perp, eps>."""
    D = dual_algebra(H)
    B = generated_subalgebra(D, W.annihilator().basis, unital=True)
    return B.annihilator()


def largest_antipode_stable_in(H: WeakHopfPresentation, W: Subspace) -> Subspace:
    S = H.antipode
    while True:
        W2 = W.intersect(W.preimage(S))
        if W2 == W:
            return W
        W = W2


def largest_hopf_ideal_in(H: WeakHopfPresentation, W: Subspace, exhaustive: bool = False, prime: int | None = None) -> HopfIdealWitness:
    """Largest weak Hopf ideal inside W by a decreasing fixed point.

    Each step (largest ideal, largest coideal with eps = 0, S-stable part)
    only shrinks W and keeps every Hopf ideal contained in it, so the
    limit is the maximum.  With ``exhaustive`` the answer is compared with
    a brute-force search over GF(p).
    """
    if H.antipode is None:
        raise ValueError("largest Hopf ideal needs an antipode")
    H.antipode_inverse  # raises on a singular antipode
    steps = 0
    while True:
        steps += 1
        W1 = largest_ideal_in(H.algebra, W)
        W2 = largest_coideal_in(H, W1)
        W3 = largest_antipode_stable_in(H, W2)
        if W3 == W:
            break
        W = W3
    wit = is_hopf_ideal(H, W)
    if not wit.ok:
        raise ArithmeticError("fixed point is not a Hopf ideal")
    wit.report.info["iterations"] = steps
    if exhaustive:
        from .brute import agrees_with_brute_force
        rep = Report("exhaustive")
        same, p = agrees_with_brute_force(H, W, wit.ideal, prime)
        rep.expect("matches_exhaustive_search", same, (f"GF({p})",))
        wit.report.merge(rep, "exhaustive.")
    return wit


def annihilator_of_action(act: HModuleAction) -> Subspace:
    """{h : rho(h) = 0} as a subspace of H."""
    cols = [M.flatten() for M in act.rho]
    if act.dim == 0:
        return Subspace.full(act.H.dim)
    return kernel(Matrix.from_columns(cols))


@dataclass(eq=False)
class InnerFaithfulResult:
    faithful: bool
    annihilator: Subspace
    witness: HopfIdealWitness

    def to_dict(self) -> dict:
        return {
            "inner_faithful": self.faithful,
            "annihilator_dim": self.annihilator.dim,
            "hopf_ideal": self.witness.describe(),
        }


def inner_faithful(H: WeakHopfPresentation, act: HModuleAction, exhaustive: bool = False) -> InnerFaithfulResult:
    ann = annihilator_of_action(act)
    wit = largest_hopf_ideal_in(H, ann, exhaustive=exhaustive)
    return InnerFaithfulResult(wit.ideal.dim == 0, ann, wit)


# ---------------------------------------------------------------- maps

def check_x_map(
    f: Matrix,
    A: FiniteDimAlgebra | WeakHopfPresentation,
    B: FiniteDimAlgebra | WeakHopfPresentation,
    idems_a: dict | None = None,
    idems_b: dict | None = None,
) -> Report:
    """Unital algebra map preserving the idempotent families.

    When both sides are weak Hopf presentations the coalgebra structure
    and antipode are compared too.
    """
    weak = isinstance(A, WeakHopfPresentation) and isinstance(B, WeakHopfPresentation)
    Aa = A.algebra if isinstance(A, WeakHopfPresentation) else A
    Ba = B.algebra if isinstance(B, WeakHopfPresentation) else B
    rep = Report("x_map")
    if f.shape != (Ba.dim, Aa.dim):
        raise ShapeError(f"map of shape {f.shape} between dims {Aa.dim} -> {Ba.dim}")
    rep.ran("multiplicative")
    for i in range(Aa.dim):
        for j in range(Aa.dim):
            lhs = f.apply(Aa.mul(Aa.basis_vector(i), Aa.basis_vector(j)))
            rhs = Ba.mul(f.column(i), f.column(j))
            if lhs != rhs:
                rep.fail("multiplicative", (Aa.labels[i], Aa.labels[j]), vsub(lhs, rhs))
    img1 = f.apply(Aa.unit)
    rep.expect("unital", img1 == Ba.unit, ("1",), vsub(img1, Ba.unit))
    if idems_a is not None:
        rep.ran("idempotents")
        for x, e in idems_a.items():
            rep.expect("idempotents", x in idems_b and f.apply(e) == tuple(idems_b[x]), (x,))
    if weak:
        for c in ("comultiplicative", "counit", "antipode"):
            rep.ran(c)
        for i in range(Aa.dim):
            lhs = B.delta(f.column(i))
            rhs: dict = {}
            for (j, k), c in A.coalgebra.delta_basis(i).items():
                for key, v in pure_tensor(f.column(j), f.column(k)).items():
                    rhs[key] = rhs.get(key, ZERO) + c * v
            rhs = {k: v for k, v in rhs.items() if v}
            rep.expect("comultiplicative", lhs == rhs, (Aa.labels[i],))
            rep.expect("counit", B.eps(f.column(i)) == A.coalgebra.counit[i], (Aa.labels[i],))
        if A.antipode is not None and B.antipode is not None:
            d = B.antipode @ f - f @ A.antipode
            rep.expect("antipode", d.is_zero(), (), d.flatten() if not d.is_zero() else ())
    return rep


def groupoid_idempotents(G: FiniteGroupoid) -> dict:
    """{x: e_x} in the groupoid-algebra basis."""
    order = G.basis_order()
    return {x: unit_vector(len(order), order.index(G.idents[x])) for x in G.objects}
