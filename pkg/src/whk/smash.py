"""Smash products H # kG for object-decomposed weak Hopf algebras H = (+)_x H_x."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    FiniteDimAlgebra,
    FiniteDimCoalgebra,
    WeakHopfPresentation,
    _add_into,
    counital_maps,
    direct_sum,
    pure_tensor,
    residual,
)
from .exact import Matrix, Subspace, ONE, ZERO, vsub
from .groupoid import FiniteGroupoid
from .modalg import (
    CertificationError,
    GroupoidAction,
    HModuleAction,
    ShapeError,
    XDecompAlgebra,
    check_groupoid_module,
    check_groupoid_module_algebra,
)
from .report import Report


def summand_carrier(summands: dict, objects: Sequence[str]) -> XDecompAlgebra:
    return XDecompAlgebra.build(objects, {x: summands[x].algebra for x in objects})


def check_smash_conditions(summands: dict, act: GroupoidAction) -> Report:
    """Each nu_g must be a module-algebra map that also respects Delta and eps.

    Delta(g.a) = g.a_1 (x) g.a_2 and eps(g.a) = eps(a) for basis a of
    H_{s(g)}; together with the module-algebra axioms this says nu_g is a
    weak bialgebra isomorphism H_{s(g)} -> H_{t(g)}.
    """
    G = act.groupoid
    rep = Report("smash_conditions")
    rep.merge(check_groupoid_module(act), "module.")
    rep.merge(check_groupoid_module_algebra(act), "module_algebra.")
    rep.ran("delta_equivariant")
    rep.ran("eps_invariant")
    for g in G.morphisms:
        Hs, Ht = summands[G.src[g]], summands[G.tgt[g]]
        M = act.nu[g]
        for i in range(Hs.dim):
            img = M.column(i)
            lhs = Ht.delta(img)
            rhs: dict = {}
            for (j, k), c in Hs.coalgebra.delta_basis(i).items():
                for key, v in pure_tensor(M.column(j), M.column(k)).items():
                    _add_into(rhs, key, c * v)
            if lhs != rhs:
                d = dict(lhs)
                for key, v in rhs.items():
                    _add_into(d, key, -v)
                rep.fail("delta_equivariant", (g, Hs.labels[i]), residual(Ht.labels, d))
            e1, e2 = Ht.eps(img), Hs.coalgebra.counit[i]
            if e1 != e2:
                rep.fail("eps_invariant", (g, Hs.labels[i]), (e1 - e2,))
    return rep


@dataclass(eq=False)
class SmashProduct:
    groupoid: FiniteGroupoid
    summands: dict
    basis: tuple  # (object of a, index of a in H_x, morphism g)
    algebra: FiniteDimAlgebra
    presentation: WeakHopfPresentation | None
    algebra_only: bool
    conditions: Report

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, x_vec: Sequence, g: str) -> tuple:
        """a # g for a in H_{t(g)} given by its coordinates there."""
        out = [ZERO] * self.dim
        for idx, (x, i, h) in enumerate(self.basis):
            if h == g:
                out[idx] = x_vec[i]
        return tuple(out)


def build_smash(summands: dict, act: GroupoidAction, strict: bool = True, name: str = "") -> SmashProduct:
    """H # kG on the canonical basis a # g with a in H_{t(g)}.

    (a # h)(b # g) = a nu_h(b) # hg when s(h) = t(g) and 0 otherwise;
    Delta(a # g) = a_1 # g (x) a_2 # g; eps(a # g) = eps(a);
    S(a # g) = (1 # g^-1)(S(a) # 1).
    """
    G = act.groupoid
    conds = check_smash_conditions(summands, act)
    if not conds.ok and strict:
        raise CertificationError("smash conditions fail", conds.failures())
    basis, labels = [], []
    for g in G.basis_order():
        x = G.tgt[g]
        for i, lab in enumerate(summands[x].labels):
            basis.append((x, i, g))
            labels.append(f"{lab}#{g}")
    index = {b: k for k, b in enumerate(basis)}
    n = len(basis)

    def elem(x, vec, g) -> dict:
        return {index[(x, i, g)]: c for i, c in enumerate(vec) if c}

    mult = {}
    for p, (x, i, h) in enumerate(basis):
        Hx = summands[x]
        for r, (y, j, g) in enumerate(basis):
            if G.src[h] != G.tgt[g]:
                continue
            b = act.nu[h].column(j)
            a = Hx.algebra.basis_vector(i)
            prod = elem(x, Hx.mul(a, b), G.comp[(h, g)])
            if prod:
                mult[(p, r)] = prod
    unit = [ZERO] * n
    for x in G.objects:
        for k, v in elem(x, summands[x].unit, G.idents[x]).items():
            unit[k] = v
    alg = FiniteDimAlgebra(tuple(labels), mult, tuple(unit))
    if not conds.ok:
        return SmashProduct(G, summands, tuple(basis), alg, None, True, conds)

    comult, counit = [], []
    for x, i, g in basis:
        Hx = summands[x]
        comult.append(tuple((index[(x, j, g)], index[(x, k, g)], c) for j, k, c in Hx.coalgebra.comult[i]))
        counit.append(Hx.coalgebra.counit[i])
    coalg = FiniteDimCoalgebra(tuple(labels), tuple(comult), tuple(counit))

    S_cols = []
    for x, i, g in basis:
        Hx = summands[x]
        gi = G.inv[g]
        left = elem(G.tgt[gi], summands[G.tgt[gi]].unit, gi)  # 1 # g^-1, normalised
        right = elem(x, Hx.antipode.column(i), G.idents[x])  # S(a) # 1, normalised
        col = alg.mul_sparse(left, right)
        S_cols.append([col.get(k, ZERO) for k in range(n)])
    S = Matrix.from_columns(S_cols)
    H = WeakHopfPresentation(alg, coalg, S, name or "smash")
    return SmashProduct(G, summands, tuple(basis), alg, H, False, conds)


def base_idempotents(sm: SmashProduct) -> dict:
    G = sm.groupoid
    return {x: sm.element(sm.summands[x].unit, G.idents[x]) for x in G.objects}


def smash_base_idempotents(sm: SmashProduct) -> Report:
    """f_x = 1_{H_x} # e_x: complete, orthogonal, primitive, grouplike, spanning H_s = H_t."""
    rep = Report("smash_base_idempotents")
    H = sm.presentation
    if H is None:
        rep.fail("weak_hopf_structure", (), note="algebra-only smash product")
        return rep
    A = H.algebra
    f = base_idempotents(sm)
    maps = counital_maps(H)
    for c in ("complete", "orthogonal", "idempotent", "primitive", "grouplike", "Hs_eq_Ht", "span"):
        rep.ran(c)
    total = tuple(sum(c) for c in zip(*f.values()))
    rep.expect("complete", total == A.unit, (), vsub(total, A.unit))
    for x, e in f.items():
        rep.expect("idempotent", A.mul(e, e) == e, (x,))
        for y, e2 in f.items():
            if y != x:
                rep.expect("orthogonal", not any(A.mul(e, e2)), (x, y))
        d = Subspace.span([A.mul(b, e) for b in maps.Ht.basis], H.dim).dim
        rep.expect("primitive", d == 1, (x,), (d,))
        rep.expect("grouplike", H.delta(e) == pure_tensor(e, e), (x,))
    rep.expect("Hs_eq_Ht", maps.Hs == maps.Ht, (), (maps.Hs.dim, maps.Ht.dim))
    span = Subspace.span(list(f.values()), H.dim)
    rep.expect("span", span == maps.Ht, (), (span.dim, maps.Ht.dim))
    rep.info["dim_Ht"] = maps.Ht.dim
    return rep


def _act_on_H(act: GroupoidAction, summands_space, g: str, h: Sequence) -> tuple:
    """g . h for h in the total H: nu_g on the H_{s(g)} part, zero elsewhere."""
    G = act.groupoid
    part = summands_space.project(G.src[g], h)
    return summands_space.inject(G.tgt[g], act.nu[g].apply(part))


def smash_module_action(
    sm: SmashProduct,
    act_on_H: GroupoidAction,
    rho_H: HModuleAction,
    rho_G: HModuleAction,
) -> tuple:
    """rho(a # g) = rho_H(a) rho_G(g), after checking the conjugation identity.

    Returns (HModuleAction over the smash product, compatibility Report).
    The compatibility is rho_H(g . h) = rho_G(g) rho_H(h) rho_G(g^-1).
    """
    G = sm.groupoid
    if sm.presentation is None:
        raise ShapeError("smash product has no weak Hopf structure")
    if rho_H.dim != rho_G.dim:
        raise ShapeError("the two actions live on carriers of different dimension")
    Htot = rho_H.H
    space = summand_carrier(sm.summands, G.objects).space
    g_index = {g: k for k, g in enumerate(rho_G.H.labels)}
    rep = Report("smash_compatibility")
    rep.ran("conjugation")
    for g in G.morphisms:
        Rg = rho_G.rho[g_index[g]]
        Rgi = rho_G.rho[g_index[G.inv[g]]]
        for i in range(Htot.dim):
            h = Htot.algebra.basis_vector(i)
            lhs = rho_H.act(_act_on_H(act_on_H, space, g, h))
            rhs = Rg @ rho_H.rho[i] @ Rgi
            if lhs != rhs:
                rep.fail("conjugation", (g, Htot.labels[i]), (lhs - rhs).flatten())
    rho = []
    for x, i, g in sm.basis:
        a = space.inject(x, sm.summands[x].algebra.basis_vector(i))
        rho.append(rho_H.act(a) @ rho_G.rho[g_index[g]])
    return HModuleAction(sm.presentation, rho_H.dim, tuple(rho), "smash_action"), rep
