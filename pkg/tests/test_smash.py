import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import F, failing, function_algebra, groupoids, kZ
from test_modalg import action, m, swap_action
from whk.algebra import check_weak_hopf, direct_sum, is_cocommutative, relabel_to, same_structure, tensor_product
from whk.exact import Matrix
from whk.groupoid import FiniteGroupoid, eq_gg_groupoid, group_groupoid, groupoid_algebra, trivial_group, cyclic_group
from whk.instances import cyclic_hopf_groupoid
from whk.modalg import CertificationError, GroupoidAction, HModuleAction, check_h_module_algebra, linearize_action
from whk.smash import (
    base_idempotents,
    build_smash,
    check_smash_conditions,
    smash_base_idempotents,
    smash_module_action,
    summand_carrier,
)

G = eq_gg_groupoid()


def block_summands():
    return {x: groupoid_algebra(cyclic_hopf_groupoid(x)) for x in ("x", "y")}


def block_swap(nu_g=None):
    summands = block_summands()
    X = summand_carrier(summands, G.objects)
    g = nu_g if nu_g is not None else Matrix.identity(2)
    return summands, action(G, X, {"g": g, "g^-1": g.inverse()})


def test_block_swap_smash():
    summands, act = block_swap()
    assert check_smash_conditions(summands, act).ok
    sm = build_smash(summands, act)
    assert sm.dim == 8 and not sm.algebra_only
    assert check_weak_hopf(sm.presentation).ok
    rep = smash_base_idempotents(sm)
    assert rep.ok and rep.info["dim_Ht"] == 2
    f = base_idempotents(sm)
    assert sm.presentation.labels[f["x"].index(1)] == "1x#e_x"


def test_non_coalgebra_map_rejected():
    # 1 -> 1, g -> 1 + g is an algebra map of kZ/2 only up to its unit, and it breaks Delta
    summands, act = block_swap(m([[1, 1], [0, 1]]))
    rep = check_smash_conditions(summands, act)
    assert "delta_equivariant" in failing(rep)
    assert ("g", "gx") in {f.witness for f in rep.failures("delta_equivariant")}
    with pytest.raises(CertificationError):
        build_smash(summands, act)
    sm = build_smash(summands, act, strict=False)
    assert sm.algebra_only and sm.presentation is None
    assert not smash_base_idempotents(sm).ok


def test_trivial_group_smash_is_H():
    H = kZ(3)
    K = group_groupoid(trivial_group(), "*", name="1")
    X = summand_carrier({"*": H}, K.objects)
    act = action(K, X, {})
    sm = build_smash({"*": H}, act)
    S = relabel_to(sm.presentation, H, {f"{lab}#{K.idents['*']}": lab for lab in H.labels})
    assert same_structure(S, H)
    rep = smash_base_idempotents(sm)
    assert rep.ok and rep.info["dim_Ht"] == 1


def test_cyclic_group_on_itself_is_tensor_product():
    H = kZ(2)
    K = group_groupoid(cyclic_group(2), "*", name="Z2")
    X = summand_carrier({"*": H}, K.objects)
    act = action(K, X, {"g": Matrix.identity(2)})
    sm = build_smash({"*": H}, act)
    T = tensor_product(H, groupoid_algebra(K))
    assert same_structure(relabel_to(sm.presentation, T, {lab: lab for lab in T.labels}), T)


def three_points():
    objs = ("a", "b", "c")
    ids = {x: f"e_{x}" for x in objs}
    mors = tuple(ids.values())
    src = {ids[x]: x for x in objs}
    return FiniteGroupoid(objs, mors, src, dict(src), {(e, e): e for e in mors}, {e: e for e in mors}, ids, "3pt")


def test_three_object_trivial_action():
    K = three_points()
    summands = {x: kZ(2, x) for x in K.objects}
    X = summand_carrier(summands, K.objects)
    sm = build_smash(summands, action(K, X, {}))
    assert check_weak_hopf(sm.presentation).ok
    rep = smash_base_idempotents(sm)
    assert rep.ok and rep.info["dim_Ht"] == 3


def character_action(summands, signs):
    """H_x acts on the x-block of k^2 + k^2 by eps, or by the sign character where asked."""
    Htot = direct_sum([summands[x] for x in G.objects])
    rho = []
    for x in G.objects:
        Hx = summands[x]
        for i in range(Hx.dim):
            c = Hx.coalgebra.counit[i]
            if signs.get(x) and i == 1:
                c = -c
            block = [F(0)] * 4
            off = 2 * G.objects.index(x)
            block[off] = block[off + 1] = c
            rho.append(Matrix.diagonal(block))
    return HModuleAction(Htot, 4, tuple(rho))


def test_smash_module_action():
    summands, act = block_swap()
    sm = build_smash(summands, act)
    swap = swap_action()
    rho_G = linearize_action(swap)
    rho_H = character_action(summands, {})
    assert check_h_module_algebra(rho_H, swap.carrier.total).ok
    rho, rep = smash_module_action(sm, act, rho_H, rho_G)
    assert rep.ok
    assert check_h_module_algebra(rho, swap.carrier.total).ok
    bad, rep = smash_module_action(sm, act, character_action(summands, {"y": True}), rho_G)
    assert not rep.ok
    assert ("g", "gx") in {f.witness for f in rep.failures("conjugation")}


def test_trivial_smash_action_reduces():
    H = kZ(2)
    K = group_groupoid(trivial_group(), "*", name="1")
    X = summand_carrier({"*": H}, K.objects)
    act = action(K, X, {})
    sm = build_smash({"*": H}, act)
    sign = HModuleAction(H, 1, (Matrix.identity(1), Matrix([[F(-1)]])))
    rho_G = HModuleAction(groupoid_algebra(K), 1, (Matrix.identity(1),))
    rho, rep = smash_module_action(sm, act, sign, rho_G)
    assert rep.ok and rho.rho == sign.rho


def hopf_automorphism(n, k):
    """g^i -> g^(k i) on kZ/n and on its dual (same permutation of the basis)."""
    return Matrix.from_columns([[F(int(r == (k * i) % n)) for r in range(n)] for i in range(n)])


@given(groupoids(max_objects=3, max_morphisms=8), st.integers(0, 10**6))
@settings(max_examples=25)
def test_smash_invariants(K, seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    base = kZ(n) if rng.random() < 0.5 else function_algebra(n)
    summands = {x: base for x in K.objects}
    units = [k for k in range(1, n) if k == 1 or n == 3]
    C = {x: hopf_automorphism(n, rng.choice(units)) for x in K.objects}
    X = summand_carrier(summands, K.objects)
    act = GroupoidAction(K, X, {g: C[K.tgt[g]] @ C[K.src[g]].inverse() for g in K.morphisms})
    assert check_smash_conditions(summands, act).ok
    sm = build_smash(summands, act)
    assert sm.dim == sum(summands[K.tgt[g]].dim for g in K.morphisms)
    assert check_weak_hopf(sm.presentation).ok
    assert is_cocommutative(sm.presentation) == is_cocommutative(base)
    rep = smash_base_idempotents(sm)
    assert rep.ok and rep.info["dim_Ht"] == len(K.objects)
