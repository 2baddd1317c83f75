import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import F, failing, groupoids, kZ
from whk.algebra import counital_maps, product_algebra
from whk.brute import agrees_with_brute_force
from whk.carriers import TruncationError, laurent_shift, nilpotent_algebra
from whk.exact import Matrix, Subspace
from whk.groupoid import eq_gg_groupoid, groupoid_algebra, group_groupoid, trivial_group
from whk.instances import sqrt2_field, two_vertex_groupoid
from whk.modalg import (
    CertificationError,
    DecompositionError,
    GroupoidAction,
    HModuleAction,
    ShapeError,
    XDecompAlgebra,
    action_to_functor,
    annihilator_of_action,
    check_groupoid_module,
    check_groupoid_module_algebra,
    check_h_module,
    check_h_module_algebra,
    check_module_morphism,
    check_x_map,
    decompose_from_idempotents,
    delinearize_action,
    functor_to_action,
    ideal_from_generators,
    inner_faithful,
    is_hopf_ideal,
    largest_hopf_ideal_in,
    linearize_action,
    tensor_action,
    unit_action,
)

G = eq_gg_groupoid()
kG = groupoid_algebra(G)


def m(rows):
    return Matrix([[F(x) for x in r] for r in rows])


def action(K, X, nu, name=""):
    full = dict(nu)
    for x in K.objects:
        full.setdefault(K.idents[x], Matrix.identity(X.dims[x]))
    return GroupoidAction(K, X, full, name)


def swap_action(flip=False):
    X = XDecompAlgebra.build(["x", "y"], {"x": product_algebra(["x1", "x2"]), "y": product_algebra(["y1", "y2"])})
    g = m([[0, 1], [-1, 0]]) if flip else m([[0, 1], [1, 0]])
    return action(G, X, {"g": g, "g^-1": g.inverse()})


def sign_swap_action():
    X = XDecompAlgebra.build(["x", "y"], {"x": product_algebra(["x1", "x2", "x3"]), "y": product_algebra(["y1", "y2", "y3"])})
    w = m([[-1, 0, 0], [0, 0, 1], [0, 1, 0]])
    return action(G, X, {"g": w, "g^-1": w})


def coordinate(label, labels):
    return tuple(F(1) if lab == label else F(0) for lab in labels)


# ------------------------------------------------------------ groupoid modules

def test_module_examples():
    assert check_groupoid_module(swap_action()).ok
    assert check_groupoid_module(sign_swap_action()).ok
    z = swap_action()
    bad = action(G, z.carrier, {"g": Matrix.zeros(2, 2), "g^-1": Matrix.zeros(2, 2)})
    rep = check_groupoid_module(bad)
    assert "invertible" in failing(rep)
    assert {f.witness for f in rep.failures("invertible")} == {("g",), ("g^-1",)}


def test_shape_errors():
    X = swap_action().carrier
    with pytest.raises(ShapeError):
        action(G, X, {"g": Matrix.identity(3), "g^-1": Matrix.identity(2)})
    with pytest.raises(ShapeError):
        GroupoidAction(G, X, {"g": Matrix.identity(2)})


def test_module_algebra_examples():
    assert check_groupoid_module_algebra(swap_action()).ok
    rep = check_groupoid_module_algebra(sign_swap_action())
    assert not rep.passed("unital")
    fs = [f for f in rep.failures("unital") if f.witness[0] == "g"]
    assert fs[0].witness == ("g", (1, 1, 1), (-1, 1, 1))
    # the sign also breaks multiplicativity: g.(a1 a1) = -b1 but (g.a1)^2 = b1
    assert not rep.passed("multiplicative")
    X = sign_swap_action().carrier
    assert check_groupoid_module_algebra(action(G, X, {"g": Matrix.identity(3), "g^-1": Matrix.identity(3)})).ok


def test_functor_round_trip():
    act = swap_action()
    Fn = action_to_functor(act)
    assert Fn.obj_map == {"x": "x", "y": "y"}
    assert Fn.images["g"] == m([[0, 1], [1, 0]])
    back = functor_to_action(Fn)
    assert back.nu == act.nu and action_to_functor(back).images == Fn.images
    ident = action(G, act.carrier, {"g": Matrix.identity(2), "g^-1": Matrix.identity(2)})
    assert all(M == Matrix.identity(2) for M in action_to_functor(ident).images.values())
    with pytest.raises(CertificationError) as err:
        action_to_functor(sign_swap_action())
    assert ("g", "unital") in err.value.failures


# ------------------------------------------------------------ H-module algebras

def test_h_module_algebra_examples():
    act = swap_action()
    lin = linearize_action(act)
    assert len(lin.rho) == 4 and lin.dim == 4
    assert check_h_module_algebra(lin, act.carrier.total).ok
    H = kZ(2)
    triv = HModuleAction(H, 1, tuple(Matrix([[c]]) for c in H.coalgebra.counit))
    assert check_h_module_algebra(triv, product_algebra(["a"])).ok
    flip = swap_action(flip=True)
    assert check_groupoid_module(flip).ok
    rep = check_h_module_algebra(linearize_action(flip), flip.carrier.total)
    assert failing(rep) == {"multiplicative", "unital"}
    assert ("g", "x1", "x1") in {f.witness for f in rep.failures("multiplicative")}


def test_linearize_identity_groupoid():
    K = group_groupoid(trivial_group(), "x")
    X = XDecompAlgebra.build(["x"], {"x": product_algebra(["a", "b"])})
    lin = linearize_action(action(K, X, {}))
    assert lin.rho == (Matrix.identity(2),)
    X2 = swap_action().carrier
    lin = linearize_action(action(G, X2, {"g": Matrix.identity(2), "g^-1": Matrix.identity(2)}))
    P = lin.rho[0] + lin.rho[1]
    assert P == Matrix.identity(4)
    assert lin.rho[0] @ lin.rho[0] == lin.rho[0]


def test_laurent_truncation_rejected():
    with pytest.raises(TruncationError, match="'g'"):
        laurent_shift(-2, 2, 1)
    assert laurent_shift(-2, 2, 0) == Matrix.identity(5)


# ------------------------------------------------------------ decomposition

def test_decompose_swap():
    act = swap_action()
    X = decompose_from_idempotents(kG, linearize_action(act), act.carrier.total)
    ones = sorted(X.local_identities.values())
    assert ones == [(0, 0, 1, 1), (1, 1, 0, 0)]
    assert all(c.dim == 2 for c in X.components.values())


def test_decompose_single_object():
    H = kZ(2)
    A = nilpotent_algebra(3)
    rho = tuple(Matrix.identity(3).scale(c) for c in H.coalgebra.counit)
    X = decompose_from_idempotents(H, HModuleAction(H, 3, rho), A)
    assert len(X.objects) == 1
    (comp,) = X.components.values()
    assert comp.dim == 3 and list(X.local_identities.values()) == [A.unit]


def test_decompose_direct_sum_blocks():
    K = two_vertex_groupoid()
    H = groupoid_algebra(K)
    X = XDecompAlgebra.build(["1", "2"], {"1": product_algebra(["a", "b"]), "2": nilpotent_algebra(2, "t")})
    act = action(K, X, {"g1": m([[0, 1], [1, 0]]), "g2": m([[1, 0], [0, -1]])})
    assert check_groupoid_module_algebra(act).ok
    D = decompose_from_idempotents(H, linearize_action(act), X.total)
    dims = sorted(c.dim for c in D.components.values())
    assert dims == [2, 2]
    assert sorted(D.local_identities.values()) == [(0, 0, 1, 0), (1, 1, 0, 0)]


def test_decompose_rejects_hs_ne_ht():
    from helpers import dual_hopf

    D = dual_hopf(kG)
    maps = counital_maps(D)
    assert maps.Hs != maps.Ht
    rho = tuple(Matrix.identity(1).scale(c) for c in D.coalgebra.counit)
    with pytest.raises(DecompositionError):
        decompose_from_idempotents(D, HModuleAction(D, 1, rho), product_algebra(["a"]))


def test_decompose_rejects_non_primitive():
    act = swap_action()
    one = kG.unit
    with pytest.raises(DecompositionError) as err:
        decompose_from_idempotents(kG, linearize_action(act), act.carrier.total, {"all": one})
    assert not err.value.report.passed("primitive")


# ------------------------------------------------------------ Hopf ideals

def test_ideal_examples():
    H = groupoid_algebra(two_vertex_groupoid())
    gen = tuple(F(1) if lab == "g2" else F(-1) if lab == "e2" else F(0) for lab in H.labels)
    I = ideal_from_generators(H, [gen])
    assert I.dim == 1
    wit = is_hopf_ideal(H, I)
    assert wit.ok and wit.describe() == ["g2 - e2"]
    Z = ideal_from_generators(H, [])
    assert Z.dim == 0 and is_hopf_ideal(H, Z).ok
    K = kZ(2)
    J = ideal_from_generators(K, [coordinate("g", K.labels)])
    assert J.dim == 2
    assert failing(is_hopf_ideal(K, J).report) == {"counit"}


def corollary_action(field=True):
    K = two_vertex_groupoid()
    A1 = sqrt2_field() if field else product_algebra(["a"])
    X = XDecompAlgebra.build(["1", "2"], {"1": A1, "2": product_algebra([])})
    g1 = m([[1, 0], [0, -1]]) if field else Matrix.identity(1)
    return action(K, X, {"g1": g1, "g2": Matrix.zeros(0, 0)})


def test_largest_ideal_corollary_scalar_domain():
    act = corollary_action(field=False)
    H = groupoid_algebra(act.groupoid)
    lin = linearize_action(act)
    ann = annihilator_of_action(lin)
    wit = largest_hopf_ideal_in(H, ann, exhaustive=True)
    assert wit.ok and wit.report.passed("exhaustive.matches_exhaustive_search")
    assert sorted(wit.describe()) == ["g1 - e1", "g2 - e2"]


def test_largest_ideal_trivial_cases():
    H = groupoid_algebra(two_vertex_groupoid())
    assert largest_hopf_ideal_in(H, Subspace.zero(4)).ideal.dim == 0
    full = largest_hopf_ideal_in(H, Subspace.full(4), exhaustive=True)
    assert full.ok and full.report.passed("exhaustive.matches_exhaustive_search")
    assert all(H.eps(v) == 0 for v in full.ideal.basis)
    # the augmentation-type ideal spanned by g_i - e_i
    assert full.ideal.dim == 2


def test_inner_faithful_examples():
    act = swap_action()
    r = inner_faithful(kG, linearize_action(act))
    assert r.faithful and r.to_dict()["hopf_ideal"] == []
    cor = corollary_action()
    H = groupoid_algebra(cor.groupoid)
    lin = linearize_action(cor)
    assert check_h_module_algebra(lin, cor.carrier.total).ok
    r = inner_faithful(H, lin, exhaustive=True)
    assert not r.faithful and r.witness.describe() == ["g2 - e2"]
    K = group_groupoid(trivial_group(), "*")
    X = XDecompAlgebra.build(["*"], {"*": product_algebra(["a"])})
    r = inner_faithful(groupoid_algebra(K), linearize_action(action(K, X, {})))
    assert r.faithful


def test_inner_faithful_when_second_group_trivial():
    K = two_vertex_groupoid(trivial_second=True)
    X = XDecompAlgebra.build(["1", "2"], {"1": sqrt2_field(), "2": product_algebra([])})
    act = action(K, X, {"g1": m([[1, 0], [0, -1]])})
    assert inner_faithful(groupoid_algebra(K), linearize_action(act)).faithful


# ------------------------------------------------------------ tensor products and morphisms

def test_tensor_and_morphism_examples():
    V, W = swap_action(), sign_swap_action()
    VW = tensor_action(V, W)
    assert check_groupoid_module(VW).ok and VW.carrier.dims == {"x": 6, "y": 6}
    f = m([[0, 0], [1, 0], [0, 1]])
    # f(a, b) = (0, a, b) intertwines the swap with (a, b, c) -> (-a, c, b)
    assert check_module_morphism({"x": f, "y": f}, V, W).ok
    g = m([[1, 0], [0, 1], [0, 0]])
    assert not check_module_morphism({"x": g, "y": g}, V, W).ok
    U = tensor_action(V, unit_action(G))
    assert U.nu == V.nu
    I = action(G, V.carrier, {"g": Matrix.identity(2), "g^-1": Matrix.identity(2)})
    assert all(M == Matrix.identity(4) for M in tensor_action(I, I).nu.values())


def test_identity_x_map():
    idems = {"x": coordinate("e_x", kG.labels), "y": coordinate("e_y", kG.labels)}
    assert check_x_map(Matrix.identity(4), kG, kG, idems, idems).ok


# ------------------------------------------------------------ invariants

def random_carrier(rng, K):
    kind = rng.choice(["product", "nilpotent"])
    n = rng.randint(1, 3)
    if kind == "product":
        comps = {x: product_algebra([f"{x}{i}" for i in range(n)]) for x in K.objects}
    else:
        comps = {x: nilpotent_algebra(n + 1, f"t{x}") for x in K.objects}
    return kind, n, XDecompAlgebra.build(K.objects, comps)


def random_automorphism(rng, kind, n):
    if kind == "product":
        perm = list(range(n))
        rng.shuffle(perm)
        return Matrix.from_columns([[F(int(perm[j] == i)) for i in range(n)] for j in range(n)])
    lam = F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 5]))
    return Matrix.from_columns([[lam ** k if i == k else F(0) for i in range(n + 1)] for k in range(n + 1)])


def random_invertible(rng, d):
    while True:
        M = Matrix([[F(rng.randint(-2, 2)) for _ in range(d)] for _ in range(d)])
        if M.det():
            return M


def random_action(rng, K):
    """nu_g = C_t C_s^-1 for frames C_x: always a module, sometimes a module algebra."""
    kind, n, X = random_carrier(rng, K)
    d = X.components[K.objects[0]].dim
    auto = rng.random() < 0.5
    C = {x: random_automorphism(rng, kind, n) if auto else random_invertible(rng, d) for x in K.objects}
    nu = {g: C[K.tgt[g]] @ C[K.src[g]].inverse() for g in K.morphisms}
    return GroupoidAction(K, X, nu)


@given(groupoids(max_objects=3, max_morphisms=8), st.integers(0, 10**6))
@settings(max_examples=200)
def test_multiplicative_implies_unital(K, seed):
    act = random_action(random.Random(seed), K)
    assert check_groupoid_module(act).ok
    rep = check_groupoid_module_algebra(act)
    if rep.passed("multiplicative"):
        assert rep.passed("unital")


@given(groupoids(max_objects=3, max_morphisms=8), st.integers(0, 10**6))
@settings(max_examples=40)
def test_linearize_preserves_and_reflects(K, seed):
    act = random_action(random.Random(seed), K)
    lin = linearize_action(act)
    assert check_h_module(lin).ok
    assert delinearize_action(lin, K, act.carrier).nu == act.nu
    grp = check_groupoid_module_algebra(act).ok
    assert check_h_module_algebra(lin, act.carrier.total).ok == grp
    if grp:
        Fn = action_to_functor(act)
        assert functor_to_action(Fn).nu == act.nu
        H = groupoid_algebra(K)
        D = decompose_from_idempotents(H, lin, act.carrier.total)
        assert sorted(D.local_identities.values()) == sorted(act.carrier.local_identities.values())


def small_hopf(rng):
    pick = rng.randrange(4)
    if pick == 0:
        return kZ(2)
    if pick == 1:
        return kZ(3)
    if pick == 2:
        return kG
    return groupoid_algebra(two_vertex_groupoid())


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_largest_ideal_invariants(seed):
    rng = random.Random(seed)
    H = small_hopf(rng)
    k = rng.randint(0, H.dim)
    W = Subspace.span([[F(rng.randint(-1, 1)) for _ in range(H.dim)] for _ in range(k)], H.dim)
    wit = largest_hopf_ideal_in(H, W, exhaustive=H.dim <= 4)
    assert wit.ok and wit.ideal.issubset(W)
    assert is_hopf_ideal(H, wit.ideal).ok


def test_brute_force_oracle_direct():
    H = groupoid_algebra(two_vertex_groupoid())
    I = largest_hopf_ideal_in(H, Subspace.full(4)).ideal
    same, p = agrees_with_brute_force(H, Subspace.full(4), I)
    assert same and p > 2
