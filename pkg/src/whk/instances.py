"""Builders for the reference instances shipped in the corpus."""

from __future__ import annotations

from fractions import Fraction

from .algebra import FiniteDimAlgebra, matrix_algebra, product_algebra
from .carriers import linear_substitution, truncated_polynomial_algebra, xi_dj
from .exact import Matrix, ONE, ZERO
from .groupoid import (
    FiniteGroup,
    FiniteGroupoid,
    GroupoidHom,
    cyclic_group,
    eq_gg_groupoid,
    group_groupoid,
    groupoid_algebra,
    linearize_hom,
    transitive_groupoid,
    trivial_group,
)
from .io import algebra_block, groupoid_block, matrix_json, vector_json, weakhopf_block
from .lie import LieAction, XLieAlgebroid, gl, gl_conjugation_matrix
from .modalg import GroupoidAction, XDecompAlgebra


def _m(rows) -> Matrix:
    return Matrix([[Fraction(x) for x in r] for r in rows])


SWAP = ((0, 1), (1, 0))
SHEAR = ((1, 1), (0, 1))


def poly_gl_groupoid() -> tuple[FiniteGroupoid, dict]:
    """Transitive groupoid on {x, y} with vertex group <swap>, plus the GL matrix of each morphism.

    Fibres are identified with k^2 by c_x = I and c_y = the shear, and
    (a, s -> t) acts on V by c_t a c_s^-1.
    """
    group = FiniteGroup(("1", "w"), ((0, 1), (1, 0)))
    G = transitive_groupoid(["x", "y"], group, name="GL_X(V)")
    c = {"x": Matrix.identity(2), "y": _m(SHEAR)}
    vertex = {"1": Matrix.identity(2), "w": _m(SWAP)}
    mats = {}
    for g in G.morphisms:
        s, t = G.src[g], G.tgt[g]
        base = g.split(":")[0] if ":" in g else "1"
        mats[g] = c[t] @ vertex[base] @ c[s].inverse()
    return G, mats


def poly_gl(degree: int = 3):
    """S(V_x) truncated at ``degree`` with gl_2 (+) gl_2 acting by x_i d_j and GL_X(V) by substitution.

    Returns (groupoid action, Lie action, Lie conjugation matrices).
    """
    G, mats = poly_gl_groupoid()
    comps, mons = {}, {}
    for x in G.objects:
        comps[x], mons[x] = truncated_polynomial_algebra([f"{x}1", f"{x}2"], degree)
    X = XDecompAlgebra.build(G.objects, comps)
    nu = {g: linear_substitution(mons[G.tgt[g]], M) for g, M in mats.items()}
    grp = GroupoidAction(G, X, nu, "GL_X(V) on S(V)")
    L = {x: gl(2, prefix=f"E{x}_") for x in G.objects}
    tau = {x: tuple(xi_dj(mons[x], i, j) for i in range(2) for j in range(2)) for x in G.objects}
    lie = LieAction(XLieAlgebroid(G.objects, L), X, tau)
    conj = {g: gl_conjugation_matrix(M) for g, M in mats.items()}
    return grp, lie, conj


# ---------------------------------------------------------------- small carriers

def sqrt2_field() -> FiniteDimAlgebra:
    """Q(sqrt 2) on the basis 1, r with r^2 = 2."""
    return FiniteDimAlgebra(("1", "r"), {(0, 0): {0: ONE}, (0, 1): {1: ONE}, (1, 0): {1: ONE}, (1, 1): {0: Fraction(2)}}, (ONE, ZERO))


def two_vertex_groupoid(trivial_second: bool = False) -> FiniteGroupoid:
    """Z/2 at vertex 1 and Z/2 (or the trivial group) at vertex 2, with no arrows between them."""
    mors = ["e1", "e2", "g1"] + ([] if trivial_second else ["g2"])
    src = {m: m[-1] for m in mors}
    comp = {("e1", "e1"): "e1", ("e2", "e2"): "e2", ("g1", "e1"): "g1", ("e1", "g1"): "g1", ("g1", "g1"): "e1"}
    inv = {"e1": "e1", "e2": "e2", "g1": "g1"}
    if not trivial_second:
        comp.update({("g2", "e2"): "g2", ("e2", "g2"): "g2", ("g2", "g2"): "e2"})
        inv["g2"] = "g2"
    name = "Z2+1" if trivial_second else "Z2+Z2"
    return FiniteGroupoid(("1", "2"), tuple(mors), src, dict(src), comp, inv, {"1": "e1", "2": "e2"}, name)


def cyclic_hopf_groupoid(obj: str) -> FiniteGroupoid:
    """One-object Z/2 with elements 1<obj>, g<obj>."""
    return group_groupoid(FiniteGroup((f"1{obj}", f"g{obj}"), ((0, 1), (1, 0))), obj=obj, name=f"Z2@{obj}", ident="1{}")


# ---------------------------------------------------------------- corpus files

def _file(*blocks) -> dict:
    return {"schema": 1, "blocks": list(blocks)}


def _identity_json(n: int) -> dict:
    return matrix_json(Matrix.identity(n))


def _m_json(rows) -> dict:
    return matrix_json(_m(rows))


def eqgg_file() -> dict:
    G = eq_gg_groupoid()
    swap = GroupoidHom(
        G, G, {"x": "y", "y": "x"}, {"e_x": "e_y", "e_y": "e_x", "g": "g^-1", "g^-1": "g"}
    )
    return _file(
        groupoid_block(G, "eqGG"),
        {"kind": "weakhopf", "name": "kG", "groupoid_algebra": "eqGG"},
        {
            "kind": "map", "name": "swap_xy", "type": "functor", "source": "eqGG", "target": "eqGG",
            "objects": swap.obj_map, "morphisms": swap.mor_map, "x_preserving": False,
        },
        {"kind": "map", "name": "k_swap_xy", "type": "linear", "source": "kG", "target": "kG", "matrix": matrix_json(linearize_hom(swap))},
    )


def fold_file() -> dict:
    G = eq_gg_groupoid()
    Z2 = group_groupoid(cyclic_group(2), obj="*", name="Z2")
    fold = GroupoidHom(G, Z2, {"x": "*", "y": "*"}, {"e_x": "e_*", "e_y": "e_*", "g": "g", "g^-1": "g"})
    return _file(
        groupoid_block(G, "eqGG"),
        groupoid_block(Z2, "Z2"),
        {"kind": "weakhopf", "name": "kG", "groupoid_algebra": "eqGG"},
        {"kind": "weakhopf", "name": "kZ2", "groupoid_algebra": "Z2"},
        {
            "kind": "map", "name": "fold", "type": "functor", "source": "eqGG", "target": "Z2",
            "objects": fold.obj_map, "morphisms": fold.mor_map, "x_preserving": False,
        },
        {"kind": "map", "name": "k_fold", "type": "linear", "source": "kG", "target": "kZ2", "matrix": matrix_json(linearize_hom(fold))},
    )


def swap_module_algebra_file() -> dict:
    G = eq_gg_groupoid()
    swap = ((0, 1), (1, 0))
    return _file(
        groupoid_block(G, "eqGG"),
        {"kind": "weakhopf", "name": "kG", "groupoid_algebra": "eqGG"},
        algebra_block(product_algebra(["x1", "x2"]), "Ax"),
        algebra_block(product_algebra(["y1", "y2"]), "Ay"),
        {"kind": "xdecomp", "name": "A", "objects": ["x", "y"], "components": {"x": "Ax", "y": "Ay"}},
        {
            "kind": "action", "name": "swap", "type": "groupoid", "groupoid": "eqGG", "carrier": "A", "hopf": "kG",
            "nu": {"g": _m_json(swap), "g^-1": _m_json(swap)},
        },
    )


def nonunital_module_file() -> dict:
    G = eq_gg_groupoid()
    m = ((-1, 0, 0), (0, 0, 1), (0, 1, 0))
    return _file(
        groupoid_block(G, "eqGG"),
        {"kind": "weakhopf", "name": "kG", "groupoid_algebra": "eqGG"},
        algebra_block(product_algebra(["x1", "x2", "x3"]), "Wx"),
        algebra_block(product_algebra(["y1", "y2", "y3"]), "Wy"),
        {"kind": "xdecomp", "name": "W", "objects": ["x", "y"], "components": {"x": "Wx", "y": "Wy"}},
        {
            "kind": "action", "name": "sign_swap", "type": "groupoid", "groupoid": "eqGG", "carrier": "W", "hopf": "kG",
            "nu": {"g": _m_json(m), "g^-1": _m_json(m)},
        },
    )


def local_units_file() -> dict:
    G = eq_gg_groupoid()
    kG = groupoid_algebra(G)
    gblock = weakhopf_block(kG, "kG")
    gblock["idempotents"] = {"x": {"e_x": 1}, "y": {"e_y": 1}}
    gblock["local_units"] = [
        {"label": lab, "element": {lab: 1}, "source": G.src[lab], "target": G.tgt[lab]} for lab in ("e_x", "e_y", "g", "g^-1")
    ]
    dec = algebra_block(product_algebra(["x1", "x2", "y1", "y2"]), "k2+k2")
    dec["idempotents"] = {"x": [1, 1, 0, 0], "y": [0, 0, 1, 1]}
    dec["local_units"] = [
        {"label": "1_x", "element": [1, 1, 0, 0], "source": "x", "target": "x"},
        {"label": "1_y", "element": [0, 0, 1, 1], "source": "y", "target": "y"},
        {"label": "u", "element": [2, 3, 0, 0], "source": "x", "target": "x"},
        {"label": "u_inv", "element": ["1/2", "1/3", 0, 0], "source": "x", "target": "x"},
        {"label": "zero", "element": [0, 0, 0, 0], "source": "x", "target": "y", "expect": False},
        {"label": "half", "element": [1, 0, 0, 0], "source": "x", "target": "x", "expect": False},
    ]
    end = algebra_block(matrix_algebra(2), "End(k+k)")
    end["idempotents"] = {"x": {"E11": 1}, "y": {"E22": 1}}
    end["local_units"] = [
        {"label": "id_x", "element": {"E11": 1}, "source": "x", "target": "x"},
        {"label": "id_y", "element": {"E22": 1}, "source": "y", "target": "y"},
        {"label": "f", "element": {"E21": 2}, "source": "x", "target": "y"},
        {"label": "f_inv", "element": {"E12": "1/2"}, "source": "y", "target": "x"},
        {"label": "wrong_corner", "element": {"E12": 1}, "source": "x", "target": "y", "expect": False},
    ]
    return _file(groupoid_block(G, "eqGG"), gblock, dec, end)


def corollary_file(trivialized: bool = False) -> dict:
    G = two_vertex_groupoid(trivialized)
    nu = {"g1": _m_json(((1, 0), (0, -1)))}
    if not trivialized:
        nu["g2"] = matrix_json(Matrix.zeros(0, 0))
    hblock = {"kind": "weakhopf", "name": "H", "groupoid_algebra": G.name}
    if not trivialized:
        hblock["ideals"] = [{"name": "kernel", "generators": [{"g2": 1, "e2": -1}]}]
    return _file(
        groupoid_block(G, G.name),
        hblock,
        algebra_block(sqrt2_field(), "Q(r2)"),
        {"kind": "xdecomp", "name": "A", "objects": ["1", "2"], "components": {"1": "Q(r2)", "2": None}},
        {"kind": "action", "name": "conj", "type": "groupoid", "groupoid": G.name, "carrier": "A", "hopf": "H", "nu": nu},
    )


def block_swap_smash_file() -> dict:
    G = eq_gg_groupoid()
    Hx = groupoid_algebra(cyclic_hopf_groupoid("x"))
    Hy = groupoid_algebra(cyclic_hopf_groupoid("y"))
    return _file(
        groupoid_block(G, "eqGG"),
        weakhopf_block(Hx, "Hx"),
        weakhopf_block(Hy, "Hy"),
        {"kind": "xdecomp", "name": "H", "objects": ["x", "y"], "components": {"x": "Hx", "y": "Hy"}},
        {
            "kind": "action", "name": "block_swap", "type": "groupoid", "groupoid": "eqGG", "carrier": "H",
            "nu": {"g": _identity_json(2), "g^-1": _identity_json(2)},
        },
    )


def poly_gl_file(degree: int = 3) -> dict:
    grp, lie, conj = poly_gl(degree)
    G = grp.groupoid
    blocks = [groupoid_block(G, "GL_X(V)")]
    for x in G.objects:
        blocks.append({"kind": "algebra", "name": f"S(V_{x})", "polynomial": {"variables": [f"{x}1", f"{x}2"], "degree": degree}})
    blocks.append({"kind": "xdecomp", "name": "S(V)", "objects": list(G.objects), "components": {x: f"S(V_{x})" for x in G.objects}})
    blocks.append({
        "kind": "action", "name": "substitution", "type": "groupoid", "groupoid": "GL_X(V)", "carrier": "S(V)",
        "nu": {g: matrix_json(M) for g, M in grp.nu.items()},
    })
    for x in G.objects:
        blocks.append({"kind": "lie", "name": f"gl2_{x}", "gl": 2, "prefix": f"E{x}_"})
    blocks.append({"kind": "algebroid", "name": "gl_X", "components": {x: f"gl2_{x}" for x in G.objects}})
    blocks.append({
        "kind": "action", "name": "x_i d_j", "type": "lie", "algebroid": "gl_X", "carrier": "S(V)",
        "groupoid_action": "substitution",
        "tau": {x: [matrix_json(M) for M in lie.tau[x]] for x in G.objects},
        "lie_conjugation": {g: matrix_json(M) for g, M in conj.items()},
    })
    return _file(*blocks)


def trivial_file() -> dict:
    G = group_groupoid(trivial_group(), obj="*", name="1")
    return _file(groupoid_block(G, "1"), {"kind": "weakhopf", "name": "k", "groupoid_algebra": "1"})


def derivations_file() -> dict:
    blocks = []
    for n in range(2, 6):
        blocks.append({"kind": "algebra", "name": f"k[x]/(x^{n})", "polynomial": {"variables": ["x"], "degree": n - 1}})
    blocks.append(algebra_block(product_algebra(["e1", "e2"]), "kxk"))
    blocks.append({"kind": "algebra", "name": "k[x,y]/(deg>2)", "polynomial": {"variables": ["x", "y"], "degree": 2}})
    return _file(*blocks)


CORPUS = {
    "eqGG.wha.json": eqgg_file,
    "fold_to_group.json": fold_file,
    "swap_module_algebra.json": swap_module_algebra_file,
    "nonunital_module.json": nonunital_module_file,
    "local_units.json": local_units_file,
    "corollary47.json": corollary_file,
    "corollary47_trivialized.json": lambda: corollary_file(True),
    "block_swap_smash.json": block_swap_smash_file,
    "poly_gl.json": poly_gl_file,
    "trivial.json": trivial_file,
    "derivations.json": derivations_file,
}
