import random
from fractions import Fraction

from hypothesis import strategies as st

from whk.algebra import FiniteDimAlgebra, FiniteDimCoalgebra, WeakHopfPresentation
from whk.exact import Matrix
from whk.groupoid import cyclic_group, group_groupoid, groupoid_algebra, random_groupoid

F = Fraction


@st.composite
def groupoids(draw, max_objects=4, max_morphisms=12):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_groupoid(random.Random(seed), max_objects, max_morphisms)


def kZ(n, obj="*"):
    return groupoid_algebra(group_groupoid(cyclic_group(n), obj=obj, name=f"Z{n}"))


def one_dim(S=True):
    A = FiniteDimAlgebra(("1",), {(0, 0): {0: F(1)}}, (F(1),))
    C = FiniteDimCoalgebra(("1",), (((0, 0, 1),),), (1,))
    return WeakHopfPresentation(A, C, Matrix.identity(1) if S else None, "k")


def with_antipode(H, S):
    return WeakHopfPresentation(H.algebra, H.coalgebra, S, H.name)


def with_counit(H, counit):
    C = FiniteDimCoalgebra(H.labels, H.coalgebra.comult, counit)
    return WeakHopfPresentation(H.algebra, C, H.antipode, H.name)


def with_mult(H, mult, unit=None):
    A = FiniteDimAlgebra(H.labels, mult, H.algebra.unit if unit is None else unit)
    return WeakHopfPresentation(A, H.coalgebra, H.antipode, H.name)


def with_comult(H, comult):
    C = FiniteDimCoalgebra(H.labels, comult, H.coalgebra.counit)
    return WeakHopfPresentation(H.algebra, C, H.antipode, H.name)


def failing(rep):
    return {name for name, fs in rep.checks.items() if fs}


def dual_hopf(H, name=""):
    """H* with the transposed structure maps, on the dual basis f_i."""
    from whk.algebra import dual_algebra

    n = H.dim
    A = dual_algebra(H)
    comult = [[] for _ in range(n)]
    for (i, j), row in H.algebra.mult.items():
        for k, c in row.items():
            comult[k].append((i, j, c))
    C = FiniteDimCoalgebra(A.labels, tuple(tuple(t) for t in comult), H.algebra.unit)
    S = H.antipode.T if H.antipode is not None else None
    return WeakHopfPresentation(A, C, S, name or f"{H.name}*")


def function_algebra(n):
    """k^{Z/n}: pointwise product, Delta(d_c) = sum_{a+b=c} d_a (x) d_b."""
    return dual_hopf(kZ(n), f"k^Z{n}")
