"""Lie algebras, X-Lie algebroids, derivations and their actions on algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import FiniteDimAlgebra, _add_into, residual, sparse_diff
from .exact import Matrix, Subspace, ONE, ZERO, kernel, vadd, vsub
from .modalg import GroupoidAction, ShapeError, XDecompAlgebra
from .report import Report


@dataclass(frozen=True, eq=False)
class FiniteDimLieAlgebra:
    labels: tuple
    bracket: dict  # (i, j) -> {k: c}

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        n = len(self.labels)
        clean = {}
        for (i, j), row in self.bracket.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError("bracket index out of range")
            row = {k: c for k, c in row.items() if c}
            if row:
                clean[(i, j)] = row
        object.__setattr__(self, "bracket", clean)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def br(self, u: Sequence, v: Sequence) -> tuple:
        out: dict = {}
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        for k, c in self.bracket.get((i, j), {}).items():
                            _add_into(out, k, a * b * c)
        return tuple(out.get(k, ZERO) for k in range(self.dim))

    def basis_vector(self, i: int) -> tuple:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))


def check_lie(L: FiniteDimLieAlgebra) -> Report:
    rep = Report("lie")
    rep.ran("antisymmetry")
    rep.ran("jacobi")
    n = L.dim
    for i in range(n):
        for j in range(i, n):
            a = L.bracket.get((i, j), {})
            b = {k: -c for k, c in L.bracket.get((j, i), {}).items()}
            d = sparse_diff(a, b)
            if d:
                rep.fail("antisymmetry", (L.labels[i], L.labels[j]), residual(L.labels, d))
    e = [L.basis_vector(i) for i in range(n)]
    for i, j, k in itertools.combinations_with_replacement(range(n), 3):
        x, y, z = e[i], e[j], e[k]
        s = vadd(vadd(L.br(x, L.br(y, z)), L.br(y, L.br(z, x))), L.br(z, L.br(x, y)))
        if any(s):
            rep.fail("jacobi", (L.labels[i], L.labels[j], L.labels[k]), s)
    return rep


def gl(n: int, prefix: str = "E") -> FiniteDimLieAlgebra:
    """gl_n with [E_ij, E_kl] = d_jk E_il - d_li E_kj; E_ij has index i*n + j."""
    labels = tuple(f"{prefix}{i + 1}{j + 1}" for i in range(n) for j in range(n))
    br = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        row: dict = {}
        if j == k:
            _add_into(row, i * n + l, ONE)
        if l == i:
            _add_into(row, k * n + j, -ONE)
        if row:
            br[(i * n + j, k * n + l)] = row
    return FiniteDimLieAlgebra(labels, br)


def abelian(n: int, prefix: str = "p") -> FiniteDimLieAlgebra:
    return FiniteDimLieAlgebra(tuple(f"{prefix}{i}" for i in range(n)), {})


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def lie_from_matrices(mats: Sequence[Matrix], labels: Sequence[str] | None = None) -> FiniteDimLieAlgebra:
    """Structure constants of the span of ``mats`` (which must be linearly independent and closed)."""
    k = len(mats)
    labels = tuple(labels) if labels is not None else tuple(f"D{i}" for i in range(k))
    if k == 0:
        return FiniteDimLieAlgebra((), {})
    flat = Matrix.from_columns([m.flatten() for m in mats])
    if flat.rank() != k:
        raise ValueError("matrices are linearly dependent")
    from .exact import solve

    br = {}
    for i in range(k):
        for j in range(k):
            c = solve(flat, commutator(mats[i], mats[j]).flatten())
            if c is None:
                raise ValueError("span of the matrices is not closed under the commutator")
            row = {t: x for t, x in enumerate(c) if x}
            if row:
                br[(i, j)] = row
    return FiniteDimLieAlgebra(labels, br)


# ---------------------------------------------------------------- derivations

def leibniz_system(A: FiniteDimAlgebra) -> Matrix:
    """Rows are the linear conditions D(b_i b_j) = b_i D(b_j) + D(b_i) b_j.

    Unknowns are the entries of D in row-major order: D[r, c] at r * n + c,
    where column c of D is D(b_c).
    """
    n = A.dim
    rows = set()
    for i in range(n):
        for j in range(n):
            eqs: dict = {}
            for k, m in A.product(i, j).items():
                for t in range(n):
                    _add_into(eqs, (t, t * n + k), m)
            for r in range(n):
                for t, c in A.product(i, r).items():
                    _add_into(eqs, (t, r * n + j), -c)
                for t, c in A.product(r, j).items():
                    _add_into(eqs, (t, r * n + i), -c)
            per_t: dict = {}
            for (t, u), c in eqs.items():
                per_t.setdefault(t, {})[u] = c
            for t, coeffs in per_t.items():
                rows.add(tuple(sorted(coeffs.items())))
    dense = []
    for r in sorted(rows):
        v = [ZERO] * (n * n)
        for u, c in r:
            v[u] = c
        dense.append(v)
    if not dense:
        return Matrix.zeros(0, n * n)
    return Matrix(dense, n * n)


def is_derivation(A: FiniteDimAlgebra, D: Matrix) -> bool:
    n = A.dim
    for i in range(n):
        Di = D.column(i)
        for j in range(n):
            lhs = D.apply(A.mul(A.basis_vector(i), A.basis_vector(j)))
            rhs = vadd(A.mul(A.basis_vector(i), D.column(j)), A.mul(Di, A.basis_vector(j)))
            if lhs != rhs:
                return False
    return True


_DER_CACHE: dict = {}


def derivation_space(A: FiniteDimAlgebra) -> Subspace:
    """Der(A) as a subspace of gl(A) in row-major coordinates.

    Bracket closure is verified on the computed basis.
    """
    key = id(A)
    hit = _DER_CACHE.get(key)
    if hit is not None and hit[0] is A:
        return hit[1]
    n = A.dim
    M = leibniz_system(A)
    V = kernel(M) if M.rows else Subspace.full(n * n)
    mats = [Matrix.unflatten(v, n, n) for v in V.basis]
    for a in mats:
        for b in mats:
            if not V.contains(commutator(a, b).flatten()):
                raise ArithmeticError("derivations are not closed under the bracket")
    _DER_CACHE[key] = (A, V)
    return V


def derivation_matrices(A: FiniteDimAlgebra) -> list:
    V = derivation_space(A)
    return [Matrix.unflatten(v, A.dim, A.dim) for v in V.basis]


@dataclass(frozen=True, eq=False)
class XLieAlgebroid:
    objects: tuple
    components: dict  # x -> FiniteDimLieAlgebra

    def bracket(self, x: str, y: str, u: Sequence, v: Sequence) -> tuple:
        if x != y:
            raise ShapeError("bracket is only defined within one component")
        return self.components[x].br(u, v)


def der_x(X: XDecompAlgebra) -> tuple[XLieAlgebroid, dict]:
    """Der_X(A) componentwise; also returns the derivation matrices per object."""
    comps, mats = {}, {}
    for x in X.objects:
        ms = derivation_matrices(X.components[x])
        comps[x] = lie_from_matrices(ms, [f"D{i}@{x}" for i in range(len(ms))])
        mats[x] = ms
    return XLieAlgebroid(X.objects, comps), mats


# ---------------------------------------------------------------- actions

def check_lie_module_algebra(L: FiniteDimLieAlgebra, A: FiniteDimAlgebra, tau: Sequence[Matrix], name: str = "lie_module_algebra") -> Report:
    """p.(ab) = a(p.b) + (p.a)b, p.1 = 0, and tau a Lie map."""
    rep = Report(name)
    for c in ("leibniz", "unit_killed", "lie_hom"):
        rep.ran(c)
    if len(tau) != L.dim:
        raise ShapeError(f"{len(tau)} matrices for a {L.dim}-dimensional Lie algebra")
    n = A.dim
    for T in tau:
        if T.shape != (n, n):
            raise ShapeError(f"action matrix of shape {T.shape} on a {n}-dimensional component")
    basis = [A.basis_vector(i) for i in range(n)]
    for p, T in enumerate(tau):
        cols = [T.column(i) for i in range(n)]
        for a in range(n):
            for b in range(n):
                lhs = T.apply(A.mul(basis[a], basis[b]))
                rhs = vadd(A.mul(basis[a], cols[b]), A.mul(cols[a], basis[b]))
                if lhs != rhs:
                    rep.fail("leibniz", (L.labels[p], A.labels[a], A.labels[b]), vsub(lhs, rhs))
        img = T.apply(A.unit)
        if any(img):
            rep.fail("unit_killed", (L.labels[p],), img)
    for p in range(L.dim):
        for r in range(L.dim):
            lhs = Matrix.zeros(n, n)
            for k, c in L.bracket.get((p, r), {}).items():
                lhs = lhs + tau[k].scale(c)
            d = lhs - commutator(tau[p], tau[r])
            if not d.is_zero():
                rep.fail("lie_hom", (L.labels[p], L.labels[r]), d.flatten())
    return rep


@dataclass(frozen=True, eq=False)
class LieAction:
    algebroid: XLieAlgebroid
    carrier: XDecompAlgebra
    tau: dict  # x -> tuple of Matrix, one per basis element of the component

    def __post_init__(self):
        for x in self.algebroid.objects:
            L = self.algebroid.components[x]
            d = self.carrier.components[x].dim
            mats = self.tau[x]
            if len(mats) != L.dim:
                raise ShapeError(f"component {x!r} needs {L.dim} matrices, got {len(mats)}")
            for M in mats:
                if M.shape != (d, d):
                    raise ShapeError(
                        f"matrix of shape {M.shape} in component {x!r}: the bracket is only defined "
                        f"within a component, so tau must act on A_{x} ({d}x{d})"
                    )


def check_algebroid_action(act: LieAction) -> Report:
    rep = Report("algebroid_action")
    for x in act.algebroid.objects:
        sub = check_lie_module_algebra(act.algebroid.components[x], act.carrier.components[x], act.tau[x])
        rep.merge(sub, f"{x}.")
    return rep


@dataclass(eq=False)
class ConjugationResult:
    table: dict  # (g, p index) -> Matrix on A_{t(g)}
    report: Report


def conjugate_action(grp: GroupoidAction, lie: LieAction, lie_conjugation: dict | None = None) -> ConjugationResult:
    """nu_g tau(p) nu_{g^-1} for p in g_{s(g)}, certified to be a derivation of A_{t(g)}.

    ``lie_conjugation[g]``, when given, is the matrix of the induced map
    g_{s(g)} -> g_{t(g)} on Lie algebra coordinates; then
    tau(g.p) = nu_g tau(p) nu_{g^-1} is checked as a matrix identity.
    """
    G = grp.groupoid
    X = lie.carrier
    rep = Report("conjugation")
    rep.ran("in_derivations")
    if lie_conjugation is not None:
        rep.ran("pi_linearity")
    table = {}
    for g in G.morphisms:
        s, t = G.src[g], G.tgt[g]
        Der_t = derivation_space(X.components[t])
        Ng, Ngi = grp.nu[g], grp.nu[G.inv[g]]
        Lt = lie.algebroid.components[t]
        for p, T in enumerate(lie.tau[s]):
            C = Ng @ T @ Ngi
            table[(g, p)] = C
            if not Der_t.contains(C.flatten()):
                rep.fail("in_derivations", (g, lie.algebroid.components[s].labels[p]))
            if lie_conjugation is not None:
                coords = lie_conjugation[g].column(p)
                img = Matrix.zeros(C.rows, C.cols)
                for k, c in enumerate(coords):
                    if c:
                        img = img + lie.tau[t][k].scale(c)
                d = img - C
                if not d.is_zero():
                    rep.fail("pi_linearity", (g, lie.algebroid.components[s].labels[p]), d.flatten())
    return ConjugationResult(table, rep)


def gl_conjugation_matrix(M: Matrix) -> Matrix:
    """Matrix of p -> M p M^-1 on gl_n in the E_ij basis (row-major)."""
    n = M.rows
    Mi = M.inverse()
    cols = []
    for i in range(n):
        for j in range(n):
            E = Matrix([[ONE if (r, c) == (i, j) else ZERO for c in range(n)] for r in range(n)])
            cols.append((M @ E @ Mi).flatten())
    return Matrix.from_columns(cols)


def bounded_envelope_consistency(lie: LieAction, grp: GroupoidAction, d: int = 3) -> Report:
    """Module-algebra identities for every word p_1...p_k # g with k <= d.

    Generators p are primitive and g grouplike, so the coproduct of a word
    is the sum over subsets S of (p_S # g) (x) (p_{S^c} # g); the identity
    rho(w)(ab) = sum_S rho(p_S # g)(a) rho(p_{S^c} # g)(b) is checked on all
    basis pairs of A_{s(g)}, together with rho(w)(1) = 1_{t(g)} for k = 0
    and 0 for k >= 1.
    """
    G = grp.groupoid
    X = lie.carrier
    rep = Report("envelope_consistency")
    rep.info["degree"] = d
    for k in range(d + 1):
        rep.ran(f"multiplicative_k{k}")
        rep.ran(f"unit_k{k}")
    for g in G.basis_order():
        s, t = G.src[g], G.tgt[g]
        As, At = X.components[s], X.components[t]
        L = lie.algebroid.components[t]
        taus = lie.tau[t]
        Ng = grp.nu[g]
        n = As.dim
        basis = [As.basis_vector(i) for i in range(n)]

        @lru_cache(maxsize=None)
        def rho(word: tuple) -> Matrix:
            M = Ng
            for p in reversed(word):
                M = taus[p] @ M
            return M

        @lru_cache(maxsize=None)
        def images(word: tuple) -> tuple:
            R = rho(word)
            return tuple(R.column(i) for i in range(n))

        for k in range(d + 1):
            for word in itertools.product(range(L.dim), repeat=k):
                wname = "".join(L.labels[p] + " " for p in word) + f"# {g}"
                R = rho(word)
                splits = []
                for mask in range(1 << k):
                    left = tuple(word[i] for i in range(k) if mask >> i & 1)
                    right = tuple(word[i] for i in range(k) if not mask >> i & 1)
                    splits.append((images(left), images(right)))
                for a in range(n):
                    for b in range(n):
                        lhs = R.apply(As.mul(basis[a], basis[b]))
                        rhs = [ZERO] * At.dim
                        for la, rb in splits:
                            prod = At.mul(la[a], rb[b])
                            for i, c in enumerate(prod):
                                if c:
                                    rhs[i] += c
                        if lhs != tuple(rhs):
                            rep.fail(f"multiplicative_k{k}", (wname, As.labels[a], As.labels[b]), vsub(lhs, rhs))
                img = R.apply(As.unit)
                want = At.unit if k == 0 else tuple(ZERO for _ in range(At.dim))
                if img != want:
                    rep.fail(f"unit_k{k}", (wname,), vsub(img, want))
    return rep
