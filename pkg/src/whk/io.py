"""Definition files: named JSON blocks describing groupoids, algebras, actions and maps.

A file is ``{"schema": 1, "blocks": [...]}``.  Every block has a ``kind``
and a unique ``name`` and may only reference blocks defined before it, so
the reference graph is acyclic by construction.  Scalars are exact: an
integer, a ``"num/den"`` string or a ``[num, den]`` pair; structure
constants are ``[i, j, k, num, den]`` quintuples (indices may be labels).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .algebra import (
    FiniteDimAlgebra,
    FiniteDimCoalgebra,
    WeakHopfPresentation,
    direct_sum,
)
from .carriers import truncated_polynomial_algebra
from .exact import Matrix, ZERO
from .groupoid import FiniteGroupoid, GroupoidHom, groupoid_algebra
from .lie import FiniteDimLieAlgebra, LieAction, XLieAlgebroid, gl
from .modalg import GroupoidAction, HModuleAction, XDecompAlgebra, linearize_action

KINDS = ("groupoid", "algebra", "weakhopf", "xdecomp", "lie", "algebroid", "action", "map")


class DefinitionError(ValueError):
    """Malformed definition file; the message says where."""


class _Float(str):
    pass


# ---------------------------------------------------------------- scalars


def scalar(x: Any, where: str = "") -> Fraction:
    if isinstance(x, bool):
        raise DefinitionError(f"non-rational scalar {x!r}{where}")
    if isinstance(x, _Float):
        raise DefinitionError(f"non-rational scalar {x}{where}: write it as an exact fraction \"num/den\"")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if any(ch in x for ch in ".eE"):
            raise DefinitionError(f"non-rational scalar {x!r}{where}: decimals are not exact")
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise DefinitionError(f"non-rational scalar {x!r}{where}") from None
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        if x[1] == 0:
            raise DefinitionError(f"zero denominator in {x!r}{where}")
        return Fraction(x[0], x[1])
    raise DefinitionError(f"non-rational scalar {x!r}{where}")


def scalar_json(c: Fraction) -> int | str:
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _quint(c: Fraction) -> list:
    c = Fraction(c)
    return [c.numerator, c.denominator]


# ---------------------------------------------------------------- block model


@dataclass(eq=False)
class Block:
    kind: str
    name: str
    spec: dict
    obj: Any = None
    extra: dict = field(default_factory=dict)


@dataclass(eq=False)
class DefinitionFile:
    blocks: list
    source: str = ""

    def __post_init__(self):
        self.by_name = {b.name: b for b in self.blocks}

    def get(self, name: str) -> Block:
        if name not in self.by_name:
            raise DefinitionError(f"no block named {name!r}")
        return self.by_name[name]

    def of_kind(self, kind: str) -> list:
        return [b for b in self.blocks if b.kind == kind]

    def names(self) -> list:
        return [b.name for b in self.blocks]


# ---------------------------------------------------------------- parsing


def loads(text: str, source: str = "<string>") -> DefinitionFile:
    if not text.strip():
        raise DefinitionError(f"{source}: no blocks")
    try:
        data = json.loads(text, parse_float=_Float, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise DefinitionError(f"{source}:{e.lineno}:{e.colno}: syntax error: {e.msg}") from None
    return from_data(data, source)


def _reject_constant(name):
    raise DefinitionError(f"non-rational scalar {name}")


def load(path: str | Path) -> DefinitionFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise DefinitionError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, str(path))


def from_data(data: Any, source: str = "<data>") -> DefinitionFile:
    if isinstance(data, dict) and "blocks" in data:
        schema = data.get("schema", 1)
        if schema != 1:
            raise DefinitionError(f"{source}: unsupported schema {schema!r}")
        raw = data["blocks"]
    else:
        raise DefinitionError(f"{source}: no blocks")
    if not isinstance(raw, list) or not raw:
        raise DefinitionError(f"{source}: no blocks")
    defs = DefinitionFile([], source)
    for pos, spec in enumerate(raw):
        if not isinstance(spec, dict):
            raise DefinitionError(f"{source}: block #{pos} is not an object")
        kind, name = spec.get("kind"), spec.get("name")
        if kind not in KINDS:
            raise DefinitionError(f"{source}: block #{pos} has unknown kind {kind!r}")
        if not isinstance(name, str) or not name:
            raise DefinitionError(f"{source}: block #{pos} has no name")
        if name in defs.by_name:
            raise DefinitionError(f"{source}: duplicate block name {name!r}")
        block = Block(kind, name, spec)
        try:
            _BUILDERS[kind](defs, block)
        except DefinitionError as e:
            raise DefinitionError(f"{source}: block {name!r}: {e}") from None
        except (ValueError, KeyError, IndexError, TypeError, ArithmeticError) as e:
            msg = e.args[0] if e.args else type(e).__name__
            raise DefinitionError(f"{source}: block {name!r}: {type(e).__name__}: {msg}") from None
        defs.blocks.append(block)
        defs.by_name[name] = block
    return defs


def _ref(defs: DefinitionFile, name: Any, kinds: tuple) -> Block:
    if not isinstance(name, str):
        raise DefinitionError(f"reference must be a block name, got {name!r}")
    if name not in defs.by_name:
        raise DefinitionError(f"dangling reference to undefined block {name!r}")
    b = defs.by_name[name]
    if b.kind not in kinds:
        raise DefinitionError(f"block {name!r} is a {b.kind}, expected {' or '.join(kinds)}")
    return b


def _req(spec: dict, key: str) -> Any:
    if key not in spec:
        raise DefinitionError(f"missing field {key!r}")
    return spec[key]


def _index(x: Any, labels: tuple, what: str) -> int:
    if isinstance(x, bool):
        raise DefinitionError(f"bad {what} index {x!r}")
    if isinstance(x, int):
        if not 0 <= x < len(labels):
            raise DefinitionError(f"{what} index {x} out of range")
        return x
    if isinstance(x, str) and x in labels:
        return labels.index(x)
    raise DefinitionError(f"unknown {what} {x!r}")


def _entry_value(rest: list, where: str) -> Fraction:
    if len(rest) == 2:
        return scalar(rest, where)
    if len(rest) == 1:
        return scalar(rest[0], where)
    raise DefinitionError(f"malformed entry{where}")


def vector(x: Any, labels: tuple, where: str = "") -> tuple:
    n = len(labels)
    if isinstance(x, dict):
        v = [ZERO] * n
        for k, c in x.items():
            v[_index(k, labels, "basis label")] += scalar(c, where)
        return tuple(v)
    if isinstance(x, list):
        if len(x) != n:
            raise DefinitionError(f"vector of length {len(x)}, expected {n}{where}")
        return tuple(scalar(c, where) for c in x)
    raise DefinitionError(f"malformed vector{where}")


def matrix(x: Any, rows: int, cols: int, where: str = "") -> Matrix:
    if isinstance(x, dict):
        shape = _req(x, "shape")
        if list(shape) != [rows, cols]:
            raise DefinitionError(f"matrix shape {shape}, expected {[rows, cols]}{where}")
        out = [[ZERO] * cols for _ in range(rows)]
        for e in _req(x, "entries"):
            if not isinstance(e, list) or len(e) not in (3, 4):
                raise DefinitionError(f"malformed matrix entry {e!r}{where}")
            i, j = e[0], e[1]
            if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < rows and 0 <= j < cols):
                raise DefinitionError(f"matrix entry {e!r} out of range{where}")
            out[i][j] += _entry_value(e[2:], where)
        return Matrix(out, cols) if rows else Matrix.zeros(0, cols)
    if isinstance(x, list):
        if len(x) != rows or any(not isinstance(r, list) or len(r) != cols for r in x):
            raise DefinitionError(f"matrix is not {rows}x{cols}{where}")
        return Matrix([[scalar(c, where) for c in r] for r in x], cols) if rows else Matrix.zeros(0, cols)
    raise DefinitionError(f"malformed matrix{where}")


def _structure(entries: Any, labels: tuple, what: str) -> dict:
    out: dict = {}
    if not isinstance(entries, list):
        raise DefinitionError(f"{what} must be a list of quintuples")
    for e in entries:
        if not isinstance(e, list) or len(e) not in (4, 5):
            raise DefinitionError(f"malformed {what} entry {e!r}")
        i, j, k = (_index(t, labels, "basis label") for t in e[:3])
        c = _entry_value(e[3:], f" in {what}")
        row = out.setdefault((i, j), {})
        row[k] = row.get(k, ZERO) + c
    return out


def _labels(spec: dict) -> tuple:
    labels = _req(spec, "labels")
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise DefinitionError("labels must be a list of strings")
    if len(set(labels)) != len(labels):
        raise DefinitionError("basis labels are not unique")
    return tuple(labels)


# ---------------------------------------------------------------- builders


def _build_groupoid(defs, b: Block) -> None:
    s = b.spec
    objects = tuple(_req(s, "objects"))
    mors, src, tgt = [], {}, {}
    for m in _req(s, "morphisms"):
        if not (isinstance(m, list) and len(m) == 3):
            raise DefinitionError(f"morphism entries are [label, source, target], got {m!r}")
        lab, x, y = m
        if lab in src:
            raise DefinitionError(f"duplicate morphism label {lab!r}")
        mors.append(lab)
        src[lab], tgt[lab] = x, y
    comp = {}
    for e in s.get("composition", []):
        if not (isinstance(e, list) and len(e) == 3):
            raise DefinitionError(f"composition entries are [g, h, gh], got {e!r}")
        comp[(e[0], e[1])] = e[2]
    b.obj = FiniteGroupoid(objects, tuple(mors), src, tgt, comp, dict(_req(s, "inverse")), dict(_req(s, "identities")), b.name)


def _build_algebra(defs, b: Block) -> None:
    s = b.spec
    if "polynomial" in s:
        p = s["polynomial"]
        A, mons = truncated_polynomial_algebra(list(_req(p, "variables")), int(_req(p, "degree")))
        b.extra["monomials"] = mons
    else:
        labels = _labels(s)
        A = FiniteDimAlgebra(labels, _structure(_req(s, "mult"), labels, "mult"), vector(_req(s, "unit"), labels, " in unit"))
    b.obj = A
    _local_unit_data(b, A.labels)


def _local_unit_data(b: Block, labels: tuple) -> None:
    s = b.spec
    if "idempotents" in s:
        b.extra["idempotents"] = {x: vector(v, labels, f" in idempotent {x!r}") for x, v in s["idempotents"].items()}
    cands = []
    for c in s.get("local_units", []):
        cands.append(
            (
                _req(c, "label"),
                vector(_req(c, "element"), labels, f" in local unit {c.get('label')!r}"),
                _req(c, "source"),
                _req(c, "target"),
                bool(c.get("expect", True)),
            )
        )
    if cands:
        if "idempotents" not in b.extra:
            raise DefinitionError("local units need an idempotent family")
        b.extra["local_units"] = cands


def _build_weakhopf(defs, b: Block) -> None:
    s = b.spec
    if "groupoid_algebra" in s:
        G = _ref(defs, s["groupoid_algebra"], ("groupoid",)).obj
        H = groupoid_algebra(G)
        H = WeakHopfPresentation(H.algebra, H.coalgebra, H.antipode, b.name)
        b.extra["groupoid"] = s["groupoid_algebra"]
    elif "direct_sum" in s:
        parts = [_ref(defs, n, ("weakhopf",)).obj for n in s["direct_sum"]]
        H = direct_sum(parts, b.name)
    else:
        labels = _labels(s)
        A = FiniteDimAlgebra(labels, _structure(_req(s, "mult"), labels, "mult"), vector(_req(s, "unit"), labels, " in unit"))
        comult = [[] for _ in labels]
        for (i, j), row in _structure(_req(s, "comult"), labels, "comult").items():
            for k, c in row.items():
                if c:
                    comult[i].append((j, k, c))
        C = FiniteDimCoalgebra(labels, tuple(tuple(t) for t in comult), vector(_req(s, "counit"), labels, " in counit"))
        S = matrix(s["antipode"], len(labels), len(labels), " in antipode") if "antipode" in s else None
        H = WeakHopfPresentation(A, C, S, b.name)
    b.obj = H
    ideals = []
    for k, I in enumerate(s.get("ideals", [])):
        gens = [vector(v, H.labels, " in ideal generator") for v in _req(I, "generators")]
        ideals.append((I.get("name", f"I{k}"), gens))
    b.extra["ideals"] = ideals
    _local_unit_data(b, H.labels)


def _build_xdecomp(defs, b: Block) -> None:
    s = b.spec
    objects = tuple(_req(s, "objects"))
    comps, refs = {}, {}
    spec_comps = _req(s, "components")
    for x in objects:
        name = spec_comps.get(x)
        if name is None:
            comps[x] = FiniteDimAlgebra((), {}, ())
            refs[x] = None
            continue
        r = _ref(defs, name, ("algebra", "weakhopf"))
        comps[x] = r.obj.algebra if r.kind == "weakhopf" else r.obj
        refs[x] = name
    extra_keys = set(spec_comps) - set(objects)
    if extra_keys:
        raise DefinitionError(f"components for unknown objects {sorted(extra_keys)}")
    b.obj = XDecompAlgebra.build(objects, comps)
    b.extra["components"] = refs


def _build_lie(defs, b: Block) -> None:
    s = b.spec
    if "gl" in s:
        b.obj = gl(int(s["gl"]), prefix=s.get("prefix", "E"))
        return
    labels = _labels(s)
    b.obj = FiniteDimLieAlgebra(labels, _structure(s.get("bracket", []), labels, "bracket"))


def _build_algebroid(defs, b: Block) -> None:
    comps = {x: _ref(defs, n, ("lie",)).obj for x, n in _req(b.spec, "components").items()}
    b.obj = XLieAlgebroid(tuple(comps), comps)


def _build_action(defs, b: Block) -> None:
    s = b.spec
    typ = _req(s, "type")
    b.extra["type"] = typ
    if typ == "groupoid":
        G = _ref(defs, _req(s, "groupoid"), ("groupoid",)).obj
        carrier = _ref(defs, _req(s, "carrier"), ("xdecomp",))
        X = carrier.obj
        nu_spec = _req(s, "nu")
        nu = {}
        for g in G.morphisms:
            if g in nu_spec:
                nu[g] = matrix(nu_spec[g], X.dims[G.tgt[g]], X.dims[G.src[g]], f" in nu[{g!r}]")
            elif g in G.idents.values():
                x = G.src[g]
                nu[g] = Matrix.identity(X.dims[x])
            else:
                raise DefinitionError(f"no structure map for morphism {g!r}")
        unknown = set(nu_spec) - set(G.morphisms)
        if unknown:
            raise DefinitionError(f"structure maps for unknown morphisms {sorted(unknown)}")
        b.obj = GroupoidAction(G, X, nu, b.name)
        b.extra["carrier"] = carrier.name
        if "hopf" in s:
            H = _ref(defs, s["hopf"], ("weakhopf",)).obj
            b.extra["hopf"] = s["hopf"]
            b.extra["linearized"] = linearize_action(b.obj, H)
    elif typ == "hmodule":
        Hb = _ref(defs, _req(s, "hopf"), ("weakhopf",))
        H = Hb.obj
        Ab = _ref(defs, _req(s, "algebra"), ("algebra", "xdecomp"))
        A = Ab.obj.total if Ab.kind == "xdecomp" else Ab.obj
        rho_spec = _req(s, "rho")
        rho = []
        for lab in H.labels:
            if lab not in rho_spec:
                raise DefinitionError(f"no action matrix for {lab!r}")
            rho.append(matrix(rho_spec[lab], A.dim, A.dim, f" in rho[{lab!r}]"))
        b.obj = HModuleAction(H, A.dim, tuple(rho), b.name)
        b.extra["hopf"], b.extra["algebra"] = Hb.name, Ab.name
        b.extra["carrier_algebra"] = A
    elif typ == "lie":
        L = _ref(defs, _req(s, "algebroid"), ("algebroid",)).obj
        carrier = _ref(defs, _req(s, "carrier"), ("xdecomp",))
        X = carrier.obj
        tau = {}
        for x in L.objects:
            mats = _req(s, "tau").get(x)
            if mats is None:
                raise DefinitionError(f"no action matrices for component {x!r}")
            d = X.dims[x]
            tau[x] = tuple(_lie_matrix(m, d, x) for m in mats)
        b.obj = LieAction(L, X, tau)
        b.extra["carrier"] = carrier.name
        if "groupoid_action" in s:
            ga = _ref(defs, s["groupoid_action"], ("action",))
            if ga.extra.get("type") != "groupoid":
                raise DefinitionError(f"{ga.name!r} is not a groupoid action")
            if ga.obj.carrier is not X:
                raise DefinitionError("groupoid and Lie actions live on different carriers")
            b.extra["groupoid_action"] = ga.name
            conj = {}
            for g, m in s.get("lie_conjugation", {}).items():
                G = ga.obj.groupoid
                conj[g] = matrix(m, L.components[G.tgt[g]].dim, L.components[G.src[g]].dim, f" in lie_conjugation[{g!r}]")
            if conj:
                missing = set(ga.obj.groupoid.morphisms) - set(conj)
                if missing:
                    raise DefinitionError(f"lie_conjugation misses morphisms {sorted(missing)}")
                b.extra["lie_conjugation"] = conj
    else:
        raise DefinitionError(f"unknown action type {typ!r}")


def _lie_matrix(m, d: int, x: str) -> Matrix:
    if isinstance(m, dict) and "shape" in m and list(m["shape"]) != [d, d]:
        from .modalg import ShapeError

        raise ShapeError(
            f"matrix of shape {tuple(m['shape'])} in component {x!r}: the bracket is only defined within a component"
        )
    return matrix(m, d, d, f" in tau[{x!r}]")


def _build_map(defs, b: Block) -> None:
    s = b.spec
    typ = _req(s, "type")
    b.extra["type"] = typ
    if typ == "functor":
        G = _ref(defs, _req(s, "source"), ("groupoid",)).obj
        K = _ref(defs, _req(s, "target"), ("groupoid",)).obj
        b.obj = GroupoidHom(G, K, dict(_req(s, "objects")), dict(_req(s, "morphisms")), bool(s.get("x_preserving", False)))
    elif typ == "linear":
        A = _ref(defs, _req(s, "source"), ("algebra", "weakhopf"))
        B = _ref(defs, _req(s, "target"), ("algebra", "weakhopf"))
        da = A.obj.dim
        db = B.obj.dim
        b.obj = matrix(_req(s, "matrix"), db, da, " in matrix")
        b.extra["source"], b.extra["target"] = A.name, B.name
    else:
        raise DefinitionError(f"unknown map type {typ!r}")


_BUILDERS = {
    "groupoid": _build_groupoid,
    "algebra": _build_algebra,
    "weakhopf": _build_weakhopf,
    "xdecomp": _build_xdecomp,
    "lie": _build_lie,
    "algebroid": _build_algebroid,
    "action": _build_action,
    "map": _build_map,
}


# ---------------------------------------------------------------- serialization


def matrix_json(M: Matrix) -> dict:
    entries = []
    for i in range(M.rows):
        for j in range(M.cols):
            c = M[i, j]
            if c:
                entries.append([i, j] + _quint(c))
    return {"shape": [M.rows, M.cols], "entries": entries}


def vector_json(v) -> list:
    return [scalar_json(c) for c in v]


def structure_json(table: dict) -> list:
    out = []
    for (i, j) in sorted(table):
        for k in sorted(table[(i, j)]):
            c = table[(i, j)][k]
            if c:
                out.append([i, j, k] + _quint(c))
    return out


def groupoid_block(G: FiniteGroupoid, name: str | None = None) -> dict:
    return {
        "kind": "groupoid",
        "name": name or G.name,
        "objects": list(G.objects),
        "morphisms": [[g, G.src[g], G.tgt[g]] for g in G.morphisms],
        "identities": {x: G.idents[x] for x in G.objects},
        "inverse": {g: G.inv[g] for g in G.morphisms},
        "composition": [[g, h, G.comp[(g, h)]] for g in G.morphisms for h in G.morphisms if (g, h) in G.comp],
    }


def algebra_block(A: FiniteDimAlgebra, name: str) -> dict:
    return {"kind": "algebra", "name": name, "labels": list(A.labels), "mult": structure_json(A.mult), "unit": vector_json(A.unit)}


def weakhopf_block(H: WeakHopfPresentation, name: str) -> dict:
    comult = {}
    for i, terms in enumerate(H.coalgebra.comult):
        for j, k, c in terms:
            comult.setdefault((i, j), {})[k] = comult.get((i, j), {}).get(k, ZERO) + c
    d = {
        "kind": "weakhopf",
        "name": name,
        "labels": list(H.labels),
        "mult": structure_json(H.algebra.mult),
        "unit": vector_json(H.unit),
        "comult": structure_json(comult),
        "counit": vector_json(H.coalgebra.counit),
    }
    if H.antipode is not None:
        d["antipode"] = matrix_json(H.antipode)
    return d


def lie_block(L: FiniteDimLieAlgebra, name: str) -> dict:
    return {"kind": "lie", "name": name, "labels": list(L.labels), "bracket": structure_json(L.bracket)}


def _canonical(x: Any) -> Any:
    """Normalise scalars inside a raw block so that equal inputs serialise identically."""
    if isinstance(x, dict):
        return {k: _canonical(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_canonical(v) for v in x]
    if isinstance(x, _Float):
        return str(x)
    return x


def to_data(defs: DefinitionFile) -> dict:
    return {"schema": 1, "blocks": [_canonical(b.spec) for b in defs.blocks]}


def dumps(defs_or_data: DefinitionFile | dict) -> str:
    data = to_data(defs_or_data) if isinstance(defs_or_data, DefinitionFile) else defs_or_data
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def expanded(defs: DefinitionFile) -> dict:
    """Explicit description of every resolved object, independent of shortcut syntax.

    Two files describe the same object graph exactly when these agree.
    """
    out = {}
    for b in defs.blocks:
        o = b.obj
        if b.kind == "groupoid":
            d = groupoid_block(o, b.name)
        elif b.kind == "algebra":
            d = algebra_block(o, b.name)
        elif b.kind == "weakhopf":
            d = weakhopf_block(o, b.name)
            d["ideals"] = [[n, [vector_json(v) for v in g]] for n, g in b.extra.get("ideals", [])]
        elif b.kind == "xdecomp":
            d = {"objects": list(o.objects), "components": {x: algebra_block(o.components[x], x) for x in o.objects}}
        elif b.kind == "lie":
            d = lie_block(o, b.name)
        elif b.kind == "algebroid":
            d = {x: lie_block(L, x) for x, L in o.components.items()}
        elif b.kind == "action":
            t = b.extra["type"]
            if t == "groupoid":
                d = {"nu": {g: matrix_json(M) for g, M in o.nu.items()}}
            elif t == "hmodule":
                d = {"rho": [matrix_json(M) for M in o.rho]}
            else:
                d = {"tau": {x: [matrix_json(M) for M in ms] for x, ms in o.tau.items()}}
                d["lie_conjugation"] = {g: matrix_json(M) for g, M in b.extra.get("lie_conjugation", {}).items()}
            d["refs"] = {k: v for k, v in b.extra.items() if isinstance(v, str)}
        else:
            if b.extra["type"] == "functor":
                d = {"objects": o.obj_map, "morphisms": o.mor_map, "x_preserving": o.x_preserving}
            else:
                d = {"matrix": matrix_json(o), "source": b.extra["source"], "target": b.extra["target"]}
        for key in ("idempotents",):
            if key in b.extra:
                d[key] = {x: vector_json(v) for x, v in b.extra[key].items()}
        if "local_units" in b.extra:
            d["local_units"] = [[lab, vector_json(v), x, y, e] for lab, v, x, y, e in b.extra["local_units"]]
        out[b.name] = {"kind": b.kind, "object": d}
    return json.loads(json.dumps(out, sort_keys=True))
