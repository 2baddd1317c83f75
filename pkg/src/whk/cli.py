"""Command-line front end: ``whk <command> <file> [options]``.

Exit status is 0 when every check passes, 1 when some check fails (the
report carries the witnesses) and 2 for operational errors such as an
unreadable file or a malformed definition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io
from .algebra import (
    WeakHopfPresentation,
    check_algebra,
    check_weak_hopf,
    counital_maps,
    format_vector,
    is_cocommutative,
    is_hopf,
)
from .exact import Matrix, Subspace
from .grouplike import (
    IdempotentFamilyError,
    IdempotentGuardError,
    LocalUnitGroupoid,
    NotSplitError,
    check_gamma_dichotomy,
    enumerate_grouplikes,
    gamma_groupoid,
    gamma_objects_via_idempotents,
    is_local_unit,
    label_of,
    local_unit_closure_check,
    validate_idempotents,
)
from .groupoid import check_groupoid, check_groupoid_hom, groupoid_algebra, linearize_hom, same_groupoid
from .lie import (
    bounded_envelope_consistency,
    check_algebroid_action,
    check_lie,
    conjugate_action,
    der_x,
    derivation_space,
)
from .modalg import (
    CertificationError,
    DecompositionError,
    ShapeError,
    action_to_functor,
    check_groupoid_module,
    check_groupoid_module_algebra,
    check_h_module_algebra,
    check_x_map,
    decompose_from_idempotents,
    functor_to_action,
    groupoid_idempotents,
    ideal_from_generators,
    inner_faithful,
    is_hopf_ideal,
    same_action,
)
from .report import SCHEMA, Report
from .smash import build_smash, smash_base_idempotents, summand_carrier

OPERATIONAL = (
    io.DefinitionError,
    ShapeError,
    NotSplitError,
    IdempotentGuardError,
    IdempotentFamilyError,
    CertificationError,
)


class UsageError(ValueError):
    pass


def _select(defs: io.DefinitionFile, blocks: list, target: str | None) -> list:
    if target is None:
        return blocks
    chosen = [b for b in blocks if b.name == target]
    if not chosen:
        if target in defs.by_name:
            raise UsageError(f"block {target!r} is not a valid target for this command")
        raise UsageError(f"no block named {target!r}")
    return chosen


def _need(blocks: list, what: str) -> list:
    if not blocks:
        raise UsageError(f"file has no {what}")
    return blocks


def _groupoid_actions(defs) -> list:
    return [b for b in defs.of_kind("action") if b.extra["type"] == "groupoid"]


def _lie_actions(defs) -> list:
    return [b for b in defs.of_kind("action") if b.extra["type"] == "lie"]


def _hopf_of(defs, b) -> WeakHopfPresentation:
    """The weak Hopf algebra an action is over (linearized for groupoid actions)."""
    if b.extra["type"] == "hmodule":
        return b.obj.H
    return b.extra["linearized"].H if "linearized" in b.extra else groupoid_algebra(b.obj.groupoid)


def _h_action(defs, b):
    from .modalg import linearize_action

    if b.extra["type"] == "hmodule":
        return b.obj, b.extra["carrier_algebra"]
    lin = b.extra.get("linearized") or linearize_action(b.obj)
    return lin, b.obj.carrier.total


# ---------------------------------------------------------------- commands


def cmd_check_groupoid(defs, args) -> list:
    out = []
    for b in _need(_select(defs, defs.of_kind("groupoid"), args.target), "groupoid blocks"):
        rep = check_groupoid(b.obj)
        rep.name = b.name
        rep.info.update({"objects": len(b.obj.objects), "morphisms": len(b.obj.morphisms), "connected": b.obj.is_connected()})
        out.append(rep)
    if args.target is None:
        for b in defs.of_kind("map"):
            if b.extra["type"] == "functor":
                rep = check_groupoid_hom(b.obj)
                rep.name = b.name
                out.append(rep)
    return out


def cmd_groupoid_algebra(defs, args) -> list:
    out = []
    for b in _need(_select(defs, defs.of_kind("groupoid"), args.target), "groupoid blocks"):
        H = groupoid_algebra(b.obj)
        rep = Report(b.name)
        rep.merge(check_groupoid(b.obj), "groupoid.")
        rep.merge(check_weak_hopf(H), "weak_hopf.")
        maps = counital_maps(H)
        idems = groupoid_idempotents(b.obj)
        span = Subspace.span(list(idems.values()), H.dim)
        rep.expect("Hs_eq_Ht_eq_span_identities", maps.Hs == maps.Ht == span, (), (maps.Hs.dim, maps.Ht.dim))
        rep.info.update(
            {
                "dim": H.dim,
                "basis": list(H.labels),
                "unit": format_vector(H.labels, H.unit),
                "is_hopf": is_hopf(H),
                "cocommutative": is_cocommutative(H),
            }
        )
        out.append(rep)
    return out


def cmd_check_weak_hopf(defs, args) -> list:
    out = []
    for b in _need(_select(defs, defs.of_kind("weakhopf"), args.target), "weakhopf blocks"):
        H = b.obj
        rep = check_weak_hopf(H)
        rep.name = b.name
        rep.info.update({"dim": H.dim, "cocommutative": is_cocommutative(H)})
        if rep.ok:
            rep.info["is_hopf"] = is_hopf(H)
        out.append(rep)
    if args.target is None:
        for b in defs.of_kind("map"):
            if b.extra["type"] == "linear":
                src, tgt = defs.get(b.extra["source"]), defs.get(b.extra["target"])
                ia = ib = None
                if b.spec.get("idempotents") and "groupoid" in src.extra and "groupoid" in tgt.extra:
                    ia = groupoid_idempotents(defs.get(src.extra["groupoid"]).obj)
                    ib = groupoid_idempotents(defs.get(tgt.extra["groupoid"]).obj)
                rep = check_x_map(b.obj, src.obj, tgt.obj, ia, ib)
                rep.name = b.name
                out.append(rep)
    return out


def cmd_counital(defs, args) -> list:
    out = []
    for b in _need(_select(defs, defs.of_kind("weakhopf"), args.target), "weakhopf blocks"):
        H = b.obj
        maps = counital_maps(H)
        rep = Report(b.name)
        for nm, M in (("eps_s", maps.eps_s), ("eps_t", maps.eps_t)):
            rep.expect(f"{nm}_idempotent", M @ M == M, (nm,))
        rep.info.update(
            {
                "eps_s": {H.labels[i]: format_vector(H.labels, maps.eps_s.column(i)) for i in range(H.dim)},
                "eps_t": {H.labels[i]: format_vector(H.labels, maps.eps_t.column(i)) for i in range(H.dim)},
                "Hs": [format_vector(H.labels, v) for v in maps.Hs.basis],
                "Ht": [format_vector(H.labels, v) for v in maps.Ht.basis],
                "Hs_eq_Ht": maps.Hs == maps.Ht,
            }
        )
        out.append(rep)
    return out


def cmd_grouplikes(defs, args) -> list:
    out = []
    for b in _need(_select(defs, defs.of_kind("weakhopf"), args.target), "weakhopf blocks"):
        H = b.obj
        gl = enumerate_grouplikes(H)
        rep = Report(b.name)
        rep.expect("complete", gl.complete, (), note="" if gl.complete else "not split over the rationals")
        rank = Matrix.from_columns(list(gl.elements), H.dim).rank() if gl.elements else 0
        rep.expect("linearly_independent", rank == len(gl), (), (rank, len(gl)))
        rep.info.update({"grouplikes": gl.labels(), "count": len(gl)})
        out.append(rep)
    return out


def cmd_gamma(defs, args) -> list:
    out = []
    for b in _need(_select(defs, defs.of_kind("weakhopf"), args.target), "weakhopf blocks"):
        H = b.obj
        rep = Report(b.name)
        Gam = gamma_groupoid(H)
        rep.merge(check_groupoid(Gam), "groupoid.")
        objs = gamma_objects_via_idempotents(H, args.max_idempotents)
        rep.expect(
            "idempotent_cross_check",
            sorted(label_of(H, p) for p in objs) == sorted(Gam.objects),
            (),
            note=f"idempotents {sorted(label_of(H, p) for p in objs)}",
        )
        rep.merge(check_gamma_dichotomy(H), "")
        if "groupoid" in b.extra:
            G = defs.get(b.extra["groupoid"]).obj
            rep.expect("round_trip", same_groupoid(Gam, G), (G.name,))
        rep.info.update(
            {
                "objects": list(Gam.objects),
                "morphisms": {g: [Gam.src[g], Gam.tgt[g]] for g in Gam.morphisms},
                "inverse": dict(Gam.inv),
            }
        )
        out.append(rep)
    return out


def _local_unit_blocks(defs) -> list:
    return [b for b in defs.blocks if b.kind in ("algebra", "weakhopf") and "idempotents" in b.extra]


def cmd_local_units(defs, args) -> list:
    out = []
    for b in _need(_select(defs, _local_unit_blocks(defs), args.target), "blocks with idempotent families"):
        A = b.obj.algebra if b.kind == "weakhopf" else b.obj
        idems = b.extra["idempotents"]
        validate_idempotents(A, idems)
        rep = Report(b.name)
        rep.ran("classification")
        units = LocalUnitGroupoid(A, idems)
        table = {}
        for label, a, x, y, expect in b.extra.get("local_units", []):
            inv = is_local_unit(A, idems, a, x, y)
            table[label] = None if inv is None else format_vector(A.labels, inv)
            if (inv is not None) != expect:
                rep.fail("classification", (label, x, y), note="expected a local unit" if expect else "expected no local unit")
            if inv is not None and expect:
                units.add(label, a, x, y)
        rep.merge(local_unit_closure_check(units), "")
        rep.info["inverses"] = table
        out.append(rep)
    return out


def cmd_check_module_algebra(defs, args) -> list:
    out = []
    blocks = _need(_select(defs, defs.of_kind("action"), args.target), "action blocks")
    for b in blocks:
        t = b.extra["type"]
        if t == "groupoid":
            act = b.obj
            rep = Report(b.name)
            rep.merge(check_groupoid_module(act), "module.")
            ma = check_groupoid_module_algebra(act)
            rep.merge(ma, "module_algebra.")
            if ma.ok:
                F = action_to_functor(act)
                back = functor_to_action(F)
                rep.expect("functor_round_trip", same_action(back, act) or back.nu == act.nu, ())
            lin, A = _h_action(defs, b)
            lrep = check_h_module_algebra(lin, A)
            rep.merge(lrep, "linearized.")
            rep.expect(
                "linearization_agrees",
                lrep.passed("multiplicative") and lrep.passed("unital")
                if ma.ok
                else not (lrep.passed("multiplicative") and lrep.passed("unital")),
                (),
            )
        elif t == "hmodule":
            rep = check_h_module_algebra(b.obj, b.extra["carrier_algebra"])
            rep.name = b.name
        else:
            rep = check_algebroid_action(b.obj)
            rep.name = b.name
        out.append(rep)
    return out


def cmd_decompose(defs, args) -> list:
    out = []
    blocks = [b for b in defs.of_kind("action") if b.extra["type"] in ("groupoid", "hmodule")]
    for b in _need(_select(defs, blocks, args.target), "groupoid or H-module actions"):
        H = _hopf_of(defs, b)
        lin, A = _h_action(defs, b)
        rep = Report(b.name)
        try:
            X = decompose_from_idempotents(H, lin, A)
        except DecompositionError as e:
            if e.report is not None:
                rep.merge(e.report, "")
            else:
                rep.fail("decomposition", (), note=str(e))
            out.append(rep)
            continue
        rep.ran("decomposition")
        rep.info.update(
            {
                "components": {x: X.components[x].dim for x in X.objects},
                "local_identities": {x: format_vector(A.labels, X.local_identities[x]) for x in X.objects},
            }
        )
        out.append(rep)
    return out


def cmd_ideal(defs, args) -> list:
    out = []
    blocks = [b for b in defs.of_kind("weakhopf") if b.extra.get("ideals")]
    for b in _need(_select(defs, blocks, args.target), "weakhopf blocks with ideal generators"):
        H = b.obj
        for name, gens in b.extra["ideals"]:
            I = ideal_from_generators(H, gens)
            wit = is_hopf_ideal(H, I)
            rep = Report(f"{b.name}/{name}")
            rep.merge(wit.report, "")
            rep.info.update({"dim": I.dim, "basis": wit.describe()})
            out.append(rep)
    return out


def cmd_inner_faithful(defs, args) -> list:
    out = []
    blocks = [b for b in defs.of_kind("action") if b.extra["type"] in ("groupoid", "hmodule")]
    for b in _need(_select(defs, blocks, args.target), "groupoid or H-module actions"):
        H = _hopf_of(defs, b)
        lin, _ = _h_action(defs, b)
        res = inner_faithful(H, lin)
        rep = Report(b.name)
        rep.merge(res.witness.report, "hopf_ideal.")
        rep.expect("inner_faithful", res.faithful, tuple(res.witness.describe()))
        rep.info.update(res.to_dict())
        out.append(rep)
    return out


def _smash_actions(defs) -> list:
    out = []
    for b in _groupoid_actions(defs):
        refs = defs.get(b.extra["carrier"]).extra["components"]
        if refs and all(r is not None and defs.get(r).kind == "weakhopf" for r in refs.values()):
            out.append(b)
    return out


def cmd_smash(defs, args) -> list:
    out = []
    for b in _need(_select(defs, _smash_actions(defs), args.target), "groupoid actions on weak Hopf summands"):
        refs = defs.get(b.extra["carrier"]).extra["components"]
        summands = {x: defs.get(r).obj for x, r in refs.items()}
        carrier = summand_carrier(summands, b.obj.groupoid.objects)
        from .modalg import GroupoidAction

        act = GroupoidAction(b.obj.groupoid, carrier, b.obj.nu, b.name)
        sm = build_smash(summands, act, strict=False, name=f"{b.name}#kG")
        rep = Report(b.name)
        rep.merge(sm.conditions, "conditions.")
        rep.info.update({"dim": sm.dim, "algebra_only": sm.algebra_only, "basis": list(sm.algebra.labels)})
        if sm.presentation is None:
            rep.merge(check_algebra(sm.algebra), "algebra.")
        else:
            rep.merge(check_weak_hopf(sm.presentation), "weak_hopf.")
            rep.merge(smash_base_idempotents(sm), "base_idempotents.")
        out.append(rep)
    return out


def cmd_der(defs, args) -> list:
    out = []
    blocks = defs.of_kind("algebra") + defs.of_kind("xdecomp")
    for b in _need(_select(defs, blocks, args.target), "algebra or xdecomp blocks"):
        rep = Report(b.name)
        if b.kind == "algebra":
            V = derivation_space(b.obj)
            L, _ = der_x(_single(b.obj))
            rep.merge(check_lie(L.components["*"]), "lie.")
            rep.info.update({"dim": V.dim, "basis": [_matrix_text(b.obj.labels, v) for v in V.basis]})
        else:
            L, _ = der_x(b.obj)
            for x, comp in L.components.items():
                rep.merge(check_lie(comp), f"{x}.lie.")
            rep.info["dims"] = {x: c.dim for x, c in L.components.items()}
        rep.ran("bracket_closed")
        out.append(rep)
    return out


def _single(A):
    from .modalg import XDecompAlgebra

    return XDecompAlgebra.build(("*",), {"*": A})


def _matrix_text(labels, v) -> str:
    """A derivation as 'image of each basis element', skipping zeros."""
    n = len(labels)
    D = Matrix.unflatten(v, n, n)
    parts = []
    for j in range(n):
        col = D.column(j)
        if any(col):
            parts.append(f"{labels[j]} -> {format_vector(labels, col)}")
    return "; ".join(parts)


def cmd_check_lie_action(defs, args) -> list:
    out = []
    for b in _need(_select(defs, _lie_actions(defs), args.target), "Lie actions"):
        act = b.obj
        rep = Report(b.name)
        for x, L in act.algebroid.components.items():
            rep.merge(check_lie(L), f"{x}.lie.")
        rep.merge(check_algebroid_action(act), "")
        if "groupoid_action" in b.extra:
            ga = defs.get(b.extra["groupoid_action"]).obj
            rep.merge(check_groupoid_module_algebra(ga), "groupoid.")
            res = conjugate_action(ga, act, b.extra.get("lie_conjugation"))
            rep.merge(res.report, "conjugation.")
        out.append(rep)
    return out


def cmd_envelope(defs, args) -> list:
    out = []
    blocks = [b for b in _lie_actions(defs) if "groupoid_action" in b.extra]
    for b in _need(_select(defs, blocks, args.target), "Lie actions with a groupoid action"):
        ga = defs.get(b.extra["groupoid_action"]).obj
        rep = bounded_envelope_consistency(b.obj, ga, args.degree)
        rep.name = b.name
        out.append(rep)
    return out


COMMANDS = {
    "check-groupoid": cmd_check_groupoid,
    "groupoid-algebra": cmd_groupoid_algebra,
    "check-weak-hopf": cmd_check_weak_hopf,
    "counital": cmd_counital,
    "grouplikes": cmd_grouplikes,
    "gamma": cmd_gamma,
    "local-units": cmd_local_units,
    "check-module-algebra": cmd_check_module_algebra,
    "decompose": cmd_decompose,
    "ideal": cmd_ideal,
    "inner-faithful": cmd_inner_faithful,
    "smash": cmd_smash,
    "der": cmd_der,
    "check-lie-action": cmd_check_lie_action,
    "envelope-consistency": cmd_envelope,
}

# which commands `report` runs, and the blocks that make each one applicable
_APPLICABLE = {
    "check-groupoid": lambda d: d.of_kind("groupoid"),
    "groupoid-algebra": lambda d: d.of_kind("groupoid"),
    "check-weak-hopf": lambda d: d.of_kind("weakhopf"),
    "counital": lambda d: d.of_kind("weakhopf"),
    "grouplikes": lambda d: d.of_kind("weakhopf"),
    "gamma": lambda d: d.of_kind("weakhopf"),
    "local-units": _local_unit_blocks,
    "check-module-algebra": lambda d: d.of_kind("action"),
    "decompose": lambda d: [b for b in d.of_kind("action") if b.extra["type"] != "lie"],
    "ideal": lambda d: [b for b in d.of_kind("weakhopf") if b.extra.get("ideals")],
    "inner-faithful": lambda d: [b for b in d.of_kind("action") if b.extra["type"] != "lie"],
    "smash": _smash_actions,
    "der": lambda d: d.of_kind("algebra") + d.of_kind("xdecomp"),
    "check-lie-action": _lie_actions,
    "envelope-consistency": lambda d: [b for b in _lie_actions(d) if "groupoid_action" in b.extra],
}


def cmd_report(defs, args) -> list:
    out = []
    for name, applicable in _APPLICABLE.items():
        if applicable(defs):
            for rep in COMMANDS[name](defs, args):
                rep.name = f"{name}: {rep.name}"
                out.append(rep)
    return out


COMMANDS["report"] = cmd_report


# ---------------------------------------------------------------- driver


def run(command: str, path: str, target: str | None = None, degree: int = 3, max_idempotents: int = 16) -> tuple[dict, int]:
    """Execute one command; returns (JSON-ready document, exit code)."""
    doc = {"schema": SCHEMA, "command": command, "file": Path(path).name}
    if target:
        doc["target"] = target
    ns = argparse.Namespace(target=target, degree=degree, max_idempotents=max_idempotents)
    try:
        if command not in COMMANDS:
            raise UsageError(f"unknown command {command!r}")
        if degree < 0:
            raise UsageError("degree must be non-negative")
        defs = io.load(path)
        reports = COMMANDS[command](defs, ns)
    except (UsageError, *OPERATIONAL) as e:
        doc["status"] = "error"
        doc["error"] = {"type": type(e).__name__, "message": str(e)}
        return doc, 2
    ok = all(r.ok for r in reports)
    doc["status"] = "pass" if ok else "fail"
    doc["results"] = [r.to_dict() for r in reports]
    return doc, 0 if ok else 1


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def render_text(doc: dict) -> str:
    head = f"{doc['command']} {doc['file']}: {doc['status'].upper()}"
    lines = [head]
    if doc["status"] == "error":
        lines.append(f"  {doc['error']['type']}: {doc['error']['message']}")
        return "\n".join(lines) + "\n"
    for r in doc["results"]:
        lines.append(_text_of(r))
    return "\n".join(lines) + "\n"


def witness_text(w: list) -> str:
    """Witness tuple as text; nested vectors print as (a, b, c)."""
    return ", ".join("(" + witness_text(x) + ")" if isinstance(x, list) else str(x) for x in w)


def _text_of(r: dict) -> str:
    from .report import _term

    lines = [f"{r['name']}: {r['status'].upper()}"]
    for name, entry in r["checks"].items():
        lines.append(f"  [{entry['status']}] {name}")
        for f in entry.get("failures", []):
            w = witness_text(f["witness"])
            line = f"      witness ({w})"
            res = " ".join(_term(x) for x in f["residual"])
            if res:
                line += f" residual [{res}]"
            if f.get("note"):
                line += f"  {f['note']}"
            lines.append(line)
        if entry.get("failure_count", 0) > len(entry.get("failures", [])):
            lines.append(f"      ... {entry['failure_count']} failures in total")
    for k in sorted(r.get("info", {})):
        lines.append(f"  {k}: {json.dumps(r['info'][k], sort_keys=True, ensure_ascii=False)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="whk", description="Exact checks for weak Hopf algebras, groupoid actions and their module algebras.")
    p.add_argument("command", help=", ".join(COMMANDS))
    p.add_argument("file", help="definition file (JSON)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--degree", type=int, default=3, help="word length bound for envelope-consistency")
    p.add_argument("--max-idempotents", type=int, default=16, help="guard for idempotent enumeration")
    p.add_argument("--target", default=None, help="restrict to one named block")
    return p


def main(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    threads = os.environ.get("WHK_THREADS")
    if threads is not None and not threads.isdigit():
        sys.stderr.write(f"whk: WHK_THREADS must be a non-negative integer, got {threads!r}\n")
        return 2
    doc, code = run(args.command, args.file, args.target, args.degree, args.max_idempotents)
    if args.format == "json":
        sys.stdout.write(render_json(doc))
    else:
        sys.stdout.write(render_text(doc))
    if code == 2:
        sys.stderr.write(f"whk: {doc['error']['message']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
