"""logcardy command line.

    logcardy validate TARGET
    logcardy integrals TARGET
    logcardy boundary-states TARGET [MODULE ...] [--all-simples]
    logcardy annulus TARGET [A B]
    logcardy fusion TARGET
    logcardy report TARGET

TARGET is ``catalog:ID`` or a JSON file. Exit codes: 0 success, 1 a
mathematical check failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import catalog, io
from .cardy import (annulus, hopf_link_matrix, in_state, normalized, out_state, register_simples,
                    registered_simples, s_transform, sew, t_transform)
from .hopf import (HopfAlgebra, NormalizationFailure, NotRibbon, center, check_factorizable,
                   check_unimodular, class_functions, left_cointegral, left_integral, modular_element,
                   right_cointegral, validate_hopf, validate_ribbon)
from .linalg import coordinates, rank
from .modulardata import (ModularData, annulus_ss, cardy_state, quantum_dimensions, validate_modular,
                          verlinde)
from .modulardata import hopf_link_matrix as md_hopf_link
from .rep import (NonInteger, NotInSpan, Representation, UnmatchedFactor, character_rank,
                  composition_factors, find_simples, fusion_table, qcharacter, tensor, validate_module)
from .scalar import MissingRoot, to_str
from .validation import ValidationReport

COMMANDS = ("validate", "integrals", "boundary-states", "annulus", "fusion", "report")

TRIPLET_NOTE = ("The (p,1) triplet models (2p simple boundary conditions, a (3p-1)-dimensional space "
                "of torus one-point blocks) need the triplet category itself and are not computed here; "
                "the non-semisimple regime is exercised on Drinfeld doubles of Taft algebras instead.")


class UsageError(Exception):
    pass


class MathFailure(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: str
    args: list = field(default_factory=list)
    output: str | None = None
    format: str = "text"
    all_simples: bool = False
    verbose: int = 0


@dataclass
class Target:
    kind: str  # hopf | modulardata | module
    obj: object
    name: str


# target resolution

def _attach_simples(H: HopfAlgebra, doc: dict) -> None:
    mods = []
    for s in doc.get("simples", []):
        sub = {"schema_version": doc["schema_version"], "kind": "module",
               "cyclotomic_order": doc.get("cyclotomic_order", 1), **s}
        mods.append(io.module_from_doc(sub, H))
    if mods:
        register_simples(H, mods)


def _load_hopf_ref(ref: str, base: Path | None = None) -> HopfAlgebra:
    t = resolve(ref if ref.startswith("catalog:") or base is None else str(base / ref))
    if t.kind != "hopf":
        raise UsageError(f"{ref} is not a Hopf algebra document")
    return t.obj


def resolve(target: str) -> Target:
    if target.startswith("catalog:"):
        eid = target.split(":", 1)[1]
        try:
            obj = catalog.load(eid)
            kind = catalog.kind(eid)
        except catalog.UnknownId:
            raise UsageError(f"unknown catalog id {eid!r}") from None
        return Target(kind, obj, target)
    path = Path(target)
    if not path.is_file():
        raise UsageError(f"no such file or catalog id: {target}")
    try:
        doc = io.read(path)
        kind = doc.get("kind") if isinstance(doc, dict) else None
        if kind == "hopf":
            H = io.hopf_from_doc(doc)
            _attach_simples(H, doc)
            return Target("hopf", H, target)
        if kind == "modulardata":
            return Target("modulardata", io.modulardata_from_doc(doc), target)
        if kind == "module":
            parent = _load_hopf_ref(str(doc.get("parent", "")), path.parent)
            return Target("module", io.module_from_doc(doc, parent), target)
    except (io.ParseError, ValueError, TypeError) as exc:
        raise UsageError(f"{target}: {exc}") from exc
    raise UsageError(f"{target}: unknown document kind {kind!r}")


def _simples(H: HopfAlgebra) -> tuple:
    try:
        return registered_simples(H)
    except ValueError:
        found = find_simples(H)
        mods = [S.relabel(f"S{i}") for i, S in enumerate(found)]
        register_simples(H, mods)
        return tuple(mods)


def _modules(H: HopfAlgebra, names: list[str], all_simples: bool) -> list[Representation]:
    simples = {S.label: S for S in _simples(H)}
    out = list(simples.values()) if all_simples else []
    for n in names:
        if n in simples:
            out.append(simples[n])
            continue
        p = Path(n)
        if not p.is_file():
            raise UsageError(f"module {n!r} is neither a simple label ({', '.join(simples)}) nor a file")
        try:
            out.append(io.module_from_doc(io.read(p), H))
        except (io.ParseError, ValueError) as exc:
            raise UsageError(f"{n}: {exc}") from exc
    if not out:
        raise UsageError("no modules given (name simple labels or pass --all-simples)")
    return out


def _vec(v) -> list[str]:
    return [to_str(x) for x in v]


def _mat(rows) -> list[list[str]]:
    return [_vec(r) for r in rows]


# commands; each returns (document, ok)

def cmd_validate(t: Target) -> tuple[dict, bool]:
    reports: list[ValidationReport] = []
    if t.kind == "hopf":
        H = t.obj
        reports.append(validate_hopf(H))
        if H.braiding is not None:
            reports.append(validate_ribbon(H))
    elif t.kind == "modulardata":
        reports.append(validate_modular(t.obj))
    else:
        reports.append(validate_module(t.obj))
    ok = all(r.passed for r in reports)
    return {"command": "validate", "target": t.name, "passed": ok,
            "reports": [r.as_dict() for r in reports]}, ok


def _integrals(H: HopfAlgebra) -> dict:
    out = {
        "left_integral": _vec(left_integral(H)),
        "left_cointegral": _vec(left_cointegral(H)),
        "right_cointegral": _vec(right_cointegral(H)),
        "unimodular": check_unimodular(H),
    }
    if H.braiding is not None and validate_ribbon(H).passed and check_factorizable(H):
        p = normalized(H)
        pairing = sum((a * b for a, b in zip(p.cointegral, p.integral)), H.field.zero)
        out["normalized"] = {
            "integral": _vec(p.integral),
            "cointegral": _vec(p.cointegral),
            "pairing": to_str(pairing),
            "sign": p.sign,
            "kappa": to_str(p.kappa),
            "modular_element": _vec(modular_element(H, p.cointegral)),
        }
    return out


def cmd_integrals(t: Target) -> tuple[dict, bool]:
    if t.kind != "hopf":
        raise UsageError("integrals needs a Hopf algebra")
    try:
        return {"command": "integrals", "target": t.name, **_integrals(t.obj)}, True
    except NormalizationFailure as exc:
        raise MathFailure(str(exc)) from exc


def cmd_boundary_states(t: Target, names: list[str], all_simples: bool) -> tuple[dict, bool]:
    if t.kind != "hopf":
        raise UsageError("boundary-states needs a Hopf algebra")
    H = t.obj
    mods = _modules(H, names, all_simples)
    C = class_functions(H)
    states, vecs = [], []
    for M in mods:
        o = out_state(M)
        vecs.append(o.vector)
        i = in_state(M)
        states.append({"module": M.label, "outgoing": _vec(o.vector),
                       "outgoing_in_class_functions": o.check(),
                       "incoming": _vec(i.vector), "incoming_central": i.check()})
    r = character_rank(vecs, H.field)
    ok = all(s["outgoing_in_class_functions"] and s["incoming_central"] for s in states)
    doc = {"command": "boundary-states", "target": t.name, "states": states,
           "rank": r, "independent": r == len(mods), "dim_class_functions": len(C),
           "proper_subspace": r < len(C)}
    return doc, ok


def _hopf_annulus_table(H: HopfAlgebra, pairs) -> tuple[list, bool]:
    simples = _simples(H)
    rows, ok = [], True
    for M, N in pairs:
        amp = sew(out_state(M), out_state(N), simples)
        try:
            mc = composition_factors(tensor(M, N), simples)
            agree = mc == amp.k0
        except UnmatchedFactor:
            agree = False
        ok &= agree and min(amp.k0.coeffs) >= 0
        rows.append({"a": M.label, "b": N.label, "coefficients": list(amp.k0.coeffs),
                     "expansion": amp.k0.render(), "meataxe_agrees": agree})
    return rows, ok


def _md_expansion(md: ModularData, coeffs) -> str:
    terms = [f"{c}·χ_{l}" for l, c in zip(md.labels, coeffs) if c]
    return " + ".join(terms) if terms else "0"


def _md_annulus_table(md: ModularData, pairs) -> tuple[list, bool]:
    N = verlinde(md)
    rows, ok = [], True
    for a, b in pairs:
        A = annulus_ss(md, a, b)
        agree = A == N[md.C[a]][b]
        ok &= agree
        rows.append({"a": md.labels[a], "b": md.labels[b], "coefficients": A,
                     "expansion": _md_expansion(md, A), "verlinde_agrees": agree})
    return rows, ok


def cmd_annulus(t: Target, labels: list[str]) -> tuple[dict, bool]:
    if len(labels) not in (0, 2):
        raise UsageError("annulus takes either two boundary labels or none (full table)")
    if t.kind == "hopf":
        H = t.obj
        simples = {S.label: S for S in _simples(H)}
        if labels:
            missing = [l for l in labels if l not in simples]
            if missing:
                raise UsageError(f"unknown simple label(s) {missing}; have {list(simples)}")
            pairs = [(simples[labels[0]], simples[labels[1]])]
        else:
            pairs = [(M, N) for M in simples.values() for N in simples.values()]
        rows, ok = _hopf_annulus_table(H, pairs)
        names = list(simples)
    elif t.kind == "modulardata":
        md = t.obj
        try:
            idx = [md.labels.index(l) for l in labels]
        except ValueError:
            raise UsageError(f"unknown label in {labels}; have {list(md.labels)}") from None
        pairs = [tuple(idx)] if labels else [(a, b) for a in range(md.rank) for b in range(md.rank)]
        rows, ok = _md_annulus_table(md, pairs)
        names = list(md.labels)
    else:
        raise UsageError("annulus needs a Hopf algebra or modular data")
    return {"command": "annulus", "target": t.name, "boundary_conditions": names,
            "amplitudes": rows, "checks": {"cross_check": ok}}, ok


def _fusion(t: Target) -> tuple[list, list]:
    if t.kind == "hopf":
        simples = _simples(t.obj)
        return [S.label for S in simples], fusion_table(simples)
    if t.kind == "modulardata":
        return list(t.obj.labels), verlinde(t.obj)
    raise UsageError("fusion needs a Hopf algebra or modular data")


def cmd_fusion(t: Target) -> tuple[dict, bool]:
    labels, N = _fusion(t)
    return {"command": "fusion", "target": t.name, "labels": labels, "N": N}, True


def _span_matrix(chars, images, field):
    """Coordinates of each image in the span of chars, or None where outside the span."""
    out = []
    for v in images:
        c = coordinates(chars, v, field)
        out.append(None if c is None else _vec(c))
    return out


def _hopf_report(t: Target) -> tuple[dict, bool]:
    H = t.obj
    val, ok = cmd_validate(t)
    simples = _simples(H)
    braided_ok = H.braiding is not None and validate_ribbon(H).passed
    fact = braided_ok and check_factorizable(H)
    doc = {"command": "report", "target": t.name, "kind": "hopf", "name": H.name,
           "dimension": H.dim, "cyclotomic_order": H.field.order, "validation": val["reports"],
           "factorizable": fact, "dim_center": len(center(H))}
    try:
        doc["integrals"] = _integrals(H)
    except NormalizationFailure as exc:
        doc["integrals"] = {"error": str(exc)}
    labels = [S.label for S in simples]
    doc["simples"] = [{"label": S.label, "dimension": S.dim} for S in simples]
    if H.braiding is None:
        return doc, ok
    chars = [qcharacter(S) for S in simples]
    doc["characters"] = {S.label: _vec(c) for S, c in zip(simples, chars)}
    C = class_functions(H)
    r = character_rank(chars, H.field)
    doc["character_span"] = {"rank": r, "dim_class_functions": len(C), "proper_subspace": r < len(C)}
    try:
        doc["fusion"] = {"labels": labels, "N": fusion_table(simples)}
    except (NotInSpan, NonInteger) as exc:
        doc["fusion"] = {"error": str(exc)}
        ok = False
    if fact:
        rows, agree = _hopf_annulus_table(H, [(M, N) for M in simples for N in simples])
        ok &= agree
        doc["annulus"] = {"boundary_conditions": labels,
                          "coefficients": [[row["coefficients"] for row in rows[i * len(simples):(i + 1) * len(simples)]]
                                           for i in range(len(simples))],
                          "checks": {"meataxe_agrees": agree}}
        s_imgs = [s_transform(out_state(S)).vector for S in simples]
        doc["S_on_character_span"] = _span_matrix(chars, s_imgs, H.field)
        try:
            t_imgs = [t_transform(out_state(S)).vector for S in simples]
            doc["T_on_character_span"] = _span_matrix(chars, t_imgs, H.field)
        except NotRibbon as exc:
            doc["T_on_character_span"] = {"error": str(exc)}
        G = hopf_link_matrix(simples)
        doc["hopf_link"] = {"labels": labels, "matrix": _mat(G.rows), "rank": rank(G),
                            "singular": rank(G) < len(simples)}
    doc["commentary"] = TRIPLET_NOTE
    return doc, ok


def _md_report(t: Target) -> tuple[dict, bool]:
    md = t.obj
    rep = validate_modular(md)
    ok = rep.passed
    doc = {"command": "report", "target": t.name, "kind": "modulardata", "name": md.name,
           "cyclotomic_order": md.field.order, "labels": list(md.labels),
           "central_charge": None if md.central_charge is None else to_str(md.central_charge),
           "validation": [rep.as_dict()], "S": _mat(md.S.rows), "T": _vec(md.T)}
    if not ok:
        return doc, ok
    N = verlinde(md)
    doc["fusion"] = {"labels": list(md.labels), "N": N}
    doc["quantum_dimensions"] = _vec(quantum_dimensions(md))
    doc["hopf_link"] = {"matrix": _mat(md_hopf_link(md).rows), "rank": rank(md_hopf_link(md))}
    doc["cardy_states"] = {md.labels[a]: [str(c) for c in cardy_state(md, a)] for a in range(md.rank)}
    rows, agree = _md_annulus_table(md, [(a, b) for a in range(md.rank) for b in range(md.rank)])
    ok &= agree
    doc["annulus"] = {"boundary_conditions": list(md.labels),
                      "coefficients": [[rows[a * md.rank + b]["coefficients"] for b in range(md.rank)]
                                       for a in range(md.rank)],
                      "checks": {"verlinde_agrees": agree}}
    doc["commentary"] = TRIPLET_NOTE
    return doc, ok


def cmd_report(t: Target) -> tuple[dict, bool]:
    if t.kind == "hopf":
        return _hopf_report(t)
    if t.kind == "modulardata":
        return _md_report(t)
    raise UsageError("report needs a Hopf algebra or modular data")


# text rendering

def _render_text(doc: dict) -> str:
    cmd = doc.get("command")
    lines = [f"{cmd} {doc.get('target', '')}".rstrip()]
    if cmd == "validate":
        for r in doc["reports"]:
            rep = ValidationReport(r["subject"])
            for c in r["checks"]:
                rep.add(c["name"], c["passed"], tuple(c["witness"]) if "witness" in c else None,
                        c.get("detail", ""))
            lines.append(rep.render())
    elif cmd == "annulus":
        for row in doc["amplitudes"]:
            flag = row.get("meataxe_agrees", row.get("verlinde_agrees"))
            lines.append(f"A[{row['a']},{row['b']}] = {row['expansion']}"
                         f"   (cross-check: {'ok' if flag else 'MISMATCH'})")
    elif cmd == "fusion":
        labels = doc["labels"]
        for i, a in enumerate(labels):
            for j, b in enumerate(labels):
                terms = [f"{n}·{labels[k]}" for k, n in enumerate(doc["N"][i][j]) if n]
                lines.append(f"{a} x {b} = {' + '.join(terms) or '0'}")
    elif cmd == "boundary-states":
        for s in doc["states"]:
            lines.append(f"[{s['module']}] out = ({', '.join(s['outgoing'])})")
            lines.append(f"{' ' * (len(s['module']) + 2)} in  = ({', '.join(s['incoming'])})")
        lines.append(f"rank {doc['rank']} of {len(doc['states'])} states; dim C(H) = {doc['dim_class_functions']}"
                     f"; independent: {doc['independent']}; proper subspace: {doc['proper_subspace']}")
    elif cmd == "report":
        lines.extend(_report_lines(doc))
    else:
        lines.extend(_kv_lines(doc, 0))
    return "\n".join(lines) + "\n"


def _table(header: list, rows: list) -> list[str]:
    cells = [[str(x) for x in header]] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(len(header))]
    fmt = lambda r: "  ".join(x.rjust(w) for x, w in zip(r, widths)).rstrip()
    return [fmt(cells[0]), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells[1:]]


def _report_lines(doc: dict) -> list[str]:
    out = [f"{doc['kind']} {doc.get('name', '')}".rstrip()]
    for r in doc["validation"]:
        bad = [c["name"] for c in r["checks"] if not c["passed"]]
        out.append(f"  {r['subject']}: {'PASS' if r['passed'] else 'FAIL ' + ', '.join(bad)}")
    if doc["kind"] == "hopf":
        out.append(f"  dimension {doc['dimension']}, field Q(zeta_{doc['cyclotomic_order']}), "
                   f"factorizable {doc['factorizable']}, dim Z(H) {doc['dim_center']}")
        integ = doc.get("integrals", {})
        if "normalized" in integ:
            nz = integ["normalized"]
            out.append(f"  normalized lambda(Lambda) = {nz['pairing']}, kappa = {nz['kappa']}")
        out.append("")
        out.extend(_table(["simple", "dim"], [[s["label"], s["dimension"]] for s in doc["simples"]]))
        span = doc.get("character_span")
        if span:
            out.append(f"character span: rank {span['rank']} of dim C(H) = {span['dim_class_functions']}"
                       f"{' (proper subspace)' if span['proper_subspace'] else ''}")
        labels = [s["label"] for s in doc["simples"]]
    else:
        c = doc.get("central_charge")
        out.append(f"  rank {len(doc['labels'])}, field Q(zeta_{doc['cyclotomic_order']}), c = {c}")
        labels = doc["labels"]
        out.append("")
        out.append("S:")
        out.extend(_table([""] + labels, [[l] + row for l, row in zip(labels, doc["S"])]))
        out.append("T: " + ", ".join(doc["T"]))
        if "quantum_dimensions" in doc:
            out.append("quantum dimensions: " + ", ".join(doc["quantum_dimensions"]))
    fus = doc.get("fusion")
    if fus and "N" in fus:
        out.append("")
        out.append("fusion:")
        for i, a in enumerate(labels):
            for j, b in enumerate(labels[i:], i):
                terms = [f"{n}·{labels[k]}" for k, n in enumerate(fus["N"][i][j]) if n]
                out.append(f"  {a} x {b} = {' + '.join(terms) or '0'}")
    ann = doc.get("annulus")
    if ann:
        out.append("")
        out.append("annulus amplitudes (coefficient vectors over " + ", ".join(labels) + "):")
        out.extend(_table([""] + labels, [[a] + ["(" + ",".join(map(str, v)) + ")" for v in row]
                                          for a, row in zip(labels, ann["coefficients"])]))
        out.append("cross-check: " + ", ".join(f"{k} {v}" for k, v in ann["checks"].items()))
    hl = doc.get("hopf_link")
    if hl:
        out.append("")
        note = " (singular)" if hl.get("singular") else ""
        out.append(f"Hopf-link matrix, rank {hl['rank']}{note}:")
        out.extend(_table([""] + labels, [[l] + row for l, row in zip(labels, hl["matrix"])]))
    if "cardy_states" in doc:
        out.append("")
        out.append("Cardy states:")
        for a, coeffs in doc["cardy_states"].items():
            out.append(f"  B_{a} = (" + ", ".join(coeffs) + ")")
    if "commentary" in doc:
        out.append("")
        out.append("note: " + doc["commentary"])
    return out


def _kv_lines(d, depth: int) -> list[str]:
    pad = "  " * depth
    out = []
    items = d.items() if isinstance(d, dict) else enumerate(d)
    for k, v in items:
        if k in ("command", "target") and depth == 0:
            continue
        if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], (dict, list))):
            out.append(f"{pad}{k}:")
            if isinstance(v, list) and isinstance(v[0], list):
                out.extend(f"{pad}  " + "  ".join(str(x) for x in row) for row in v)
            else:
                out.extend(_kv_lines(v, depth + 1))
        else:
            out.append(f"{pad}{k}: {v}")
    return out


# entry point

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logcardy", description="boundary states and annulus amplitudes")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--output", "-o", metavar="PATH")
    ap.add_argument("--verbose", "-v", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("target", help="catalog:ID or a JSON file")
        if name in ("boundary-states", "annulus"):
            p.add_argument("names", nargs="*", help="module labels or files")
        if name == "boundary-states":
            p.add_argument("--all-simples", action="store_true")
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        p.add_argument("--output", "-o", metavar="PATH", default=argparse.SUPPRESS)
    return ap


def run(cfg: RunConfig) -> tuple[dict, bool]:
    t = resolve(cfg.target)
    if cfg.command == "validate":
        return cmd_validate(t)
    if cfg.command == "integrals":
        return cmd_integrals(t)
    if cfg.command == "boundary-states":
        return cmd_boundary_states(t, cfg.args, cfg.all_simples)
    if cfg.command == "annulus":
        return cmd_annulus(t, cfg.args)
    if cfg.command == "fusion":
        return cmd_fusion(t)
    return cmd_report(t)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cfg = RunConfig(ns.command, ns.target, getattr(ns, "names", []), ns.output, ns.format,
                    getattr(ns, "all_simples", False), ns.verbose)
    try:
        doc, ok = run(cfg)
        code = 0 if ok else 1
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MathFailure, NonInteger, NotInSpan, UnmatchedFactor, MissingRoot, NormalizationFailure) as exc:
        doc = {"command": cfg.command, "target": cfg.target, "error": f"{type(exc).__name__}: {exc}"}
        code = 1
    text = io.dump(doc) if cfg.format == "json" else _render_text(doc) if "error" not in doc \
        else f"error: {doc['error']}\n"
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
