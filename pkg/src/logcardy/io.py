"""JSON documents for Hopf algebras, modules and modular data.

Every document carries ``schema_version`` and a top-level ``cyclotomic_order``
shared by all its scalars. Structure tensors are dense nested arrays; a
tensor may instead be given as ``{"sparse": [[i, j, k, "c"], ...]}``, which
the larger catalog entries use.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .hopf import HopfAlgebra, RibbonStructure
from .linalg import Matrix, Tensor3
from .modulardata import ModularData, conjugation
from .rep import Representation
from .scalar import Field, parse, to_str

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION", "ParseError", "dump", "load_document", "read", "write",
    "hopf_to_doc", "hopf_from_doc", "module_to_doc", "module_from_doc",
    "modulardata_to_doc", "modulardata_from_doc",
]


class ParseError(ValueError):
    """Malformed or inconsistent document."""


def _vec(v: Sequence) -> list[str]:
    return [to_str(x) for x in v]


def _mat(A: Matrix) -> list[list[str]]:
    return [_vec(r) for r in A.rows]


def _tensor(T: Tensor3, sparse: bool) -> Any:
    if sparse:
        return {"sparse": [[i, j, k, to_str(c)] for (i, j, k), c in T.nonzero()]}
    return [[_vec(row) for row in plane] for plane in T.to_dense()]


def _read_vec(v, f: Field, n: int | None = None, what: str = "vector") -> tuple:
    if not isinstance(v, list) or (n is not None and len(v) != n):
        raise ParseError(f"{what} must be a list of length {n}")
    try:
        return tuple(parse(str(x), f) for x in v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar in {what}: {exc}") from exc


def _read_mat(rows, f: Field, n: int, m: int | None = None, what: str = "matrix") -> Matrix:
    m = n if m is None else m
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"{what} must have {n} rows")
    return Matrix([_read_vec(r, f, m, what) for r in rows], f, ncols=m)


def _read_tensor(t, f: Field, n: int, what: str) -> Tensor3:
    if isinstance(t, dict):
        if set(t) != {"sparse"}:
            raise ParseError(f"{what}: unknown tensor encoding")
        data = {}
        for entry in t["sparse"]:
            if len(entry) != 4:
                raise ParseError(f"{what}: sparse entries are [i, j, k, value]")
            i, j, k, c = entry
            if not all(isinstance(x, int) and 0 <= x < n for x in (i, j, k)):
                raise ParseError(f"{what}: index out of range")
            v = _read_vec([c], f, 1, what)[0]
            if v:
                data[(i, j, k)] = v
        return Tensor3((n, n, n), data, f)
    if not isinstance(t, list) or len(t) != n or any(not isinstance(p, list) or len(p) != n for p in t):
        raise ParseError(f"{what} must be {n} x {n} x {n}")
    data = {}
    for i, plane in enumerate(t):
        for j, row in enumerate(plane):
            for k, v in enumerate(_read_vec(row, f, n, what)):
                if v:
                    data[(i, j, k)] = v
    return Tensor3((n, n, n), data, f)


def _header(kind: str, field: Field, **extra) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "cyclotomic_order": field.order}
    doc.update(extra)
    return doc


def _check_header(doc: Any, kind: str) -> Field:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {doc.get('schema_version')!r}")
    if doc.get("kind") != kind:
        raise ParseError(f"expected kind {kind!r}, got {doc.get('kind')!r}")
    order = doc.get("cyclotomic_order", 1)
    if not isinstance(order, int) or order < 1:
        raise ParseError("cyclotomic_order must be a positive integer")
    return Field(order)


# hopf

def hopf_to_doc(H: HopfAlgebra, sparse: bool = False, **extra) -> dict:
    doc = _header("hopf", H.field, name=H.name, dimension=H.dim, basis_labels=list(H.basis_labels))
    doc.update({
        "unit": _vec(H.unit),
        "counit": _vec(H.counit),
        "mult": _tensor(H.mult, sparse),
        "comult": _tensor(H.comult, sparse),
        "antipode": _mat(H.antipode),
        "generators": [_vec(g) for g in H.generators],
    })
    rs = H.braiding
    if rs is not None:
        doc["braiding"] = {
            "r_matrix": _vec(rs.r_matrix),
            "ribbon": None if rs.ribbon is None else _vec(rs.ribbon),
            "pivot": _vec(rs.pivot),
        }
    doc.update(extra)
    return doc


def hopf_from_doc(doc: Any) -> HopfAlgebra:
    f = _check_header(doc, "hopf")
    try:
        n = doc["dimension"]
        if not isinstance(n, int) or n < 1:
            raise ParseError("dimension must be a positive integer")
        labels = doc.get("basis_labels") or [f"b{i}" for i in range(n)]
        if len(labels) != n:
            raise ParseError("basis_labels has wrong length")
        gens = doc.get("generators")
        H = HopfAlgebra(
            _read_tensor(doc["mult"], f, n, "mult"),
            _read_vec(doc["unit"], f, n, "unit"),
            _read_tensor(doc["comult"], f, n, "comult"),
            _read_vec(doc["counit"], f, n, "counit"),
            _read_mat(doc["antipode"], f, n, what="antipode"),
            labels, f,
            None if gens is None else [_read_vec(g, f, n, "generator") for g in gens],
            doc.get("name", ""),
        )
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from exc
    br = doc.get("braiding")
    if br is not None:
        r = _read_vec(br.get("r_matrix"), f, n * n, "r_matrix")
        v = br.get("ribbon")
        g = br.get("pivot")
        try:
            H.braiding = RibbonStructure.build(
                H, r,
                ribbon=None if v is None else _read_vec(v, f, n, "ribbon"),
                pivot=None if g is None else _read_vec(g, f, n, "pivot"))
        except ValueError as exc:
            raise ParseError(f"braiding: {exc}") from exc
    return H


# modules

def module_to_doc(M: Representation, parent_id: str = "") -> dict:
    doc = _header("module", M.parent.field, parent=parent_id or M.parent.name,
                  label=M.label, dimension=M.dim)
    doc["action"] = [_mat(A) for A in M.action]
    return doc


def module_from_doc(doc: Any, parent: HopfAlgebra) -> Representation:
    f = _check_header(doc, "module")
    if f is not parent.field:
        raise ParseError(f"module field {f!r} differs from parent field {parent.field!r}")
    d = doc.get("dimension")
    if not isinstance(d, int) or d < 0:
        raise ParseError("dimension must be a non-negative integer")
    act = doc.get("action")
    if not isinstance(act, list) or len(act) != parent.dim:
        raise ParseError(f"need {parent.dim} action matrices")
    return Representation(parent, [_read_mat(A, f, d, what="action") for A in act], doc.get("label", ""))


# modular data

def modulardata_to_doc(md: ModularData) -> dict:
    doc = _header("modulardata", md.field, name=md.name, labels=list(md.labels))
    doc["S"] = _mat(md.S)
    doc["T"] = _vec(md.T)
    if md.central_charge is not None:
        doc["central_charge"] = to_str(md.central_charge)
    return doc


def modulardata_from_doc(doc: Any) -> ModularData:
    f = _check_header(doc, "modulardata")
    labels = doc.get("labels")
    if not isinstance(labels, list) or not labels:
        raise ParseError("labels must be a non-empty list")
    n = len(labels)
    S = _read_mat(doc.get("S"), f, n, what="S")
    T = _read_vec(doc.get("T"), f, n, "T")
    c = doc.get("central_charge")
    md = ModularData(tuple(labels), S, T, f, None if c is None else Fraction(c), doc.get("name", ""))
    try:
        perm = conjugation(md)
    except ValueError:
        perm = ()
    return ModularData(md.labels, md.S, md.T, f, md.central_charge, md.name, perm)


# files

def dump(doc: dict) -> str:
    """Deterministic serialization."""
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=1) + "\n"


def write(doc: dict, path: str | Path) -> None:
    Path(path).write_text(dump(doc), encoding="utf-8")


def load_document(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def read(path: str | Path) -> dict:
    try:
        return load_document(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
