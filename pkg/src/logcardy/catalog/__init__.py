"""Certified example instances shipped as JSON.

``load(id)`` returns a HopfAlgebra (braiding attached, simple modules
registered) or a ModularData, after re-running the validators and comparing
them with the stored certificates.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

__all__ = ["UnknownId", "CertificateMismatch", "list", "load", "document", "simples", "kind"]

_builtin_list = list


class UnknownId(KeyError):
    """No catalog entry with this id."""


class CertificateMismatch(RuntimeError):
    """Stored certificates disagree with a fresh validation."""


def _data():
    return resources.files(__name__).joinpath("data")


def list() -> _builtin_list:  # noqa: A001 - public name fixed by the interface
    """Sorted (id, kind) pairs."""
    out = []
    for p in _data().iterdir():
        if p.name.endswith(".json"):
            doc = json.loads(p.read_text(encoding="utf-8"))
            out.append((doc["id"], doc["kind"]))
    return sorted(out)


@lru_cache(maxsize=None)
def _raw(entry_id: str) -> str:
    p = _data().joinpath(f"{entry_id}.json")
    if not p.is_file():
        raise UnknownId(entry_id)
    return p.read_text(encoding="utf-8")


def document(entry_id: str) -> dict:
    return json.loads(_raw(entry_id))


def kind(entry_id: str) -> str:
    return document(entry_id)["kind"]


@lru_cache(maxsize=None)
def load(entry_id: str):
    from .. import io
    from ..cardy import register_simples
    from ..hopf import validate_hopf, validate_ribbon
    from ..modulardata import validate_modular
    from ..rep import validate_module

    doc = document(entry_id)
    cert = doc.get("certificates", {})
    if doc["kind"] == "modulardata":
        md = io.modulardata_from_doc(doc)
        _expect(entry_id, "validate_modular", validate_modular(md).passed, cert)
        return md
    H = io.hopf_from_doc(doc)
    _expect(entry_id, "validate_hopf", validate_hopf(H).passed, cert)
    if H.braiding is not None:
        _expect(entry_id, "validate_ribbon", validate_ribbon(H).passed, cert)
    mods = []
    for s in doc.get("simples", []):
        m = io.module_from_doc({"schema_version": doc["schema_version"], "kind": "module",
                                "cyclotomic_order": doc["cyclotomic_order"], **s}, H)
        if not validate_module(m).passed:
            raise CertificateMismatch(f"{entry_id}: simple {m.label} is not a module")
        mods.append(m)
    register_simples(H, mods)
    H.catalog_id = entry_id
    return H


def simples(entry_id: str) -> tuple:
    from ..cardy import registered_simples
    return registered_simples(load(entry_id))


def _expect(entry_id: str, key: str, value, cert: dict) -> None:
    if key in cert and cert[key] != value:
        raise CertificateMismatch(f"{entry_id}: {key} recomputed as {value}, certificate says {cert[key]}")
