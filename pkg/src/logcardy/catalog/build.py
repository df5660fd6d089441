"""Regenerate the frozen catalog documents.

    python -m logcardy.catalog.build [--only ID ...]

Each Hopf entry is constructed from its base algebra, its braiding is found
by exhaustive search over grouplike pivots, and its simple modules are split
out of the regular module. The output is deterministic.
"""
from __future__ import annotations

import argparse
from pathlib import Path
from typing import Callable

from .. import io
from ..hopf import (HopfAlgebra, RibbonStructure, center, check_factorizable, check_unimodular,
                    class_functions, left_integral, ribbon_candidates, validate_hopf, validate_ribbon)
from ..modulardata import ModularData, fibonacci, ising, semion, su2_level, trivial_data, validate_modular
from ..rep import (Representation, character_rank, decompose_K0, find_simples, qcharacter, regular,
                   simplicity_certificate, trivial, validate_module, is_isomorphic)
from ..scalar import QQ, Field, to_str
from .construct import (cyclic_characters, cyclic_grouplikes, double_grouplikes, double_r_matrix,
                        drinfeld_double, group_algebra, group_r_matrix, taft)

DATA = Path(__file__).with_name("data")
SPARSE_ABOVE = 16  # structure tensors of larger algebras are stored sparsely


# braidings

def _pivotal_only(H: HopfAlgebra, r, grouplikes) -> RibbonStructure:
    for g in grouplikes:
        rs = RibbonStructure.build(H, r, pivot=g)
        if validate_ribbon(H, rs).passed:
            return rs
    raise RuntimeError(f"no pivot found for {H.name}")


def _ribbon_or_pivot(H: HopfAlgebra, r, grouplikes) -> tuple[RibbonStructure, str]:
    found = ribbon_candidates(H, r, grouplikes)
    if found:
        note = f"{len(found)} ribbon element(s) found over {len(grouplikes)} grouplike pivots; the first is pinned"
        return RibbonStructure.build(H, r, ribbon=found[0]), note
    return _pivotal_only(H, r, grouplikes), "no ribbon element exists; pivotal structure only"


def _double_of(base: HopfAlgebra, gen: int, order: int, name: str) -> tuple[HopfAlgebra, str]:
    D = drinfeld_double(base, name)
    G = double_grouplikes(base, cyclic_characters(base, gen, order), cyclic_grouplikes(base, gen, order))
    rs, note = _ribbon_or_pivot(D, double_r_matrix(base), G)
    D.braiding = rs
    return D, note


def make_z2():
    H = group_algebra(2, QQ, "Q[Z/2]")
    H.braiding = RibbonStructure.build(H, group_r_matrix(2, QQ, 0), ribbon=H.unit)
    return H, "group algebra of Z/2; trivial R = 1 (x) 1, ribbon v = 1; symmetric, not factorizable"


def make_z3():
    f = Field(3)
    H = group_algebra(3, f, "Q(zeta3)[Z/3]")
    H.braiding = RibbonStructure.build(H, group_r_matrix(3, f, 0), ribbon=H.unit)
    return H, ("group algebra of Z/3 over Q(zeta3) so its three characters split; trivial R, ribbon v = 1; "
               "not factorizable")


def make_double_z2():
    D, note = _double_of(group_algebra(2, QQ), 1, 2, "D(Q[Z/2])")
    return D, f"Drinfeld double of Q[Z/2] with its canonical R; {note}"


def make_taft2():
    f = Field(4)
    H = taft(2, f, "T_2")
    one_one = tuple(f.one if i == 0 else f.zero for i in range(H.dim ** 2))
    H.braiding = RibbonStructure.build(H, one_one, pivot=H.basis(2))
    return H, "Taft algebra T_2 (Sweedler) over Q(i); R = 1 (x) 1 is a placeholder, pivot g"


def make_double_taft2():
    D, note = _double_of(taft(2, Field(4)), 2, 2, "D(T_2)")
    return D, f"Drinfeld double of T_2 with its canonical R; {note}"


def make_double_taft3():
    D, note = _double_of(taft(3, Field(3)), 3, 3, "D(T_3)")
    return D, f"Drinfeld double of T_3 over Q(zeta3) with its canonical R; {note}"


HOPF: dict[str, Callable] = {
    "z2": make_z2,
    "z3": make_z3,
    "double_z2": make_double_z2,
    "taft2": make_taft2,
    "double_taft2": make_double_taft2,
    "double_taft3": make_double_taft3,
}

MODULAR: dict[str, Callable[[], ModularData]] = {
    "trivial": trivial_data,
    "semion": semion,
    "fibonacci": fibonacci,
    "ising": ising,
    "su2_1": lambda: su2_level(1),
    "su2_2": lambda: su2_level(2),
    "su2_3": lambda: su2_level(3),
}


# simples

def label_simples(H: HopfAlgebra, simples: list[Representation]) -> list[Representation]:
    """Trivial module first as "1", then "1a", "1b", .., "2a", .. by dimension and character."""
    triv = trivial(H)
    first = [S for S in simples if is_isomorphic(S, triv)]
    rest = [S for S in simples if not is_isomorphic(S, triv)]
    rest.sort(key=lambda S: (S.dim, tuple(to_str(x) for x in qcharacter(S))))
    out = [triv.relabel("1")] if first else []
    count: dict[int, int] = {}
    for S in rest:
        k = count.get(S.dim, 0)
        count[S.dim] = k + 1
        out.append(S.relabel(f"{S.dim}{chr(ord('a') + k)}"))
    return out


def hopf_certificates(H: HopfAlgebra, simples: list[Representation]) -> dict:
    rs = H.braiding
    rib = validate_ribbon(H, rs)
    fact = rib.passed and check_factorizable(H, rs)
    Lam = left_integral(H)
    chars = [qcharacter(S) for S in simples]
    reg = qcharacter(regular(H)) if rs is not None else None
    complete = False
    if reg is not None and simples:
        try:
            k0 = decompose_K0(reg, simples, characters=chars)
            complete = all(c > 0 for c in k0.coeffs) and \
                sum(c * S.dim for c, S in zip(k0.coeffs, simples)) == H.dim
        except ValueError:
            complete = False
    return {
        "validate_hopf": validate_hopf(H).passed,
        "validate_ribbon": rib.passed,
        "has_ribbon_element": rs is not None and rs.is_ribbon,
        "factorizable": bool(fact),
        "unimodular": check_unimodular(H),
        "semisimple": bool(H.counit_of(Lam)),
        "dim_center": len(center(H)),
        "dim_class_functions": len(class_functions(H, rs)),
        "simple_dims": [S.dim for S in simples],
        "simples_valid": all(validate_module(S).passed for S in simples),
        "simples_certified": all(simplicity_certificate(S) is not None for S in simples),
        "simple_list_complete": complete,
        "character_rank": character_rank(chars, H.field) if chars else 0,
    }


def build_hopf(entry_id: str) -> dict:
    H, note = HOPF[entry_id]()
    simples = label_simples(H, find_simples(H))
    doc = io.hopf_to_doc(H, sparse=H.dim > SPARSE_ABOVE, id=entry_id, provenance=note)
    doc["simples"] = [{"label": S.label, "dimension": S.dim, "action": io.module_to_doc(S)["action"]}
                      for S in simples]
    doc["certificates"] = hopf_certificates(H, simples)
    return doc


def modular_certificates(md: ModularData) -> dict:
    return {"validate_modular": validate_modular(md).passed, "rank": md.rank}


def build_modular(entry_id: str) -> dict:
    md = MODULAR[entry_id]()
    doc = io.modulardata_to_doc(md)
    doc["id"] = entry_id
    doc["provenance"] = "standard modular data; T includes the central-charge phase exp(-2 pi i c / 24)"
    doc["certificates"] = modular_certificates(md)
    return doc


def build(entry_id: str) -> dict:
    if entry_id in HOPF:
        return build_hopf(entry_id)
    if entry_id in MODULAR:
        return build_modular(entry_id)
    raise KeyError(entry_id)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="regenerate catalog JSON")
    ap.add_argument("--only", nargs="*", default=None)
    args = ap.parse_args(argv)
    DATA.mkdir(exist_ok=True)
    for eid in args.only or [*HOPF, *MODULAR]:
        io.write(build(eid), DATA / f"{eid}.json")
        print("wrote", eid)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
