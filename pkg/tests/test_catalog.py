import pytest

from logcardy import catalog, io
from logcardy.catalog.build import HOPF, MODULAR, build, hopf_certificates
from logcardy.hopf import check_factorizable, validate_hopf
from logcardy.modulardata import ModularData, validate_modular
from logcardy.rep import is_simple, validate_module

ALL = sorted([*HOPF, *MODULAR])


def test_list_covers_builders():
    ids = [eid for eid, _ in catalog.list()]
    assert ids == ALL
    assert dict(catalog.list())["fibonacci"] == "modulardata"
    assert dict(catalog.list())["double_taft2"] == "hopf"


def test_unknown_id():
    with pytest.raises(catalog.UnknownId):
        catalog.load("no_such_entry")


@pytest.mark.parametrize("eid", [e for e in ALL if e != "double_taft3"])
def test_frozen_document_matches_fresh_build(eid):
    assert io.dump(build(eid)) == io.dump(catalog.document(eid))


@pytest.mark.slow
def test_frozen_double_taft3_matches_fresh_build():
    assert io.dump(build("double_taft3")) == io.dump(catalog.document("double_taft3"))


@pytest.mark.parametrize("eid", sorted(HOPF))
def test_hopf_entries_pass_validators(eid):
    H = catalog.load(eid)
    assert validate_hopf(H).passed
    assert H.catalog_id == eid
    for S in catalog.simples(eid):
        assert validate_module(S).passed and is_simple(S)


@pytest.mark.parametrize("eid", sorted(HOPF))
def test_certificates_recomputed(eid):
    H = catalog.load(eid)
    assert hopf_certificates(H, list(catalog.simples(eid))) == catalog.document(eid)["certificates"]


@pytest.mark.parametrize("eid", sorted(MODULAR))
def test_modular_entries_pass_validators(eid):
    d = catalog.load(eid)
    assert isinstance(d, ModularData) and validate_modular(d).passed


def test_spec_examples():
    assert check_factorizable(catalog.load("double_z2"))
    assert validate_modular(catalog.load("fibonacci")).passed
    assert not check_factorizable(catalog.load("taft2"))


def test_flagship_certificates():
    c = catalog.document("double_taft2")["certificates"]
    assert c["factorizable"] and not c["semisimple"] and not c["has_ribbon_element"]
    assert c["simple_dims"] == [1, 1, 2, 2] and c["character_rank"] == 4 < c["dim_class_functions"] == 5
    c = catalog.document("double_taft3")["certificates"]
    assert c["factorizable"] and c["has_ribbon_element"] and not c["semisimple"]
    assert c["simple_list_complete"] and c["character_rank"] == 9 < c["dim_class_functions"] == 12


def test_tampered_certificate_detected(monkeypatch):
    doc = catalog.document("z2")
    doc["certificates"]["validate_hopf"] = False
    monkeypatch.setattr(catalog, "document", lambda eid: doc)
    with pytest.raises(catalog.CertificateMismatch):
        catalog.load.__wrapped__("z2")
