import json

import pytest

from modcalc.certificate import Certificate, recheck_certificate, relation_holds
from modcalc.classes import canonical_class
from modcalc.curves import CurveClass
from modcalc.errors import SerializationError, StageFailure
from modcalc.maps import Forgetful, MapChain, pullback_chain
from modcalc.pic import B, LAMBDA, ModuliSignature, ParamValue, Psi
from modcalc.rigidity import certify_kodaira_zero_m1010, extremal_face_check


@pytest.fixture(scope="module")
def doc():
    return json.loads(certify_kodaira_zero_m1010().dumps())


def stage(doc, name):
    return next(s for s in doc["stages"] if s["name"] == name)


@pytest.mark.parametrize(
    "value,rel,ok",
    [
        (ParamValue(-1), "<0", True),
        (ParamValue(0), "<0", False),
        (ParamValue(0), "<=0", True),
        (2 * B - 12, ">=0", True),
        (2 * B - 12, ">0", False),
        (13 - 2 * B, "<0", False),
        (12 - 2 * B, "<=0", True),
        (B, ">0", True),
    ],
)
def test_relation_holds(value, rel, ok):
    assert relation_holds(value, rel) is ok


def test_relation_equality_and_unknown():
    assert relation_holds(ParamValue(3), "=", 3)
    assert not relation_holds(B, "=", 6)
    with pytest.raises(ValueError):
        relation_holds(ParamValue(1), "!=")


def test_kodaira_certificate_rechecks_from_json(doc):
    report = recheck_certificate(doc)
    assert set(report) == {"decomposition", "peeling", "domination", "m10-rigidity", "assumptions"}
    assert all(not fails for fails in report.values())
    assert doc["pipeline"] == "m10-10-kodaira-zero"
    assert len(doc["assumptions"]) == 9


def test_face_certificate_rechecks():
    cert = extremal_face_check().certificate
    assert all(not f for f in recheck_certificate(cert.dumps()).values())


def test_tampered_object_is_caught(doc):
    bad = json.loads(json.dumps(doc))
    stage(bad, "m10-rigidity")["objects"]["Kbar"]["coeffs"]["lambda"] = "8/1"
    report = recheck_certificate(bad)
    assert report["m10-rigidity"]
    assert not report["peeling"]


def test_tampered_recorded_value_is_caught(doc):
    bad = json.loads(json.dumps(doc))
    check = next(c for c in stage(bad, "m10-rigidity")["checks"] if c["kind"] == "pair")
    check["value"] = "0/1"
    assert recheck_certificate(bad)["m10-rigidity"]


def test_missing_object_and_unverified_stage(doc):
    bad = json.loads(json.dumps(doc))
    st = stage(bad, "domination")
    del st["objects"]["A"]
    st["verified"] = False
    fails = recheck_certificate(bad)["domination"]
    assert any("missing object" in f for f in fails)
    assert "stage not marked verified" in fails


def test_document_without_stages():
    with pytest.raises(SerializationError):
        recheck_certificate({"pipeline": "x"})


def test_failed_check_raises_stage_failure():
    cert = Certificate("demo", "nothing")
    sig = ModuliSignature.standard(3, 1)
    st = cert.stage("demo-stage")
    st.put("K", canonical_class(sig))
    st.put("C", CurveClass(sig, {LAMBDA: 1}))
    st.check_pair("C", "K", "=", 13)
    with pytest.raises(StageFailure) as err:
        st.check_pair("C", "K", "<0")
    assert err.value.stage == "demo-stage"
    assert not cert.verified


def test_stage_records_pullbacks():
    cert = Certificate("demo", "nothing")
    st = cert.stage("pull")
    chain = MapChain([Forgetful(2)])
    st.put("K", canonical_class(ModuliSignature.standard(3, 1)))
    st.put("pi*K", pullback_chain(st.objects["K"], chain))
    st.check_pullback("K", chain, "pi*K")
    st.finish()
    assert cert.summary() == "stages 1/1 verified"
    assert all(not f for f in recheck_certificate(cert.dumps()).values())
    assert Psi(2) not in st.objects["pi*K"].keys()
