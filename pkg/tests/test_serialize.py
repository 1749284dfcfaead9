import json

import pytest
from hypothesis import given, strategies as st

from peff import IN, OUT
from peff import collections as col
from peff.doctrine import EntailmentWitness, search_entailment, top
from peff.errors import SchemaError
from peff.families import constant_family, explicit_family
from peff.pca import prog
from peff.quotient import delta, omega, parity_nat, q_coproduct, q_identity, q_list, q_product, qarrow
from peff.serialize import dumps, from_document, loads, to_document
from peff.universe import N1, TauFamily


def catalog():
    N = col.nat(8)
    two, three = col.finite([0, 1]), col.finite([2, 3, 5])
    P = parity_nat(N)
    ex = explicit_family(two, {0: [1, 2], 1: [3]}, name="ex")
    w = search_entailment(ex, top(two))
    return {
        "nat": N, "finite": three, "product": col.Product(two, three).obj,
        "coproduct": col.Coproduct(two, col.terminal()).obj, "list": col.ListObject(two, 2).obj,
        "succ": col.nat_succ(N), "explicit": ex, "constant": constant_family(N, two),
        "tau": TauFamily(N, prog(r"\x. n", n=N1), name="top"), "witness": w,
        "parity": P, "delta": delta(two), "omega": omega(),
        "qarrow": qarrow(prog(r"\x. x"), P, P), "qid": q_identity(P),
        "qproduct": q_product(P, delta(two)).obj, "qcoproduct": q_coproduct(P, P).obj,
        "qlist": q_list(delta(two), 2).obj,
    }


CAT = catalog()


@pytest.mark.parametrize("name", sorted(CAT))
def test_document_roundtrip(name):
    d = to_document(CAT[name])
    back = from_document(json.loads(json.dumps(d)))
    assert to_document(back) == d


@pytest.mark.parametrize("name", ["explicit", "parity", "qcoproduct", "qlist", "qarrow"])
def test_roundtrip_validates(name):
    back = loads(dumps(CAT[name]))
    if hasattr(back, "validate"):
        back.validate()
    if isinstance(back, EntailmentWitness):
        assert back.check()


def test_roundtrip_preserves_membership():
    ex = loads(dumps(CAT["explicit"]))
    assert ex.decide(0, 2) is IN and ex.decide(1, 2) is OUT
    prod = loads(dumps(CAT["product"]))
    assert prod.support == CAT["product"].support


def test_bad_schema():
    d = to_document(CAT["nat"])
    d["schema"] = "peff/0"
    with pytest.raises(SchemaError) as e:
        from_document(d)
    assert e.value.path == "$.schema"


def test_bad_kind_path():
    d = to_document(CAT["nat"])
    d["value"]["kind"] = "mystery"
    with pytest.raises(SchemaError) as e:
        from_document(d)
    assert e.value.path.startswith("$.value")


def test_invalid_json():
    with pytest.raises(SchemaError):
        loads("{not json")


def test_bad_code_rejected():
    d = to_document(CAT["succ"])
    d["value"]["code"] = -3
    with pytest.raises(SchemaError):
        from_document(d)


def test_opaque_unserializable():
    C = col.Collection("hidden", lambda x, fuel: IN, [0])
    with pytest.raises(SchemaError):
        to_document(C)
    with pytest.raises(SchemaError):
        to_document(col.Product(C, col.terminal()).obj)


@given(st.lists(st.integers(0, 10**6), max_size=8, unique=True))
def test_finite_roundtrip(values):
    C = col.finite(values)
    back = loads(dumps(C))
    assert sorted(back.support) == sorted(C.support)
    assert all(v in back for v in values)
