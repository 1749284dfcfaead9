import pytest
from hypothesis import given, strategies as st

from peff.collections import nat
from peff.errors import PreconditionFailed, TermSyntaxError, TypeMismatch
from peff.lang import (Context, arithmetic_signature, bridge, choice_extract, ct_realizer, ac_realizer,
                       ha_realize, interpret, is_valid, parse, parse_ha, relation, show, validity,
                       verify_validity)
from peff.pca import prog
from peff.pca.coding import pair, unpair

SIG = arithmetic_signature()


def ctx(*names):
    return Context([(n, nat()) for n in names])


def test_parse_and_show_roundtrip():
    text = "forall x:N. exists y:N. Eq(N, y, succ(x))"
    assert show(parse(text, Context(), SIG)) == text


@pytest.mark.parametrize("text", ["Eq(N, x, )", "forall x N. Bot", "Eq(Q, x, x)", "frob(x)", "Eq(N, x, x) &&"])
def test_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse(text, ctx("x"), SIG)


def test_type_errors_name_the_variable():
    with pytest.raises(TypeMismatch) as e:
        parse("Eq(N, z, 0)", ctx("x"), SIG)
    assert e.value.variable == "z"


@given(st.integers(0, 7), st.integers(0, 7))
def test_eq_realizers(x, y):
    P = interpret(parse("Eq(N, x, y)", ctx("x", "y"), SIG), ctx("x", "y"))
    assert bool(P.fibre(pair(x, y))) == (x == y)
    if x == y:
        assert P.decide(pair(x, y), pair(x, 0))


@given(st.integers(0, 7), st.integers(0, 7))
def test_or_and_shapes(x, y):
    c = ctx("x", "y")
    P = interpret(parse("Eq(N, x, y) || Eq(N, x, succ(y))", c, SIG), c)
    expect = (x == y) or (x == y + 1)
    assert bool(P.fibre(pair(x, y))) == expect
    for w in P.fibre(pair(x, y)):
        tag, _ = unpair(w)
        assert (tag == 0 and x == y) or (tag == 1 and x == y + 1)


@pytest.mark.parametrize("text, valid", [
    ("Eq(N, plus(x, y), plus(y, x))", True),
    ("Eq(N, x, y) -> Eq(N, y, x)", True),
    ("Eq(N, x, succ(x))", False),
])
def test_validity(text, valid):
    c = ctx("x", "y")
    assert is_valid(parse(text, c, SIG), c) == valid


def test_validity_witness_verifies():
    c = ctx("x")
    phi = parse("exists y:N. Eq(N, y, x)", c, SIG)
    w = validity(phi, c)
    assert verify_validity(phi, c, w.realizer)
    assert not verify_validity(phi, c, prog(r"\g u. pair 99 0"))


RELATIONS = {
    "succ": ("Eq(N, y, succ(x))", prog(r"\g u. \x. pair (succ x) (pair (succ x) 0)")),
    "id": ("Eq(N, y, x)", prog(r"\g u. \x. pair x (pair x 0)")),
    "pred": ("Eq(N, x, succ(y)) || Eq(N, x, 0)",
             prog(r"\g u. \x. pair (pred x) (ite x (\v. pair 1 (pair x 0)) (\v. pair 0 (pair x 0)) 0)")),
}


@pytest.mark.parametrize("key", sorted(RELATIONS))
def test_ct_and_ac(key):
    N = nat()
    R = relation(RELATIONS[key][0], N, N, signature=SIG)
    assert ct_realizer(R, N).check()
    assert ac_realizer(R, N, N).check()


@pytest.mark.parametrize("key", sorted(RELATIONS))
def test_choice_extraction(key):
    N = nat()
    text, witness = RELATIONS[key]
    R = relation(text, N, N, signature=SIG)
    f = choice_extract(Context(), N, N, R, witness)
    assert all(R.prop.fibre(pair(x, f(x))) for x in range(6))
    if key == "succ":
        assert f(3) == 4


def test_choice_rejects_bad_witness():
    N = nat()
    R = relation("Eq(N, y, succ(x))", N, N, signature=SIG)
    with pytest.raises(PreconditionFailed):
        choice_extract(Context(), N, N, R, prog(r"\g u. \x. pair x (pair x 0)"))


def test_ha_bridge():
    phi = parse_ha("forall x. exists y. y = succ(x)")
    n = int(prog(r"\x. pair (succ x) 0"))
    assert ha_realize(n, phi)
    w = bridge(n, phi)
    assert w.realizer is not None
    with pytest.raises(PreconditionFailed):
        bridge(int(prog(r"\x. pair x 0")), phi)
