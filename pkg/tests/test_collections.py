import pytest
from hypothesis import given, strategies as st

from peff import config
from peff.collections import (Arrow, Coproduct, Equalizer, ListObject, Product, WeakExponential, arrows_equal,
                              bang, compose, finite, identity, initial, is_mono, nat, pullback, terminal)
from peff.errors import DomainMismatch, PreconditionFailed
from peff.pca import prog, table_code
from peff.pca.coding import encode_list, pair
from peff.tri import IN, OUT

values = st.lists(st.integers(0, 9), min_size=1, max_size=5, unique=True)


def table_arrow(A, B, data):
    mapping = {x: data.draw(st.sampled_from(B.support)) for x in A.support}
    return Arrow(table_code(mapping, B.support[0]), A, B), mapping


@given(values, values, st.data())
def test_product_mediator_is_unique(xs, ys, data):
    A, B, C = finite(xs), finite(ys), finite([0, 1, 2])
    f, fm = table_arrow(C, A, data)
    g, gm = table_arrow(C, B, data)
    P = Product(A, B)
    m = P.mediator(f, g)
    assert m.check() is IN
    assert arrows_equal(compose(P.p1, m), f) and arrows_equal(compose(P.p2, m), g)
    # any arrow with the same projections agrees with the mediator on the support
    other = Arrow(table_code({c: pair(fm[c], gm[c]) for c in C.support}, 0), C, P.obj)
    assert arrows_equal(other, m)


@given(values, st.data())
def test_equalizer_support_is_the_agreement_set(xs, data):
    A, B = finite(xs), finite([0, 1])
    f, fm = table_arrow(A, B, data)
    g, gm = table_arrow(A, B, data)
    E = Equalizer(f, g)
    assert sorted(E.obj.support) == sorted(x for x in xs if fm[x] == gm[x])
    assert is_mono(E.inclusion)


def test_equalizer_mediator_requires_equalizing():
    A = finite([0, 1])
    E = Equalizer(identity(A), Arrow(prog(r"\x. 0"), A, A))
    h = Arrow(prog(r"\x. 1"), terminal(), A)
    with pytest.raises(PreconditionFailed):
        E.mediator(h)
    k = Arrow(prog(r"\x. 0"), terminal(), A)
    assert arrows_equal(compose(E.inclusion, E.mediator(k)), k)


@given(values, values, st.data())
def test_coproduct_copair(xs, ys, data):
    A, B, C = finite(xs), finite(ys), finite([5, 6])
    f, _ = table_arrow(A, C, data)
    g, _ = table_arrow(B, C, data)
    S = Coproduct(A, B)
    k = S.copair(f, g)
    assert k.check() is IN
    assert arrows_equal(compose(k, S.j1), f) and arrows_equal(compose(k, S.j2), g)
    assert S.obj.decide(pair(2, xs[0])) is OUT


def test_copair_needs_common_codomain():
    A = finite([0])
    with pytest.raises(DomainMismatch):
        Coproduct(A, A).copair(identity(A), Arrow(prog(r"\x. 0"), A, terminal()))


@given(st.lists(st.integers(0, 2), max_size=3))
def test_list_recursion_sums(xs):
    A = finite([0, 1, 2])
    L = ListObject(A, 3)
    N = nat(16)
    NA = Product(N, A)
    f = Arrow(prog(r"\u. 0"), terminal(), N)
    g = Arrow(prog(r"\z. rec (p1 z) (\k acc. succ acc) (p2 z)"), NA.obj, N)
    h = L.rec(f, g)
    assert h(pair(0, encode_list(xs))) == sum(xs)


def test_list_object_membership():
    L = ListObject(finite([1, 2]), 2)
    assert L.obj.decide(encode_list([1, 2, 2, 1])) is IN
    assert L.obj.decide(encode_list([1, 3])) is OUT
    assert len(L.obj.support) == 1 + 2 + 4


def test_weak_exponential_curry_existence():
    A, B, C = finite([0, 1]), finite([3, 4]), finite([0, 1, 2])
    CA = Product(C, A)
    f = Arrow(table_code({z: 3 + (z % 2) for z in CA.obj.support}, 3), CA.obj, B)
    W = WeakExponential(A, B)
    cur = W.curry(f, C)
    assert cur.check() is IN
    ev_cur = Arrow(prog(r"\z. (c (p1 z)) (p2 z)", c=cur.code), CA.obj, B)
    assert arrows_equal(ev_cur, f)


@given(values, st.data())
def test_is_mono_agrees_with_injectivity(xs, data):
    A, B = finite(xs), finite([0, 1, 2, 3])
    f, fm = table_arrow(A, B, data)
    assert is_mono(f) == (len(set(fm.values())) == len(xs))


def test_terminal_initial_and_bang():
    A = finite([2, 3])
    assert bang(A).check() is IN
    assert initial().support == ()
    assert terminal().decide(0) is IN and terminal().decide(1) is OUT


def test_pullback_legs_commute():
    A, B, C = finite([0, 1, 2]), finite([3, 4]), finite([0, 1])
    f = Arrow(prog(r"\x. ite x (\u. 0) (\u. 1) 0"), A, C)
    g = Arrow(prog(r"\x. eq0 x 3"), B, C)
    E, l, r = pullback(f, g)
    assert arrows_equal(compose(f, l), compose(g, r))
    assert len(E.obj.support) == 1 * 1 + 2 * 1


def test_nat_follows_config():
    with config.using(nat_size=5):
        assert list(nat().support) == [0, 1, 2, 3, 4]
