from hypothesis import given, strategies as st

from peff.collections import Arrow, Product, finite
from peff.doctrine import (beck_chevalley, bi_entails, bottom, check_entailment, entailment_tri, exists_along,
                           imp, join, meet, search_entailment, top)
from peff.families import explicit_family
from peff.pca import prog, table_code
from peff.tri import IN, OUT

A = finite([0, 1, 2])
fibres = st.fixed_dictionaries({x: st.lists(st.integers(0, 3), max_size=2, unique=True) for x in A.support})


def prop(d):
    return explicit_family(A, d)


def inhabited(P, x):
    return bool(P.fibre(x))


@given(fibres, fibres)
def test_search_matches_pointwise_oracle(p, q):
    # over this finite support, P ⊑ Q is realizable iff every inhabited P-fibre has an inhabited Q-fibre
    P, Q = prop(p), prop(q)
    oracle = all(q[x] or not p[x] for x in A.support)
    assert (search_entailment(P, Q) is not None) == oracle


@given(fibres, fibres)
def test_meet_and_join_projections(p, q):
    P, Q = prop(p), prop(q)
    assert check_entailment(meet(P, Q), P, prog(r"\x y. p1 y"))
    assert check_entailment(meet(P, Q), Q, prog(r"\x y. p2 y"))
    assert check_entailment(P, join(P, Q), prog(r"\x y. pair 0 y"))
    assert check_entailment(Q, join(P, Q), prog(r"\x y. pair 1 y"))


@given(fibres, fibres)
def test_modus_ponens(p, q):
    P, Q = prop(p), prop(q)
    assert check_entailment(meet(imp(P, Q), P), Q, prog(r"\x y. (p1 y) (p2 y)"))


@given(fibres)
def test_top_and_bottom(p):
    P = prop(p)
    assert check_entailment(bottom(A), P, prog(r"\x y. y"))
    assert check_entailment(P, top(A), prog(r"\x y. 0"))


def test_wrong_realizer_is_rejected():
    P = prop({0: [1], 1: [], 2: []})
    Q = prop({0: [2], 1: [], 2: []})
    assert entailment_tri(P, Q, prog(r"\x y. y")) is OUT
    assert entailment_tri(P, Q, prog(r"\x y. 2")) is IN


def test_bi_entailment_of_meet_commutation():
    P, Q = prop({0: [1], 1: [2], 2: []}), prop({0: [3], 1: [], 2: [0]})
    assert bi_entails(meet(P, Q), meet(Q, P))


def test_exists_along_projection():
    B = finite([0, 1])
    AB = Product(A, B)
    P = explicit_family(AB.obj, {z: [0] for z in AB.obj.support if z % 3 == 0})
    E = exists_along(AB.p1, P)
    for x in A.support:
        witnesses = [z for z in AB.obj.support if z % 3 == 0 and AB.p1(z) == x]
        assert bool(E.fibre(x)) == bool(witnesses)


def test_beck_chevalley_on_reindexing():
    B, C = finite([0, 1]), finite([5, 6])
    AB = Product(A, B).obj
    P = explicit_family(AB, {z: [1] for z in AB.support if z % 2})
    f = Arrow(table_code({5: 1, 6: 2}, 0), C, A)
    assert all(v is not None for v in beck_chevalley(f, B, P).values())
