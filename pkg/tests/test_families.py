from hypothesis import given, strategies as st

from peff.collections import Arrow, finite
from peff.families import (FamilyMap, TotalSigma, WeakPi, explicit_family, family_maps_equal, fm_compose,
                           sigma_along, sigma_transpose, sigma_untranspose, substitute, substitute_map,
                           terminal_family)
from peff.pca import prog, table_code
from peff.pca.coding import pair
from peff.tri import IN


def random_setup(data):
    A, B = finite([0, 1, 2]), finite([5, 6])
    mapping = {x: data.draw(st.sampled_from(B.support)) for x in A.support}
    f = Arrow(table_code(mapping, 5), A, B)
    fibres = {x: data.draw(st.lists(st.integers(0, 4), min_size=1, max_size=2, unique=True)) for x in A.support}
    return f, mapping, explicit_family(A, fibres), fibres


@given(st.data())
def test_sigma_fibres_are_disjoint_unions(data):
    f, mapping, C, fibres = random_setup(data)
    S = sigma_along(f, C)
    for y in f.cod.support:
        expected = {pair(x, c) for x in f.dom.support if mapping[x] == y for c in fibres[x]}
        assert set(S.fibre(y)) == expected


@given(st.data())
def test_substitution_fibres(data):
    f, mapping, _, _ = random_setup(data)
    D = explicit_family(f.cod, {5: [1], 6: [2, 3]})
    fD = substitute(f, D)
    assert all(set(fD.fibre(x)) == set(D.fibre(mapping[x])) for x in f.dom.support)


@given(st.data())
def test_transposition_is_a_bijection(data):
    f, _, C, _ = random_setup(data)
    S = sigma_along(f, C)
    D = terminal_family(f.cod)
    phi = FamilyMap(prog(r"\y z. 0"), S, D)
    psi = sigma_transpose(f, phi, C, D)
    assert psi.check() is IN
    assert family_maps_equal(sigma_untranspose(f, psi, C, D), phi)
    ident = FamilyMap(prog(r"\y z. z"), S, S)
    back = sigma_untranspose(f, sigma_transpose(f, ident, C, S), C, S)
    assert family_maps_equal(back, ident)


@given(st.data())
def test_weak_pi_triangle(data):
    f, _, C, fibres = random_setup(data)
    W = WeakPi(f, C)
    D = terminal_family(f.cod)
    fD = substitute(f, D)
    g = FamilyMap(prog(r"\a d. t a", t=table_code({x: fibres[x][0] for x in fibres}, 0)), fD, C)
    gt = W.transpose(g, D)
    assert gt.check() is IN
    composite = fm_compose(W.ev, substitute_map(f, gt, fD, substitute(f, W.obj)))
    assert family_maps_equal(composite, g)


def test_total_sigma_projection():
    A = finite([0, 1])
    B = explicit_family(A, {0: [7], 1: [8, 9]})
    T = TotalSigma(A, B)
    assert sorted(T.obj.support) == sorted([pair(0, 7), pair(1, 8), pair(1, 9)])
    assert T.p1.check() is IN
