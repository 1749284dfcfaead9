import pytest
from hypothesis import given, strategies as st

from peff.collections import finite
from peff.errors import NotASetCode, TermSyntaxError
from peff.families import FamilyMap
from peff.pca import prog
from peff.pca.coding import pair
from peff.tri import IN, OUT
from peff.universe import (N0, N1, TauFamily, check_coherence, check_member, check_nonmember, check_set,
                           const_fn, enumerate_members, iso_roundtrips, list_code, parse_code, pi_code,
                           plus_code, set_structure, show_code, sigma_code)
from universe_oracle import generate

CODES, ORACLE = generate(2)


@pytest.mark.parametrize("c", CODES[:80])
def test_checker_agrees_with_brute_force(c):
    o = ORACLE
    is_set = o.is_set(c)
    assert (check_set(c) is IN) == is_set
    probes = set(range(16)) | set(o.ext(c) or () if is_set else ())
    for n in probes:
        m = o.member(n, c)
        assert (check_member(n, c) is IN) == m
        assert (check_nonmember(n, c) is IN) == (is_set and not m)


@given(st.sampled_from(CODES), st.integers(0, 200))
def test_member_and_nonmember_are_exclusive(c, n):
    if check_set(c) is IN:
        assert {check_member(n, c), check_nonmember(n, c)} == {IN, OUT}
    else:
        assert check_member(n, c) is not IN and check_nonmember(n, c) is not IN


def test_sample_codes_are_coherent():
    for c in [N0, N1, plus_code(N1, N1), sigma_code(N1, const_fn(N1)), list_code(N1)]:
        assert check_coherence(c) is IN


def test_pi_members_are_total_functions():
    two = plus_code(N1, N1)
    c = pi_code(two, const_fn(N1))
    members = enumerate_members(c)
    assert members and all(check_member(m, c) is IN for m in members)
    # the constant zero function is a member, a wrong value is refuted, divergence is undecided
    assert check_member(int(prog(r"\x. 0")), c) is IN
    assert check_nonmember(int(prog(r"\x. 5")), c) is IN
    loop = int(prog(r"\x. fix (\f y. f y) x"))
    assert check_member(loop, c) is not IN and check_nonmember(loop, c) is not IN


@pytest.mark.parametrize("text, expect", [
    ("(n0)", N0), ("(n1)", N1), ("(plus (n1) (n1))", plus_code(N1, N1)), ("(list (n0))", list_code(N0)),
])
def test_code_syntax(text, expect):
    assert parse_code(text) == expect
    assert parse_code(show_code(expect)) == expect


def test_sigma_shape_prints_and_parses():
    c = parse_code("(sigma (n1) (lam (n1)))")
    assert show_code(c) == "(sigma (n1) (lam (n1)))"
    assert enumerate_members(c) == [0]


@pytest.mark.parametrize("text", ["(sigma (n1))", "(frob)", "(n1", "(n1) (n0)"])
def test_code_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse_code(text)


def test_tau_family_requires_set_codes():
    A = finite([0, 1])
    with pytest.raises(NotASetCode):
        TauFamily(A, prog(r"\x. c", c=pair(9, 0)))
    T = TauFamily(A, prog(r"\x. ite x (\u. n1) (\u. n0) 0", n1=N1, n0=N0))
    assert T.fibre(0) == (0,) and T.fibre(1) == ()


@pytest.mark.parametrize("name", ["terminal", "initial", "product", "coproduct", "list", "exponential"])
def test_set_constructions_are_isomorphisms(name):
    A = finite([0, 1, 2])
    two = plus_code(N1, N1)
    B = TauFamily(A, prog(r"\x. t", t=two))
    C = TauFamily(A, prog(r"\x. ite (eq0 x 1) (\u. n1) (\u. t) 0", n1=N1, t=two))
    S = set_structure(A)
    args = {"terminal": (), "initial": (), "list": (B,)}.get(name, (B, C))
    assert all(iso_roundtrips(*getattr(S, name)(*args)).values())


def test_set_equalizer_identifies_realizers():
    # the identity-type fibre accepts every realizer, so only the comparison side roundtrips
    A = finite([0, 1])
    two = plus_code(N1, N1)
    B = TauFamily(A, prog(r"\x. t", t=two))
    j = FamilyMap(prog(r"\x y. y"), B, B)
    k = FamilyMap(prog(r"\x y. 0"), B, B)
    checks = iso_roundtrips(*set_structure(A).equalizer(j, k))
    assert checks["there_lands"] and checks["back_lands"] and checks["other_roundtrip"]
    assert not checks["tau_roundtrip"]
