import pytest
from hypothesis import given, strategies as st

from peff import config
from peff.errors import TermSyntaxError
from peff.pca import (decode, decode_list, encode, encode_list, kleene_apply, list_component,
                      list_concat, list_length, pair, parse_term, prog, table_code, unpair)
from peff.pca.coding import tuple_code

nats = st.integers(min_value=0, max_value=10**6)
small = st.integers(min_value=0, max_value=50)


def value(code, *args):
    r = kleene_apply(code, list(args))
    assert r.ok, r
    return r.value


@given(nats, nats)
def test_pair_unpair_inverse(x, y):
    assert unpair(pair(x, y)) == (x, y)


@given(nats)
def test_unpair_pair_inverse(z):
    assert pair(*unpair(z)) == z


def test_pair_is_cantor():
    # closed form s(s+1)/2 + y, checked against counting along diagonals
    z = 0
    for s in range(30):
        for y in range(s + 1):
            assert pair(s - y, y) == z
            z += 1


@given(st.lists(small, max_size=6))
def test_list_codec_roundtrip(xs):
    code = encode_list(xs)
    assert decode_list(code) == xs
    assert list_length(code) == len(xs)
    assert all(list_component(code, j) == x for j, x in enumerate(xs))


def test_list_codec_is_a_bijection_on_prefix():
    assert [encode_list(decode_list(n)) for n in range(2000)] == list(range(2000))
    assert list_concat(0, 0) == 1 and encode_list([]) == 0


@given(small, small)
def test_builtins_match_python(a, b):
    assert value(prog("succ"), a) == a + 1
    assert value(prog("pred"), a) == max(a - 1, 0)
    assert value(prog("pair"), a, b) == pair(a, b)
    assert value(prog("p1"), pair(a, b)) == a
    assert value(prog("p2"), pair(a, b)) == b
    assert value(prog("eq0"), a, b) == (0 if a == b else 1)


@given(st.integers(0, 3), small, small)
def test_ite_selects_first_branch_on_zero(c, a, b):
    assert value(prog("ite"), c, a, b) == (a if c == 0 else b)


@given(small, small)
def test_rec_computes_addition(a, b):
    assert value(prog(r"\a b. rec a (\k acc. succ acc) b"), a, b) == a + b


@given(st.lists(small, max_size=4), st.integers(0, 5))
def test_lh_and_comp(xs, j):
    code = encode_list(xs)
    assert value(prog("lh"), code) == len(xs)
    assert value(prog("comp"), code, j) == (pair(0, xs[j]) if j < len(xs) else pair(1, 0))


@given(small)
def test_beta_law(a):
    body = "pair x (succ x)"
    assert value(prog(rf"(\x. {body}) {a}")) == value(prog(body.replace("x", str(a))))


@given(st.dictionaries(small, small, min_size=1, max_size=6), small)
def test_table_code_tabulates(table, probe):
    code = table_code(table, 99)
    assert value(code, probe) == table.get(probe, 99)


def test_term_codec_roundtrip():
    for text in [r"\x. x", r"\x y. x", r"\f x. f (f x)", "succ 3", r"\l a. succ (pair l a)"]:
        t = parse_term(text)
        assert decode(encode(t)) == t


def test_tuple_code_nests_left():
    assert tuple_code(1, 2, 3) == pair(pair(1, 2), 3)


def test_fuel_exhaustion_is_not_a_value():
    loop = prog(r"fix (\f x. f x) 0")
    r = kleene_apply(loop, [], fuel=500)
    assert r.exhausted and not r.ok
    with config.using(fuel=3):
        assert kleene_apply(prog(r"\x. succ (succ (succ (succ x)))"), [1]).exhausted


def test_stuck_application():
    r = kleene_apply(prog("p1"), [])
    assert not r.exhausted


@pytest.mark.parametrize("text, at", [(r"(\x. x", 6), (r"\. x", 1), ("x $ y", 2)])
def test_syntax_errors_carry_position(text, at):
    with pytest.raises(TermSyntaxError) as e:
        prog(text)
    assert e.value.position == at


def test_unbound_variable_rejected():
    with pytest.raises(TermSyntaxError):
        prog(r"\x. y")
