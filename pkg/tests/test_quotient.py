import pytest
from hypothesis import given, strategies as st

from peff.collections import Product, finite, nat
from peff.doctrine import bi_entails
from peff.errors import InvalidAction, InvalidEquivalence, NotSaturated, NotSmall
from peff.families import Family, _guarded, constant_family as const_family, explicit_family
from peff.lang import arithmetic_signature, relation
from peff.pca import prog
from peff.pca.coding import pair, unpair
from peff.quotient import (classify, coequalizer_factor, comprehend, delta, effectiveness, is_q_mono, is_saturated,
                           k_faithful, k_functor, k_on_morphisms, k_preserves_equalizer, k_preserves_product,
                           k_preserves_terminal, mk_qobject, omega, omega_naturality, omega_roundtrips,
                           parity_nat, parity_relation, peff_exists, peff_prop_membership, q_compose,
                           q_coproduct, q_equalizer, q_identity, q_image, q_list, q_product, qarrow,
                           qarrows_equal, quotient_of, stable_along_projection, subobject_roundtrip,
                           subst_well_defined, unique_choice)
from peff.quotient.families import (IDENTITY_ACTION, class_count, constant_family, discrete_fibre_relation,
                                    fam_morphism, mk_dep_family)
from peff.tri import Tri
from peff.universe import N0, N1, TauFamily, const_fn, sigma_code

MOD2 = prog(r"\x. rec 0 (\k acc. ite (eq0 acc 0) (\u. 1) (\u. 0) 0) x")


@pytest.fixture
def N():
    return nat()


@pytest.fixture
def P(N):
    return parity_nat(N)


@pytest.fixture
def D2():
    return delta(finite([0, 1]))


def test_laws_and_missing_symmetry(N):
    assert set(parity_nat(N).validate()) >= {"refl", "sym", "trans"}
    # x R y iff y = x + 1 is neither reflexive nor symmetric
    AA = Product(N, N).obj
    step = Family(AA, _guarded(AA, lambda z, w, fuel: Tri.of(w == 0 and unpair(z)[1] == unpair(z)[0] + 1)),
                  lambda z: [0] if unpair(z)[1] == unpair(z)[0] + 1 else [], "step", exact=True)
    with pytest.raises(InvalidEquivalence) as e:
        mk_qobject(N, step)
    assert e.value.law == "refl"


def test_broken_witness_is_replaced_by_search_or_named(N):
    X = mk_qobject(N, parity_relation(N), {"sym": prog(r"\z w. 7")})
    assert X.witnesses["sym"] != prog(r"\z w. 7")


@given(st.integers(0, 7), st.integers(0, 7))
def test_parity_relation_oracle(x, y):
    assert parity_nat().relates(x, y) == ((x - y) % 2 == 0)


def test_qarrow_well_definedness(P, D2, N):
    f = qarrow(MOD2, P, D2)
    assert [f(x) for x in range(4)] == [0, 1, 0, 1]
    with pytest.raises(InvalidEquivalence) as e:
        qarrow(prog(r"\x. x"), P, delta(N))
    assert e.value.law == "ext"


def test_qarrow_equality_is_up_to_the_relation(P):
    f = qarrow(prog("succ"), P, P)
    g = qarrow(prog(r"\x. succ (succ (succ x))"), P, P)
    assert qarrows_equal(f, g)
    assert not qarrows_equal(f, q_identity(P))
    assert qarrows_equal(q_compose(f, f), q_identity(P))


def test_product_of_discrete_is_discrete(N, D2):
    Q = q_product(delta(N), D2).obj
    Dp = delta(Q.carrier)
    assert bi_entails(Q.rel, Dp.rel) is not None


def test_equalizer_and_mono(P, D2):
    f = qarrow(MOD2, P, D2)
    g = qarrow(prog(r"\x. 0"), P, D2)
    E = q_equalizer(f, g)
    assert is_q_mono(E.inclusion)
    # injective on parity classes, unlike a constant
    assert is_q_mono(f) and not is_q_mono(g)


def test_coproduct_disjoint_and_stable(P, D2):
    C = q_coproduct(P, D2)
    assert C.disjoint()
    assert all(C.checks(qarrow(prog(r"\x. 0"), P, D2), qarrow(prog(r"\x. x"), D2, D2)).values())


def test_list_relation_is_pointwise(P):
    L = q_list(P, max_len=3)
    assert L.related([1, 3], [3, 5]) and L.related([0, 1], [2, 7])
    assert not L.related([1, 3], [1, 3, 5]) and not L.related([1], [2])


def test_image_factorization(P, D2):
    assert all(q_image(qarrow(MOD2, P, D2)).checks().values())


def test_effective_quotient(N, D2):
    X = delta(N)
    rho = parity_relation(N)
    Q, can = quotient_of(X, rho)
    assert all(effectiveness(X, rho, Q, can).values())
    h = qarrow(MOD2, X, D2)
    assert coequalizer_factor(X, rho, Q, h).validate()
    assert stable_along_projection(X, rho, D2)


def test_quotient_needs_saturated_relation(N):
    X = parity_nat(N)
    rho = explicit_family(Product(N, N).obj, {pair(x, x): [0] for x in N.support})
    with pytest.raises(InvalidEquivalence):
        quotient_of(X, rho)


def test_saturation(P, N):
    even = TauFamily(N, prog(r"\x. ite (m x) (\u. n1) (\u. n0) 0", m=MOD2, n1=N1, n0=N0))
    assert is_saturated(even, P)
    is2 = explicit_family(N, {2: [0]})
    with pytest.raises(NotSaturated) as e:
        peff_prop_membership(is2, P)
    x, y = e.value.counterexample
    assert x == 2 and y % 2 == 0 and y != 2


def test_substitution_and_exists(P, D2):
    even = explicit_family(finite([0, 1]), {0: [0]})
    f = qarrow(MOD2, P, D2)
    g = qarrow(prog(r"\x. m (succ (succ x))", m=MOD2), P, D2)
    assert subst_well_defined(f, g, even)
    E = peff_exists(f, explicit_family(P.carrier, {x: [0] for x in P.carrier.support if x % 2}))
    assert bool(E.fibre(1)) and not E.fibre(0)


def test_subobject_roundtrip(P, N):
    even = TauFamily(N, prog(r"\x. ite (m x) (\u. n1) (\u. n0) 0", m=MOD2, n1=N1, n0=N0))
    assert all(subobject_roundtrip(even, P).values())


def test_omega_classification(P, N):
    Om = omega()
    assert Om.validate()
    assert Om.relates(N1, sigma_code(N1, const_fn(N1)))
    top_ = TauFamily(N, prog(r"\x. n", n=N1))
    chi = classify(top_, P, Om)
    assert all(chi(x) == N1 for x in range(4))
    assert all(omega_roundtrips(top_, P, Om).values())
    assert omega_naturality(top_, P, qarrow(prog("succ"), P, P), Om)
    empty = comprehend(qarrow(prog(r"\x. n", n=N0), P, Om))
    assert not any(empty.fibre(x) for x in range(4))


def test_classify_needs_a_small_prop(P, N):
    with pytest.raises(NotSmall):
        classify(explicit_family(N, {x: [0] for x in N.support}), P)


def test_unique_choice(N, D2, P):
    sig = arithmetic_signature()
    succ = relation("Eq(N, y, succ(x))", N, N, signature=sig)
    f = unique_choice(delta(N), delta(N), succ, prog(r"\g u. \x. pair (succ x) (pair (succ x) 0)"))
    assert f(3) == 4 and f.validate()


def families(N, P):
    Fc = constant_family(P, finite([0, 1]), name="const2")
    B = Family(N, _guarded(N, lambda a, b, fuel: Tri.of(b == a % 2)), lambda a: [a % 2], "mod2", exact=True)
    Fp = mk_dep_family(P, B, discrete_fibre_relation(B), IDENTITY_ACTION, name="parity-fibre")
    return Fc, Fp


def test_invalid_action_names_law_2(N):
    AA = Product(N, N).obj
    same = lambda z: (unpair(z)[0] - unpair(z)[1]) % 2 == 0  # noqa: E731
    rel = Family(AA, _guarded(AA, lambda z, w, fuel: Tri.of(w in (0, 1) and same(z))),
                 lambda z: [0, 1] if same(z) else [], "parity01", exact=True)
    X = mk_qobject(N, rel)
    B = const_family(N, finite([0, 1]))
    with pytest.raises(InvalidAction) as e:
        mk_dep_family(X, B, discrete_fibre_relation(B), prog(r"\q b. p2 q"))
    assert e.value.law == 2


def test_k_functor(N, P):
    Fc, Fp = families(N, P)
    assert class_count(k_functor(Fc).dom) == 4
    assert class_count(k_functor(Fp).dom) == 2
    phi = fam_morphism(Fp, Fc, prog(r"\a b. b"))
    psi = fam_morphism(Fp, Fc, prog(r"\a b. 0"))
    assert all(k_preserves_terminal(P).values())
    assert all(k_preserves_product(Fc, Fp).values())
    assert all(k_preserves_equalizer(phi, psi).values())
    assert k_faithful([(phi, psi), (phi, phi)])
    assert k_on_morphisms(phi).validate()
