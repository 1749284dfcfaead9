"""Saturated propositions over quotient objects, the classifier Ω, unique choice and CT."""
from ..collections import Arrow, Product, nat
from ..doctrine import bi_entails, check_entailment, meet, search_entailment
from ..errors import ExtractionFailed, InvalidEquivalence, NotSaturated, NotSmall, PreconditionFailed
from ..families import Family, TotalSigma, _guarded, substitute
from ..lang.syntax import Context, PredSymbol
from ..lang.theorems import choice_extract_with_witness, ct_realizer
from ..pca import Code, kleene_apply, prog, table_code
from ..pca.coding import pair, unpair
from ..tri import UNKNOWN, Tri, tri_all, tri_and
from ..universe import TauFamily, checker, tau_substitute, universe
from .qobject import QArrow, QObject, delta, q_compose, qarrow, qarrows_equal
from .structure import QProduct, is_q_mono


def _saturation_families(P, X):
    XX = X.square.obj
    left = Arrow(prog("p1"), XX, X.carrier)
    right = Arrow(prog("p2"), XX, X.carrier)
    return meet(substitute(left, P), X.rel), substitute(right, P)


def saturation_witness(P, X, hints=()):
    """Realizer of P(x) ∧ R(x,y) → P(y), or None."""
    src, tgt = _saturation_families(P, X)
    found = search_entailment(src, tgt, hints=list(hints) + [prog(r"\z w. p1 w")])
    return None if found is None else found.realizer


def saturation_counterexample(P, X):
    """A pair (x, y) with P(x), R(x, y) realized on supports and P(y) empty."""
    for z, _ in X.rel.points():
        x, y = unpair(z)
        if P.fibre(x) and not P.fibre(y):
            return (x, y)
    return None


def peff_prop_membership(P, X, hints=()):
    """Saturation witness of P over X; NotSaturated with a counterexample when one shows up."""
    w = saturation_witness(P, X, hints)
    if w is not None:
        return w
    raise NotSaturated(saturation_counterexample(P, X))


def is_saturated(P, X):
    return saturation_witness(P, X) is not None


def peff_prop_subst(f, P):
    """Carrier-level substitution along a representative of [f]."""
    if isinstance(P, TauFamily):
        return tau_substitute(f.rep, P)
    return substitute(f.rep, P)


def subst_well_defined(f, g, P):
    """For f ≃ g, the two substitutions of a saturated P bi-entail."""
    if not qarrows_equal(f, g):
        raise PreconditionFailed("the representatives are not ≃-equal")
    return bi_entails(peff_prop_subst(f, P), peff_prop_subst(g, P)) is not None


def peff_exists(f, P):
    """∃_f P closed under the codomain relation: realizers pair(x, pair(w, s)) with s ⊩ S(f x, y)."""
    X, Y = f.dom, f.cod
    B = Y.carrier

    def inner(y, z, fuel):
        x, ws = unpair(z)
        w, s = unpair(ws)
        fx = kleene_apply(f.code, [x])
        if not fx.ok:
            return UNKNOWN if fx.exhausted else Tri.of(False)
        return tri_and(lambda: X.carrier.decide(x, fuel),
                       lambda: tri_and(lambda: P.decide(x, w, fuel),
                                       lambda: Y.rel.decide(pair(fx.value, y), s, fuel)))

    def cands(y):
        return [pair(x, pair(w, s)) for x in X.carrier.support for w in P.fibre(x)
                for s in Y.related(f(x), y)]

    return Family(B, _guarded(B, inner), cands, f"∃[{f.code.value % 9973}]{P.name}", exact=True)


# -- subobjects ---------------------------------------------------------------------

def prop_to_mono(P, X):
    """Σ(A, P) with R on first components, included by [p1]."""
    T = TotalSigma(X.carrier, P)
    E = T.obj
    firsts = Arrow(prog(r"\z. pair (p1 (p1 z)) (p1 (p2 z))"), Product(E, E).obj, X.square.obj)
    from .qobject import mk_qobject
    S = mk_qobject(E, substitute(firsts, X.rel), {
        "refl": prog(r"\x u. r (p1 x) 0", r=X.refl),
        "sym": prog(r"\z w. s (pair (p1 (p1 z)) (p1 (p2 z))) w", s=X.sym),
        "trans": prog(r"\t w. r (pair (pair (p1 (p1 (p1 t))) (p1 (p2 (p1 t)))) (p1 (p2 t))) w", r=X.trans)},
        name=f"{{{P.name}}}")
    return QArrow(T.p1, S, X, prog(r"\z w. w"))


def mono_to_prop(m):
    """x |-> (∃y) S(m y, x), realizers pair(y, s)."""
    Y, X = m.dom, m.cod
    A = X.carrier

    def inner(x, z, fuel):
        y, s = unpair(z)
        my = kleene_apply(m.code, [y])
        if not my.ok:
            return UNKNOWN if my.exhausted else Tri.of(False)
        return tri_and(lambda: Y.carrier.decide(y, fuel), lambda: X.rel.decide(pair(my.value, x), s, fuel))

    def cands(x):
        return [pair(y, s) for y in Y.carrier.support for s in X.related(m(y), x)]

    return Family(A, _guarded(A, inner), cands, f"im({m.code.value % 9973})", exact=True)


def subobject_roundtrip(P, X):
    """P -> mono -> prop bi-entails P, and the comprehension inclusion is mono."""
    m = prop_to_mono(P, X)
    back = mono_to_prop(m)
    sat = saturation_witness(P, X)
    if sat is None:
        raise NotSaturated(saturation_counterexample(P, X))
    there = prog(r"\x w. pair (pair x w) (r x 0)", r=X.refl)
    home = prog(r"\x v. s (pair (p1 (p1 v)) x) (pair (p2 (p1 v)) (p2 v))", s=sat)
    return {"mono": is_q_mono(m), "roundtrip": bi_entails(P, back, hints_there=[there], hints_back=[home]) is not None,
            "saturated": is_saturated(back, X)}


# -- the classifier -------------------------------------------------------------------

def _members(c):
    return checker().members(c)


def _maps_into(code, xs, y, fuel):
    ch = checker(fuel=fuel)

    def lands(t):
        r = kleene_apply(code, [t], fuel)
        if not r.ok:
            return UNKNOWN if r.exhausted else Tri.of(False)
        return ch.member(r.value, y)

    return tri_all(xs, lands)


def eq_relation(U):
    """EQ(x, y): pair(c, d) with c sending members of x into y and d members of y into x."""
    UU = Product(U, U).obj

    def inner(z, w, fuel):
        x, y = unpair(z)
        c, d = unpair(w)
        return tri_and(lambda: _maps_into(Code(c), _members(x), y, fuel),
                       lambda: _maps_into(Code(d), _members(y), x, fuel))

    def conversion(xs, ys):
        if not xs:
            return prog(r"\t. t")
        if not ys:
            return None
        return table_code({t: ys[0] for t in xs}, ys[0])

    def cands(z):
        x, y = unpair(z)
        xs, ys = _members(x), _members(y)
        out = [pair(prog(r"\t. t").value, prog(r"\t. t").value)]
        c, d = conversion(xs, ys), conversion(ys, xs)
        if c is not None and d is not None:
            out.append(pair(c.value, d.value))
        return out

    return Family(UU, _guarded(UU, inner), cands, "EQ", recipe={"kind": "eq_omega"})


def omega(support=None):
    """Ω = (U_S, EQ)."""
    U = universe(support)
    return QObject(U, eq_relation(U), {
        "refl": prog(r"\x u. pair (\t. t) (\t. t)"),
        "sym": prog(r"\z w. pair (p2 w) (p1 w)"),
        "trans": prog(r"\q w. pair (\s. (p1 (p2 w)) ((p1 (p1 w)) s)) (\s. (p2 (p1 w)) ((p2 (p2 w)) s))")},
        name="Ω")


def classify(P, X, Omega=None):
    """[m]: X -> Ω for a saturated τ-family P = τ(m)."""
    if not isinstance(P, TauFamily):
        raise NotSmall(f"{P.name} has no code map into the universe")
    sat = peff_prop_membership(P, X)
    Omega = Omega or omega()
    ext = prog(r"\z r. pair (\t. s z (pair t r)) (\t. s (pair (p2 z) (p1 z)) (pair t (y z r)))",
               s=sat, y=X.sym)
    rep = Arrow(P.code, X.carrier, Omega.carrier)
    return qarrow(rep, X, Omega, ext=ext)


def comprehend(chi):
    """The τ-family pulled back through the code map; saturated via the EQ transport."""
    P = TauFamily(chi.dom.carrier, chi.code, name=f"χ⁻¹({chi.code.value % 9973})")
    return P


def comprehend_saturation(chi):
    return prog(r"\z w. (p1 (e z (p2 w))) (p1 w)", e=chi.ext)


def omega_roundtrips(P, X, Omega=None):
    chi = classify(P, X, Omega)
    back = comprehend(chi)
    ident = prog(r"\x w. w")
    refl_eq = prog(r"\x w. pair (\t. t) (\t. t)")
    return {"classify_ext": chi.validate(),
            "comprehend_classify": bi_entails(back, P, hints_there=[ident], hints_back=[ident]) is not None,
            "classify_comprehend": qarrows_equal(classify(back, X, chi.cod), chi, hints=[refl_eq]),
            "comprehend_saturated": check_entailment(*_saturation_families(back, X), comprehend_saturation(chi))}


def omega_naturality(P, X, g, Omega=None):
    """classify(g*P) ≃ classify(P) ∘ g for g: Y -> X."""
    pulled = peff_prop_subst(g, P)
    left = classify(pulled, g.dom, Omega)
    right = q_compose(classify(P, X, Omega), g)
    return qarrows_equal(left, right, hints=[prog(r"\x w. pair (\t. t) (\t. t)")])


# -- unique choice and CT ---------------------------------------------------------------

def _uniqueness_families(P, X, Y):
    A, B = X.carrier, Y.carrier
    AB = Product(A, B).obj
    ABB = Product(AB, B).obj
    first = Arrow(prog(r"\t. p1 t"), ABB, AB)
    second = Arrow(prog(r"\t. pair (p1 (p1 t)) (p2 t)"), ABB, AB)
    ys = Arrow(prog(r"\t. pair (p2 (p1 t)) (p2 t)"), ABB, Y.square.obj)
    return meet(substitute(first, P), substitute(second, P)), substitute(ys, Y.rel)


def uniqueness_witness(P, X, Y, hints=()):
    src, tgt = _uniqueness_families(P, X, Y)
    found = search_entailment(src, tgt, hints=list(hints))
    return None if found is None else found.realizer


def unique_choice(X, Y, P, witness, uniqueness=None, saturation=None):
    """The class function extracted from a realizer of (∀x)(∃!y)P(x,y).

    P lives over A×B; ``witness`` realizes (∀x)(∃y)P(x,y) and ``uniqueness``
    realizes P(x,y) ∧ P(x,y') → S(y,y').
    """
    prop = P.prop if isinstance(P, PredSymbol) else P
    sym = P if isinstance(P, PredSymbol) else PredSymbol(prop.name, prop, (X.carrier, Y.carrier))
    XY = QProduct(X, Y).obj
    sat = saturation_witness(prop, XY, [saturation] if saturation is not None else [])
    if sat is None:
        raise ExtractionFailed(f"{prop.name} is not saturated over {XY.name}")
    uniq = uniqueness_witness(prop, X, Y, [uniqueness] if uniqueness is not None else [])
    if uniq is None:
        raise ExtractionFailed("no realizer of uniqueness up to the codomain relation")
    try:
        f, _ = choice_extract_with_witness(Context(), X.carrier, Y.carrier, sym, witness)
    except PreconditionFailed as e:
        raise ExtractionFailed(str(e)) from e
    w = witness.realizer if hasattr(witness, "realizer") else witness
    ext = prog(r"\z r. (\c. u (pair (pair (p2 z) (f (p1 z))) (f (p2 z)))"
               r" (pair (s (pair (pair (p1 z) (f (p1 z))) (pair (p2 z) (f (p1 z))))"
               r" (pair (p2 (c (p1 z))) (pair r (q (f (p1 z)) 0)))) (p2 (c (p2 z))))) (w 0 0)",
               u=uniq, s=sat, f=f.code, q=Y.refl, w=w)
    try:
        arrow = qarrow(f, X, Y, ext=ext)
    except InvalidEquivalence as e:
        raise ExtractionFailed("the extracted function does not respect the relations") from e
    arrow.assembled_ext = ext
    return arrow


def ct_in_peff(R, N=None):
    """CT at a relation on Δ(N)×Δ(N): saturation is checked, then the realizer is lifted."""
    N = N or nat()
    prop = R.prop if isinstance(R, PredSymbol) else R
    D = delta(N)
    DD = QProduct(D, D).obj
    if saturation_witness(prop, DD) is None:
        raise PreconditionFailed(f"{prop.name} is not saturated over Δ(N)×Δ(N)")
    return ct_realizer(R, N)
