"""Objects and arrows of the quotient completion: carriers with realized equivalences."""

from ..collections import Arrow, Product, compose, nat, same
from ..doctrine import (EntailmentWitness, check_entailment, entailment_tri, meet, search_entailment, top)
from ..errors import DomainMismatch, IndeterminateVerdict, InvalidEquivalence
from ..families import Family, _guarded, sigma_along, substitute
from ..pca import Code, prog
from ..pca.coding import pair, unpair
from ..tri import IN, UNKNOWN, Tri

LAWS = ("refl", "sym", "trans")


def _code(c):
    if c is None or isinstance(c, Code):
        return c
    if isinstance(c, EntailmentWitness):
        return c.realizer
    return Code(int(c))


class LawFamilies:
    """Source and target propositions of the three equivalence laws of R over A."""

    def __init__(self, A, R):
        AA = Product(A, A)
        AAA = Product(AA.obj, A)
        self.A, self.AA, self.AAA = A, AA, AAA
        diag = Arrow(prog(r"\x. pair x x"), A, AA.obj)
        tw = Arrow(prog(r"\z. pair (p2 z) (p1 z)"), AA.obj, AA.obj)
        p12 = Arrow(prog(r"\t. p1 t"), AAA.obj, AA.obj)
        p23 = Arrow(prog(r"\t. pair (p2 (p1 t)) (p2 t)"), AAA.obj, AA.obj)
        p13 = Arrow(prog(r"\t. pair (p1 (p1 t)) (p2 t)"), AAA.obj, AA.obj)
        self.pairs = {
            "refl": (top(A), substitute(diag, R)),
            "sym": (R, substitute(tw, R)),
            "trans": (meet(substitute(p12, R), substitute(p23, R)), substitute(p13, R)),
        }


def find_law_witnesses(A, R, given=None, budget=64):
    """Verified realizers for reflexivity, symmetry and transitivity, or InvalidEquivalence."""
    given = dict(given or {})
    fams = LawFamilies(A, R)
    out = {}
    for law in LAWS:
        src, tgt = fams.pairs[law]
        hint = _code(given.get(law))
        if hint is not None:
            v = entailment_tri(src, tgt, hint)
            if v is IN:
                out[law] = hint
                continue
            if v is UNKNOWN:
                raise IndeterminateVerdict(f"{law} witness ran out of fuel")
        found = search_entailment(src, tgt, budget=budget)
        if found is None:
            raise InvalidEquivalence(law, f"no realizer for {law} of {R.name}")
        out[law] = found.realizer
    return out


class QObject:
    """(A, R): a carrier with a realized equivalence relation R over A×A."""

    def __init__(self, carrier, rel, witnesses, name=None):
        self.carrier = carrier
        self.rel = rel
        self.witnesses = dict(witnesses)
        self.name = name or f"({carrier.name},{rel.name})"
        self.square = Product(carrier, carrier)

    @property
    def refl(self):
        return self.witnesses["refl"]

    @property
    def sym(self):
        return self.witnesses["sym"]

    @property
    def trans(self):
        return self.witnesses["trans"]

    def related(self, x, y):
        """Listed realizers of R(x, y)."""
        return self.rel.fibre(pair(x, y))

    def relates(self, x, y):
        return bool(self.related(x, y))

    def validate(self):
        fams = LawFamilies(self.carrier, self.rel)
        return {law: check_entailment(*fams.pairs[law], self.witnesses[law]) for law in LAWS}

    def __repr__(self):
        return f"QObject{self.name}"


def mk_qobject(carrier, rel, witnesses=None, name=None):
    if not same(rel.base, Product(carrier, carrier).obj):
        raise DomainMismatch("the relation must live over the square of the carrier")
    return QObject(carrier, rel, find_law_witnesses(carrier, rel, witnesses), name)


def discrete_relation(A):
    """∃ along the diagonal of ⊤: realizers pair(x, 0) at pair(x, x)."""
    AA = Product(A, A)
    lit = sigma_along(Arrow(prog(r"\x. pair x x"), A, AA.obj), top(A))

    def cands(z):
        x, y = unpair(z)
        return [pair(x, 0)] if x == y else []

    return Family(AA.obj, lambda z, w, fuel: lit.decide(z, w, fuel), cands, f"Δ{A.name}",
                  recipe={"kind": "discrete", "base": A.recipe})


def delta(A):
    """Δ(A) = (A, ∃_Δ(⊤))."""
    return QObject(A, discrete_relation(A), {
        "refl": prog(r"\x u. pair x 0"), "sym": prog(r"\z w. w"), "trans": prog(r"\t w. p1 w")},
        name=f"Δ{A.name}")


def parity_relation(A):
    AA = Product(A, A)

    def inner(z, w, fuel):
        x, y = unpair(z)
        return Tri.of(w == 0 and (x - y) % 2 == 0)

    def cands(z):
        x, y = unpair(z)
        return [0] if (x - y) % 2 == 0 else []

    return Family(AA.obj, _guarded(AA.obj, inner), cands, "parity", exact=True,
                  recipe={"kind": "parity", "base": A.recipe})


def parity_nat(N=None):
    N = N or nat()
    return QObject(N, parity_relation(N), {
        "refl": prog(r"\x u. 0"), "sym": prog(r"\z w. w"), "trans": prog(r"\t w. 0")},
        name=f"{N.name}/2")


# -- arrows ---------------------------------------------------------------------------

def _ext_families(f, X, Y):
    """R ⊑ (f×f)*S over A×A."""
    ff = Arrow(prog(r"\z. pair (f (p1 z)) (f (p2 z))", f=f.code), X.square.obj, Y.square.obj)
    return X.rel, substitute(ff, Y.rel)


class QArrow:
    def __init__(self, rep, dom, cod, ext):
        self.rep, self.dom, self.cod = rep, dom, cod
        self.ext = ext

    @property
    def code(self):
        return self.rep.code

    def __call__(self, x):
        return self.rep(x)

    def validate(self):
        return check_entailment(*_ext_families(self.rep, self.dom, self.cod), self.ext)

    def __repr__(self):
        return f"QArrow({self.rep} : {self.dom.name} -> {self.cod.name})"


def qarrow(rep, dom, cod, ext=None, budget=64):
    """[rep]: dom -> cod, with a verified extensionality realizer."""
    if isinstance(rep, (Code, int)):
        rep = Arrow(_code(rep), dom.carrier, cod.carrier)
    src, tgt = _ext_families(rep, dom, cod)
    hints = [] if ext is None else [_code(ext)]
    hints.append(prog(r"\z w. s (pair (f (p1 z)) (f (p2 z))) 0", s=cod.refl, f=rep.code))
    found = search_entailment(src, tgt, budget=budget, hints=hints)
    if found is None:
        raise InvalidEquivalence("ext", f"{rep} does not respect the relations")
    return QArrow(rep, dom, cod, found.realizer)


def _eq_families(f, g):
    """Δ*R ⊑ ⟨f, g⟩*S over A."""
    X, Y = f.dom, f.cod
    diag = Arrow(prog(r"\x. pair x x"), X.carrier, X.square.obj)
    fg = Arrow(prog(r"\x. pair (f x) (g x)", f=f.code, g=g.code), X.carrier, Y.square.obj)
    return substitute(diag, X.rel), substitute(fg, Y.rel)


def qarrows_equal_witness(f, g, hints=()):
    src, tgt = _eq_families(f, g)
    hints = list(hints) + [prog(r"\x w. s (pair (f x) (g x)) 0", s=f.cod.refl, f=f.code, g=g.code),
                           prog(r"\x w. e (pair x x) w", e=f.ext)]
    return search_entailment(src, tgt, hints=hints)


def qarrows_equal(f, g, hints=()):
    """f ≃ g: (∀x)(R(x,x) → S(f x, g x)), checked as an entailment on supports."""
    if f.dom is not g.dom and f.dom.name != g.dom.name:
        raise DomainMismatch("arrows with different domains")
    return qarrows_equal_witness(f, g, hints) is not None


def q_identity(X):
    return QArrow(Arrow(prog(r"\x. x"), X.carrier, X.carrier), X, X, prog(r"\z w. w"))


def q_compose(g, f):
    rep = compose(g.rep, f.rep)
    ext = prog(r"\z w. h (pair (f (p1 z)) (f (p2 z))) (k z w)", h=g.ext, k=f.ext, f=f.code)
    return QArrow(rep, f.dom, g.cod, ext)


def delta_arrow(f, X=None, Y=None):
    """Δ(f) = [f]."""
    X = X or delta(f.dom)
    Y = Y or delta(f.cod)
    return qarrow(f, X, Y, ext=prog(r"\z w. pair (f (p1 w)) 0", f=f.code))
