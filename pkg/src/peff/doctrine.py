"""Propositions as families read through their realizers, and entailment.

``P ⊑ Q`` holds when a single code r sends every realizer x' of P(x) to a
realizer {r}(x, x') of Q(x), checked on the listed fibres of the base support.
"""
from dataclasses import dataclass

from . import config
from .collections import Arrow, Product, apply_tri, arrows_equal, compose, same
from .errors import DomainMismatch, IndeterminateVerdict
from .families import (Family, FibreCoproduct, FibreExponential, FibreProduct, TotalSigma, WeakPi,
                       initial_family, sigma_along, slice_to_family, substitute, terminal_family,
                       _guarded)
from .pca import Code, prog, table_code, table_term
from .pca.coding import pair, unpair
from .pca.terms import Abs
from .tri import IN, UNKNOWN, Tri, tri_all, tri_and

Prop = Family


@dataclass(frozen=True)
class EntailmentWitness:
    realizer: Code
    source: Family
    target: Family

    def check(self):
        return check_entailment(self.source, self.target, self.realizer)


def entailment_tri(P, Q, r, fuel=None, extra=()):
    """Tri verdict for r realizing P ⊑ Q; ``extra`` adds (x, x') pairs to test."""
    if not same(P.base, Q.base):
        raise DomainMismatch(f"{P} and {Q} live over different bases")
    fuel = config.fuel_or_default(fuel)
    points = P.points() + list(extra)
    return tri_all(points, lambda p: apply_tri(r, [p[0], p[1]], fuel,
                                               lambda v: Q.decide(p[0], v, fuel)))


def check_entailment(P, Q, r, fuel=None, extra=()):
    return bool(entailment_tri(P, Q, r, fuel, extra))


STANDARD_CANDIDATES = [
    r"\x y. y", r"\x y. 0", r"\x y. p1 y", r"\x y. p2 y", r"\x y. pair x y",
    r"\x y. pair (p2 y) (p1 y)", r"\x y. pair 0 y", r"\x y. pair 1 y", r"\x y. pair y 0",
    r"\x y. pair y y",
]


def _standard():
    return [prog(t) for t in STANDARD_CANDIDATES]


def tabulated_witness(P, Q):
    """Code choosing, per base point, the first listed realizer of Q(x).

    Returns None when some point has realizers of P but none listed for Q.
    """
    entries = {}
    for x in P.base.support:
        if not P.fibre(x):
            continue
        q = Q.fibre(x)
        if not q:
            return None
        entries[x] = q[0]
    if not entries:
        return prog(r"\x y. y")
    first = next(iter(entries.values()))
    return Code.of(Abs(Abs(table_term(1, entries, first))))


def search_entailment(P, Q, budget=64, hints=(), fuel=None):
    """First verified witness from a bounded catalog, or None.

    The catalog is: supplied hints, the standard projection/pairing codes, and
    finally a tabulated witness built from the listed fibres of Q.
    """
    tried = 0
    unknown = False
    for r in list(hints) + _standard() + ["table"]:
        if tried >= budget:
            break
        tried += 1
        if r == "table":
            r = tabulated_witness(P, Q)
            if r is None:
                break
        r = r if isinstance(r, Code) else Code(int(r))
        v = entailment_tri(P, Q, r, fuel)
        if v is IN:
            return EntailmentWitness(r, P, Q)
        if v is UNKNOWN:
            unknown = True
    if unknown:
        raise IndeterminateVerdict("entailment search met an undecided candidate")
    return None


def entails(P, Q, **kw):
    return search_entailment(P, Q, **kw) is not None


def bi_entails(P, Q, hints_there=(), hints_back=(), **kw):
    there = search_entailment(P, Q, hints=hints_there, **kw)
    if there is None:
        return None
    back = search_entailment(Q, P, hints=hints_back, **kw)
    if back is None:
        return None
    return there, back


# -- Heyting prealgebra ---------------------------------------------------------

def top(A):
    return terminal_family(A)


def bottom(A):
    return initial_family(A)


def meet(P, Q):
    return FibreProduct(P, Q).obj


def join(P, Q):
    return FibreCoproduct(P, Q).obj


def imp(P, Q, extra=()):
    return FibreExponential(P, Q, extra).obj


def heyting(op, *args):
    ops = {"top": top, "bottom": bottom, "meet": meet, "join": join, "imp": imp}
    if op not in ops:
        raise ValueError(f"unknown connective {op}")
    return ops[op](*args)


# -- quantifiers ----------------------------------------------------------------

def exists_along(f, P):
    return sigma_along(f, P)


def forall_along(f, P, extra=()):
    return WeakPi(f, P, extra).obj


def beck_chevalley(f, B, P):
    """Both sides of the Beck-Chevalley squares along product projections.

    For f: C -> A and P over A×B, compares f*(Q_{p1} P) with Q_{p1}((f×id)* P)
    for Q in {∃, ∀}. Returns a dict of bi-entailment results.
    """
    A, C = f.cod, f.dom
    AB, CB = Product(A, B), Product(C, B)
    fxid = AB.cross(f, Arrow(prog(r"\x. x"), B, B), CB)
    reindexed = substitute(fxid, P)
    ex_left = substitute(f, exists_along(AB.p1, P))
    ex_right = exists_along(CB.p1, reindexed)
    there = prog(r"\c m. pair (pair c (p2 (p1 m))) (p2 m)")
    back = prog(r"\c m. pair (pair (f c) (p2 (p1 m))) (p2 m)", f=f.code)
    fa_left = substitute(f, forall_along(AB.p1, P))
    fa_right = forall_along(CB.p1, reindexed)
    fa_there = prog(r"\c k. \y. k (pair (f (p1 y)) (p2 y))", f=f.code)
    fa_back = prog(r"\c k. \y. k (pair c (p2 y))")
    return {
        "exists": bi_entails(ex_left, ex_right, hints_there=[there], hints_back=[back]),
        "forall": bi_entails(fa_left, fa_right, hints_there=[fa_there], hints_back=[fa_back]),
    }


# -- comprehension and separation -------------------------------------------------

class Comprehension:
    def __init__(self, P):
        T = TotalSigma(P.base, P)
        self.prop = P
        self.obj, self.cmp = T.obj, T.p1

    def __iter__(self):
        return iter((self.obj, self.cmp))

    def factor(self, f, witness):
        """f: C -> A with witness r of ⊤ ⊑ f*P gives f': C -> Σ(A,P), cmp ∘ f' ≈ f."""
        r = witness.realizer if isinstance(witness, EntailmentWitness) else witness
        return Arrow(prog(r"\c. pair (f c) (r c 0)", f=f.code, r=r), f.dom, self.obj)


def comprehension(P):
    return Comprehension(P)


def separate(P):
    A = P.base

    def inner(x, z, fuel):
        a, w = unpair(z)
        return tri_and(Tri.of(a == x), lambda: P.decide(x, w, fuel))

    return Family(A, _guarded(A, inner), lambda x: [pair(x, w) for w in P.fibre(x)],
                  f"sep({P.name})", exact=True, recipe={"kind": "separate", "arg": P.recipe})


def separation_witnesses(P):
    S = separate(P)
    return (EntailmentWitness(prog(r"\x y. pair x y"), P, S),
            EntailmentWitness(prog(r"\x y. p2 y"), S, P))


def is_separated(P):
    """No realizer is shared between distinct base points."""
    owner = {}
    for x, w in P.points():
        if owner.setdefault(w, x) != x:
            return False
    return True


def valid(P, **kw):
    """Witness of ⊤ ⊑ P, or None."""
    return search_entailment(top(P.base), P, **kw)


def factors_through(f, g):
    """Some h with g∘h ≈ f on supports; returns h or None."""
    if not same(f.cod, g.cod):
        raise DomainMismatch("factorization needs a common codomain")
    by_value = {}
    for b in g.dom.support:
        by_value.setdefault(g(b), b)
    entries = {}
    for x in f.dom.support:
        hit = by_value.get(f(x))
        if hit is None:
            return None
        entries[x] = hit
    h = Arrow(table_code(entries, 0), f.dom, g.dom)
    return h if arrows_equal(compose(g, h), f) else None


def weak_subobject_order(f, g):
    """(J(f) ⊑ J(g), f factors through g) for arrows into a common base."""
    return entails(slice_to_family(f), slice_to_family(g)), factors_through(f, g) is not None
