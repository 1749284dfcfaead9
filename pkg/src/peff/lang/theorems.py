"""Realizers for Church's thesis, choice with weak exponentials, and the choice rule.

Each construction returns a witness that has been checked against the
interpretation, never one that is merely assumed.
"""
from .. import config
from ..collections import Arrow, Product, WeakExponential, nat
from ..doctrine import EntailmentWitness, check_entailment, entailment_tri, top
from ..errors import ExtractionFailed, IndeterminateVerdict, PreconditionFailed
from ..families import Family, _guarded
from ..pca import Code, kleene_T, prog
from ..pca.coding import unpair
from ..tri import Tri
from . import syntax as L
from .interpret import interpret


def kleene_t_predicate(N=None):
    """T(e, x, y) as a proposition over (N×N)×N, realized by 0 when it holds."""
    N = N or nat()
    base = Product(Product(N, N).obj, N).obj

    def inner(z, w, fuel):
        ex, y = unpair(z)
        e, x = unpair(ex)
        return Tri.of(w == 0 and kleene_T(e, x, y, fuel_cap=fuel))

    def cands(z):
        ex, y = unpair(z)
        e, x = unpair(ex)
        return [0] if kleene_T(e, x, y) else []

    prop = Family(base, _guarded(base, inner), cands, "T", exact=True,
                  recipe={"kind": "builtin", "name": "kleene_T"})
    return L.PredSymbol("T", prop, (N, N, N))


def kleene_u_symbol(N=None):
    N = N or nat()
    return L.Symbol("U", Arrow(prog("p2"), N, N), (N,))


def ct_formula(R, N=None):
    """(∀x∈N)(∃z∈N)R(x,z) → (∃e∈N)(∀x∈N)(∃y∈N)(T(e,x,y) ∧ R(x,U(y)))."""
    N = N or nat()
    x, z, e, y = L.Var("x"), L.Var("z"), L.Var("e"), L.Var("y")
    premise = L.Forall("x", N, L.Exists("z", N, L.Atom(R, (x, z))))
    body = L.And(L.Atom(kleene_t_predicate(N), (e, x, y)),
                 L.Atom(R, (x, L.Apply(kleene_u_symbol(N), (y,)))))
    conclusion = L.Exists("e", N, L.Forall("x", N, L.Exists("y", N, body)))
    return L.Imp(premise, conclusion)


def _verified(phi, r):
    ctx = L.Context()
    P = interpret(phi, ctx)
    T = top(ctx.obj)
    w = EntailmentWitness(r, T, P)
    v = entailment_tri(T, P, r)
    if v is Tri.UNKNOWN:
        raise IndeterminateVerdict("realizer check ran out of fuel")
    if v is not Tri.IN:
        raise PreconditionFailed("constructed realizer does not verify")
    return w


def ct_realizer(R, N=None):
    """Witness for Church's thesis at R.

    From a realizer r of the premise, e := Λx.p1({r}(x)) computes the choice
    and the trace of e on x is pair(S, z) where S is the fuel ceiling, which
    bounds the steps of any run that the checker accepts.
    """
    S = config.current().fuel
    r = prog(r"\g u. \r. pair (\x. p1 (r x)) (\x. pair (pair s (p1 (r x))) (pair 0 (p2 (r x))))", s=S)
    return _verified(ct_formula(R, N), r)


def ac_formula(R, A, B):
    """(∀x∈A)(∃y∈B)R(x,y) → (∃f∈A⇒B)(∀x∈A)R(x, ev(f,x))."""
    E = WeakExponential(A, B)
    ev = L.Symbol("ev", E.ev, (E.obj, A))
    x, y, f = L.Var("x"), L.Var("y"), L.Var("f")
    premise = L.Forall("x", A, L.Exists("y", B, L.Atom(R, (x, y))))
    conclusion = L.Exists("f", E.obj, L.Forall("x", A, L.Atom(R, (x, L.Apply(ev, (f, x))))))
    return L.Imp(premise, conclusion)


def ac_realizer(R, A, B):
    r = prog(r"\g u. \r. pair (\x. p1 (r x)) (\x. p2 (r x))")
    return _verified(ac_formula(R, A, B), r)


def choice_premise(ctx, A, B, R, x="x", y="y"):
    """(∀x∈A)(∃y∈B)R(x̄, x, y) [Γ]."""
    args = tuple(L.Var(n) for n in ctx.names)
    return L.Forall(x, A, L.Exists(y, B, L.Atom(R, args + (L.Var(x), L.Var(y)))))


def choice_extract(ctx, A, B, R, witness, x="x"):
    """The arrow f: ‖Γ‖×A -> B (A -> B for the empty context) of the choice rule."""
    return choice_extract_with_witness(ctx, A, B, R, witness, x)[0]


def choice_extract_with_witness(ctx, A, B, R, witness, x="x"):
    ctx = ctx or L.Context()
    r = witness.realizer if isinstance(witness, EntailmentWitness) else witness
    r = r if isinstance(r, Code) else Code(int(r))
    premise = choice_premise(ctx, A, B, R, x=x)
    if not check_entailment(top(ctx.obj), interpret(premise, ctx), r):
        raise PreconditionFailed("the witness does not realize the premise")
    if ctx.entries:
        dom = Product(ctx.obj, A).obj
        f = Arrow(prog(r"\z. p1 ((r (p1 z) 0) (p2 z))", r=r), dom, B)
        induced = prog(r"\g u. \a. p2 ((r g 0) a)", r=r)
    else:
        f = Arrow(prog(r"\a. p1 ((r 0 0) a)", r=r), A, B)
        induced = prog(r"\g u. \a. p2 ((r 0 0) a)", r=r)
    fsym = L.Symbol("f", f, tuple(c for _, c in ctx.entries) + (A,))
    args = tuple(L.Var(n) for n in ctx.names)
    post = L.Forall(x, A, L.Atom(R, args + (L.Var(x), L.Apply(fsym, args + (L.Var(x),)))))
    P = interpret(post, ctx)
    if not check_entailment(top(ctx.obj), P, induced):
        raise ExtractionFailed("the extracted arrow fails the post-condition on the support")
    return f, EntailmentWitness(induced, top(ctx.obj), P)


def relation(phi_text, A, B, names=("x", "y"), signature=None):
    """A proposition over A×B given by a formula in two variables, as a predicate symbol."""
    ctx = L.Context([(names[0], A), (names[1], B)])
    P = interpret(L.parse(phi_text, ctx, signature), ctx)
    return L.PredSymbol(phi_text, P, (A, B))
