"""Pretopos structure of the quotient completion, built on carriers with componentwise relations."""
from ..collections import (Arrow, Coproduct, ListObject, Product, WeakExponential, apply_tri,
                           initial, nat, terminal)
from .. import config
from ..doctrine import bi_entails, search_entailment, top
from ..errors import InvalidEquivalence
from ..families import Family, TotalSigma, _guarded, substitute
from ..lang.interpret import interpret
from ..lang.syntax import And, Apply, Atom, Context, Eq, Exists, Forall, Or, PointConst, PredSymbol, Symbol, Var, point_symbol
from ..pca import kleene_apply, prog, table_code
from ..pca.coding import decode_list, pair, unpair
from ..tri import IN, Tri, tri_all, tri_and
from .qobject import (QArrow, QObject, delta, find_law_witnesses, mk_qobject, q_compose, q_identity,
                      qarrow, qarrows_equal)


def _value(code, args):
    r = kleene_apply(code, list(args))
    return r.value if r.ok else None


# -- terminal and products -------------------------------------------------------

def q_terminal():
    return delta(terminal())


def q_bang(X):
    return QArrow(Arrow(prog(r"\x. 0"), X.carrier, terminal()), X, q_terminal(), prog(r"\z w. pair 0 0"))


def product_relation(X, Y, carrier):
    AA = Product(carrier, carrier).obj

    def inner(z, w, fuel):
        (a, b), (a2, b2) = unpair(unpair(z)[0]), unpair(unpair(z)[1])
        r, s = unpair(w)
        return tri_and(lambda: X.rel.decide(pair(a, a2), r, fuel), lambda: Y.rel.decide(pair(b, b2), s, fuel))

    def cands(z):
        (a, b), (a2, b2) = unpair(unpair(z)[0]), unpair(unpair(z)[1])
        return [pair(r, s) for r in X.related(a, a2) for s in Y.related(b, b2)]

    return Family(AA, _guarded(AA, inner), cands, f"({X.rel.name}×{Y.rel.name})", exact=True,
                  recipe={"kind": "qproduct", "carrier": carrier.recipe, "args": [X.rel.recipe, Y.rel.recipe]})


class QProduct:
    def __init__(self, X, Y):
        P = Product(X.carrier, Y.carrier)
        self.left, self.right = X, Y
        swap = r"(pair (pair (p1 (p1 z)) (p1 (p2 z))) (pair (p2 (p1 z)) (p2 (p2 z))))"
        wit = {
            "refl": prog(r"\x u. pair (r (p1 x) 0) (s (p2 x) 0)", r=X.refl, s=Y.refl),
            "sym": prog(rf"\z w. (\q. pair (r (p1 q) (p1 w)) (s (p2 q) (p2 w))) {swap}",
                        r=X.sym, s=Y.sym),
            "trans": prog(r"\t w. pair (r (pair (pair (p1 (p1 (p1 t))) (p1 (p2 (p1 t)))) (p1 (p2 t)))"
                          r" (pair (p1 (p1 w)) (p1 (p2 w))))"
                          r" (s (pair (pair (p2 (p1 (p1 t))) (p2 (p2 (p1 t)))) (p2 (p2 t)))"
                          r" (pair (p2 (p1 w)) (p2 (p2 w))))", r=X.trans, s=Y.trans),
        }
        rel = product_relation(X, Y, P.obj)
        self.obj = QObject(P.obj, rel, find_law_witnesses(P.obj, rel, wit), f"({X.name}×{Y.name})")
        self.p1 = QArrow(P.p1, self.obj, X, prog(r"\z w. p1 w"))
        self.p2 = QArrow(P.p2, self.obj, Y, prog(r"\z w. p2 w"))

    def __iter__(self):
        return iter((self.obj, self.p1, self.p2))

    def mediator(self, f, g):
        rep = Arrow(prog(r"\x. pair (f x) (g x)", f=f.code, g=g.code), f.dom.carrier, self.obj.carrier)
        return qarrow(rep, f.dom, self.obj, ext=prog(r"\z w. pair (e z w) (k z w)", e=f.ext, k=g.ext))

    def checks(self, f, g):
        m = self.mediator(f, g)
        return {"mediator": m.validate(),
                "p1": qarrows_equal(q_compose(self.p1, m), f),
                "p2": qarrows_equal(q_compose(self.p2, m), g)}


def q_product(X, Y):
    return QProduct(X, Y)


# -- equalizers ---------------------------------------------------------------------

class QEqualizer:
    """{x | S(f x, g x)} as Σ(A, ⟨f,g⟩*S), with R on first components."""

    def __init__(self, f, g):
        X, Y = f.dom, f.cod
        self.f, self.g = f, g
        fg = Arrow(prog(r"\x. pair (f x) (g x)", f=f.code, g=g.code), X.carrier, Y.square.obj)
        T = TotalSigma(X.carrier, substitute(fg, Y.rel))
        E = T.obj
        EE = Product(E, E).obj
        firsts = Arrow(prog(r"\z. pair (p1 (p1 z)) (p1 (p2 z))"), EE, X.square.obj)
        rel = substitute(firsts, X.rel)
        wit = {"refl": prog(r"\x u. r (p1 x) 0", r=X.refl),
               "sym": prog(r"\z w. s (pair (p1 (p1 z)) (p1 (p2 z))) w", s=X.sym),
               "trans": prog(r"\t w. r (pair (pair (p1 (p1 (p1 t))) (p1 (p2 (p1 t)))) (p1 (p2 t))) w",
                             r=X.trans)}
        self.obj = QObject(E, rel, find_law_witnesses(E, rel, wit), f"Eq({X.name})")
        self.inclusion = QArrow(T.p1, self.obj, X, prog(r"\z w. w"))

    def mediator(self, h):
        """Factor h with f∘h ≃ g∘h; the S-witness comes from the ≃ witness."""
        from .qobject import qarrows_equal_witness
        w = qarrows_equal_witness(q_compose(self.f, h), q_compose(self.g, h))
        if w is None:
            raise InvalidEquivalence("ext", "h does not equalize the pair")
        Z = h.dom
        rep = Arrow(prog(r"\z. pair (h z) (w z (r z 0))", h=h.code, w=w.realizer, r=Z.refl),
                    Z.carrier, self.obj.carrier)
        return qarrow(rep, Z, self.obj, ext=h.ext)

    def checks(self, h):
        m = self.mediator(h)
        return {"mediator": m.validate(), "factors": qarrows_equal(q_compose(self.inclusion, m), h),
                "mono": is_q_mono(self.inclusion)}


def q_equalizer(f, g):
    return QEqualizer(f, g)


def is_q_mono(m):
    """(m×m)*S ⊑ R: related images come from related points."""
    X, Y = m.dom, m.cod
    mm = Arrow(prog(r"\z. pair (f (p1 z)) (f (p2 z))", f=m.code), X.square.obj, Y.square.obj)
    return search_entailment(substitute(mm, Y.rel), X.rel) is not None


# -- initial and coproducts ---------------------------------------------------------

def q_initial():
    Z = initial()
    ZZ = Product(Z, Z).obj
    return mk_qobject(Z, top(ZZ), name="(0,⊤)")


def _pred(name, rel, A):
    return PredSymbol(name, rel, (A, A))


def coproduct_formula(X, Y, C):
    """The displayed relation on (A+B)×(A+B) as a formula in context [x]."""
    A, B = X.carrier, Y.carrier
    CC = Product(C.obj, C.obj)
    p1 = Symbol("p1", CC.p1, (CC.obj,))
    p2 = Symbol("p2", CC.p2, (CC.obj,))
    j1 = Symbol("j1", C.j1, (A,))
    j2 = Symbol("j2", C.j2, (B,))
    x = Var("x")

    def side(pred, j, D):
        t, s = Var("t"), Var("s")
        body = And(Atom(pred, (t, s)),
                   And(Eq(C.obj, Apply(p1, (x,)), Apply(j, (t,))), Eq(C.obj, Apply(p2, (x,)), Apply(j, (s,)))))
        return Exists("t", D, Exists("s", D, body))

    phi = Or(side(_pred("R", X.rel, A), j1, A), side(_pred("S", Y.rel, B), j2, B))
    return phi, Context([("x", CC.obj)])


def coproduct_relation(X, Y, C):
    phi, ctx = coproduct_formula(X, Y, C)
    lit = interpret(phi, ctx)

    def cands(z):
        u, v = unpair(z)
        (tu, a), (tv, b) = unpair(u), unpair(v)
        if tu != tv or tu not in (0, 1):
            return []
        rel = X.rel if tu == 0 else Y.rel
        return [pair(tu, pair(a, pair(b, pair(r, pair(pair(u, 0), pair(v, 0))))))
                for r in rel.fibre(pair(a, b))]

    return Family(ctx.obj, lambda z, w, fuel: lit.decide(z, w, fuel), cands,
                  f"({X.rel.name}+{Y.rel.name})",
                  recipe={"kind": "qcoproduct", "args": [X.rel.recipe, Y.rel.recipe],
                          "carriers": [X.carrier.recipe, Y.carrier.recipe]})


class QCoproduct:
    def __init__(self, X, Y):
        C = Coproduct(X.carrier, Y.carrier)
        self.left, self.right, self.base = X, Y, C
        rel = coproduct_relation(X, Y, C)
        self.formula = coproduct_formula(X, Y, C)[0]
        self.obj = mk_qobject(C.obj, rel, self._witnesses(X, Y), name=f"({X.name}+{Y.name})")
        self.j1 = qarrow(C.j1, X, self.obj, ext=self._inj(0))
        self.j2 = qarrow(C.j2, Y, self.obj, ext=self._inj(1))

    @staticmethod
    def _inj(tag):
        return prog(r"\z r. pair k (pair (p1 z) (pair (p2 z) (pair r"
                    r" (pair (pair (pair k (p1 z)) 0) (pair (pair k (p2 z)) 0)))))", k=tag)

    @staticmethod
    def _witnesses(X, Y):
        # realizers are pair(tag, pair(t, pair(s, pair(r, eqs))))
        refl = prog(r"\x u. pair (p1 x) (pair (p2 x) (pair (p2 x) (pair"
                    r" (ite (p1 x) (\q. rl (p2 x) 0) (\q. rk (p2 x) 0) 0) (pair (pair x 0) (pair x 0)))))",
                    rl=X.refl, rk=Y.refl)
        sym = prog(r"\z w. (\t s eqs. pair (p1 w) (pair s (pair t (pair"
                   r" (ite (p1 w) (\q. sl (pair t s) (p1 (p2 (p2 (p2 w))))) (\q. sk (pair t s) (p1 (p2 (p2 (p2 w))))) 0)"
                   r" (pair (pair (p2 z) 0) (pair (p1 z) 0))))))"
                   r" (p1 (p2 w)) (p1 (p2 (p2 w))) 0", sl=X.sym, sk=Y.sym)
        trans = prog(r"\t w. (\a b c r1 r2. pair (p1 (p1 w)) (pair a (pair c (pair"
                     r" (ite (p1 (p1 w)) (\q. tl (pair (pair a b) c) (pair r1 r2)) (\q. tk (pair (pair a b) c) (pair r1 r2)) 0)"
                     r" (pair (pair (p1 (p1 t)) 0) (pair (p2 t) 0))))))"
                     r" (p1 (p2 (p1 w))) (p1 (p2 (p2 (p1 w)))) (p1 (p2 (p2 (p2 w))))"
                     r" (p1 (p2 (p2 (p2 (p1 w))))) (p1 (p2 (p2 (p2 (p2 w)))))", tl=X.trans, tk=Y.trans)
        return {"refl": refl, "sym": sym, "trans": trans}

    def copair(self, f, g):
        rep = self.base.copair(f.rep, g.rep)
        ext = prog(r"\z w. ite (p1 w) (\u. f (pair (p1 (p2 w)) (p1 (p2 (p2 w)))) (p1 (p2 (p2 (p2 w)))))"
                   r" (\u. g (pair (p1 (p2 w)) (p1 (p2 (p2 w)))) (p1 (p2 (p2 (p2 w))))) 0",
                   f=f.ext, g=g.ext)
        return qarrow(rep, self.obj, f.cod, ext=ext)

    def disjoint(self):
        """No realizer relates a left injection to a right one on supports."""
        X, Y = self.left, self.right
        return all(not self.obj.relates(pair(0, a), pair(1, b)) and not self.obj.relates(pair(1, b), pair(0, a))
                   for a in X.carrier.support for b in Y.carrier.support)

    def stable(self, f):
        """Pullback along f: W -> X+Y splits W by tags compatibly with its relation."""
        W = f.dom
        for z, _ in W.rel.points():
            a, b = unpair(z)
            fa, fb = f(a), f(b)
            if unpair(fa)[0] != unpair(fb)[0]:
                return False
        return all(unpair(f(w))[0] in (0, 1) for w in W.carrier.support)

    def checks(self, f, g):
        h = self.copair(f, g)
        return {"copair": h.validate(), "j1": qarrows_equal(q_compose(h, self.j1), f),
                "j2": qarrows_equal(q_compose(h, self.j2), g), "disjoint": self.disjoint(),
                "stable": self.stable(q_identity(self.obj))}


def q_coproduct(X, Y):
    return QCoproduct(X, Y)


# -- lists --------------------------------------------------------------------------

def list_formula(X, L, N):
    A = X.carrier
    LL = Product(L.obj, L.obj)
    A1 = Coproduct(A, terminal())
    LN = Product(L.obj, N)
    p1 = Symbol("p1", LL.p1, (LL.obj,))
    p2 = Symbol("p2", LL.p2, (LL.obj,))
    lh = Symbol("lh", Arrow(prog("lh"), L.obj, N), (L.obj,))
    comp = Symbol("comp", Arrow(prog(r"\z. comp (p1 z) (p2 z)"), LN.obj, A1.obj), (L.obj, N))
    j1 = Symbol("j1", A1.j1, (A,))
    j2 = Symbol("j2", A1.j2, (terminal(),))
    star = PointConst(point_symbol("0", 0, terminal()))
    R = _pred("R", X.rel, A)
    x, n, a, b = Var("x"), Var("n"), Var("a"), Var("b")
    c1 = Apply(comp, (Apply(p1, (x,)), n))
    c2 = Apply(comp, (Apply(p2, (x,)), n))
    inside = Exists("a", A, Exists("b", A, And(Atom(R, (a, b)),
                                               And(Eq(A1.obj, Apply(j1, (a,)), c1), Eq(A1.obj, Apply(j1, (b,)), c2)))))
    outside = And(Eq(A1.obj, c1, Apply(j2, (star,))), Eq(A1.obj, c2, Apply(j2, (star,))))
    phi = And(Eq(N, Apply(lh, (Apply(p1, (x,)),)), Apply(lh, (Apply(p2, (x,)),))),
              Forall("n", N, Or(inside, outside)))
    return phi, Context([("x", LL.obj)])


def list_relation(X, L, N):
    phi, ctx = list_formula(X, L, N)
    lit = interpret(phi, ctx)
    unit = pair(1, 0)

    def cands(z):
        l1, l2 = (decode_list(v) for v in unpair(z))
        if len(l1) != len(l2):
            return []
        per = []
        for a, b in zip(l1, l2):
            fib = X.related(a, b)
            if not fib:
                return []
            per.append(pair(0, pair(a, pair(b, pair(fib[0], pair(pair(pair(0, a), 0), pair(pair(0, b), 0)))))))
        out = pair(1, pair(pair(unit, 0), pair(unit, 0)))
        table = {i: v for i, v in enumerate(per)}
        code = table_code(table, out) if table else prog(r"\n. o", o=out)
        return [pair(pair(len(l1), 0), code.value)]

    return Family(ctx.obj, lambda z, w, fuel: lit.decide(z, w, fuel), cands, f"List({X.rel.name})",
                  recipe={"kind": "qlist", "arg": X.rel.recipe, "carrier": X.carrier.recipe,
                          "max_len": L.obj.recipe["max_len"], "nat": N.recipe})


class QList:
    def __init__(self, X, max_len=None, N=None):
        self.elem = X
        self.base = ListObject(X.carrier, max_len)
        self.N = N or nat()
        rel = list_relation(X, self.base, self.N)
        self.formula = list_formula(X, self.base, self.N)[0]
        self.obj = mk_qobject(self.base.obj, rel, self._witnesses(X), name=f"List{X.name}")

    @staticmethod
    def _witnesses(X):
        # realizers are pair(pair(length, 0), c) with c(n) tagged 0 inside the lists and 1 past them
        refl = prog(r"\x u. pair (pair (lh x) 0) (\n. (\v. ite (p1 v)"
                    r" (\q. pair 0 (pair (p2 v) (pair (p2 v) (pair (r (p2 v) 0) (pair (pair v 0) (pair v 0))))))"
                    r" (\q. pair 1 (pair (pair v 0) (pair v 0))) 0) (comp x n))", r=X.refl)
        sym = prog(r"\z w. pair (pair (lh (p2 z)) 0) (\n. (\v. ite (p1 v)"
                   r" (\q. pair 0 (pair (p1 (p2 (p2 v))) (pair (p1 (p2 v)) (pair"
                   r" (s (pair (p1 (p2 v)) (p1 (p2 (p2 v)))) (p1 (p2 (p2 (p2 v)))))"
                   r" (pair (p2 (p2 (p2 (p2 (p2 v))))) (p1 (p2 (p2 (p2 (p2 v))))))))))"
                   r" (\q. pair 1 (pair (p2 (p2 v)) (p1 (p2 v)))) 0) ((p2 w) n))", s=X.sym)
        trans = prog(r"\t w. pair (pair (lh (p1 (p1 t))) 0) (\n. (\v e. ite (p1 v)"
                     r" (\q. pair 0 (pair (p1 (p2 v)) (pair (p1 (p2 (p2 e))) (pair"
                     r" (k (pair (pair (p1 (p2 v)) (p1 (p2 (p2 v)))) (p1 (p2 (p2 e))))"
                     r" (pair (p1 (p2 (p2 (p2 v)))) (p1 (p2 (p2 (p2 e))))))"
                     r" (pair (p1 (p2 (p2 (p2 (p2 v))))) (p2 (p2 (p2 (p2 (p2 e))))))))))"
                     r" (\q. pair 1 (pair (p1 (p2 v)) (p2 (p2 e)))) 0) ((p2 (p1 w)) n) ((p2 (p2 w)) n))",
                     k=X.trans)
        return {"refl": refl, "sym": sym, "trans": trans}

    def related(self, l1, l2):
        from ..pca.coding import encode_list
        return self.obj.relates(encode_list(l1), encode_list(l2))

    def rec(self, f, g, params):
        """List recursion: f: P -> Y, g: Y×X -> Y; params is the QProduct P × List(X)."""
        rep = self.base.rec(f.rep, g.rep, Product(f.dom.carrier, self.base.obj))
        return qarrow(rep, params.obj, f.cod)

    def checks(self, f, g, params):
        """Recursion equations hold up to the codomain relation, and the mediator is extensional."""
        from ..pca.coding import list_concat
        h = self.rec(f, g, params)
        Y = f.cod
        ok_nil = all(Y.relates(h(pair(p, 0)), f(p)) for p in f.dom.carrier.support)
        ok_cons = True
        for z in params.obj.carrier.support:
            p, l = unpair(z)
            for a in self.elem.carrier.support[:4]:
                lhs = h(pair(p, list_concat(l, a)))
                rhs = g(pair(h(z), a))
                ok_cons = ok_cons and Y.relates(lhs, rhs)
        return {"mediator": h.validate(), "nil": ok_nil, "cons": ok_cons}


def q_list(X, max_len=None, N=None):
    return QList(X, max_len, N)


# -- images -------------------------------------------------------------------------

class QImage:
    """X --e--> (A, (f×f)*S) --m--> Y: e is the identity code, m is f."""

    def __init__(self, f):
        X, Y = f.dom, f.cod
        ff = Arrow(prog(r"\z. pair (f (p1 z)) (f (p2 z))", f=f.code), X.square.obj, Y.square.obj)
        rel = substitute(ff, Y.rel)
        wit = {"refl": prog(r"\x u. r (f x) 0", r=Y.refl, f=f.code),
               "sym": prog(r"\z w. s (pair (f (p1 z)) (f (p2 z))) w", s=Y.sym, f=f.code),
               "trans": prog(r"\t w. r (pair (pair (f (p1 (p1 t))) (f (p2 (p1 t)))) (f (p2 t))) w",
                             r=Y.trans, f=f.code)}
        self.f = f
        self.obj = QObject(X.carrier, rel, find_law_witnesses(X.carrier, rel, wit), f"Im({f.code.value % 9973})")
        self.epi = QArrow(Arrow(prog(r"\x. x"), X.carrier, X.carrier), X, self.obj, f.ext)
        self.mono = QArrow(f.rep, self.obj, Y, prog(r"\z w. w"))

    def checks(self):
        return {"factors": qarrows_equal(q_compose(self.mono, self.epi), self.f),
                "mono": is_q_mono(self.mono), "epi_ext": self.epi.validate()}


def q_image(f):
    return QImage(f)


# -- local exponentials -------------------------------------------------------------

class QExponential:
    """Extensional codes A -> B, related when they send related inputs to related outputs."""

    def __init__(self, X, Y, catalog=()):
        from ..collections import Collection, cap_support
        W = WeakExponential(X.carrier, Y.carrier, catalog)
        self.dom_obj, self.cod_obj = X, Y
        pts = X.rel.points()

        def tracks(c, d, k, fuel):
            return tri_all(pts, lambda p: apply_tri(
                k, [pair(p[0], p[1])], fuel,
                lambda v: Y.rel.decide(pair(_value(c, [unpair(p[0])[0]]), _value(d, [unpair(p[0])[1]])), v, fuel)))

        def first_table(c, d):
            entries = {}
            for q, r in pts:
                x, x2 = unpair(q)
                fx, gx = _value(c, [x]), _value(d, [x2])
                if fx is None or gx is None:
                    return None
                fib = Y.related(fx, gx)
                if not fib:
                    return None
                entries[pair(q, r)] = fib[0]
            return table_code(entries, 0)

        def extensional(c, fuel):
            return tri_and(lambda: W.obj.decide(c, fuel),
                           lambda: Tri.of(first_table(c, c) is not None))

        support = [c for c in W.obj.support if extensional(c, config.current().fuel) is IN]
        E = Collection(f"({X.name}⇒{Y.name})", extensional, cap_support(support),
                       {"kind": "qexp", "args": [X.carrier.recipe, Y.carrier.recipe]})
        EE = Product(E, E).obj

        def inner(z, k, fuel):
            c, d = unpair(z)
            return tracks(c, d, k, fuel)

        def cands(z):
            t = first_table(*unpair(z))
            return [t.value] if t is not None else []

        rel = Family(EE, _guarded(EE, inner), cands, f"Ext({X.name},{Y.name})",
                     recipe={"kind": "qexp_rel", "args": [X.rel.recipe, Y.rel.recipe]})
        self.obj = mk_qobject(E, rel, name=f"({X.name}⇒{Y.name})")
        self.pair_obj = QProduct(self.obj, X)
        self.ev = qarrow(Arrow(prog(r"\z. (p1 z) (p2 z)"), self.pair_obj.obj.carrier, Y.carrier),
                         self.pair_obj.obj, Y)

    def curry(self, f, Z):
        rep = Arrow(prog(r"\c. \a. f (pair c a)", f=f.code), Z.carrier, self.obj.carrier)
        return qarrow(rep, Z, self.obj)


def q_exponential(X, Y, catalog=()):
    return QExponential(X, Y, catalog)


def q_structure():
    """Constructors of the pretopos structure."""
    return {"terminal": q_terminal, "product": q_product, "equalizer": q_equalizer,
            "initial": q_initial, "coproduct": q_coproduct, "list": q_list, "image": q_image,
            "exponential": q_exponential}


# -- quotients ----------------------------------------------------------------------

def kernel_pair(f):
    """(f×f)*S over A×A."""
    X, Y = f.dom, f.cod
    ff = Arrow(prog(r"\z. pair (f (p1 z)) (f (p2 z))", f=f.code), X.square.obj, Y.square.obj)
    return substitute(ff, Y.rel)


def quotient_of(X, rho, witnesses=None):
    """(A, ρ) with the identity-code canonical arrow; ρ must be saturated and an equivalence."""
    from .props import saturation_witness
    XX = QProduct(X, X).obj
    if saturation_witness(rho, XX) is None:
        raise InvalidEquivalence("saturated", f"{rho.name} is not saturated over {X.name}×{X.name}")
    Q = mk_qobject(X.carrier, rho, witnesses, name=f"{X.name}/{rho.name}")
    canonical = qarrow(Arrow(prog(r"\x. x"), X.carrier, X.carrier), X, Q)
    return Q, canonical


def kernel_object(X, rho):
    """Σ(A×A, ρ) with the relation of X×X on first components, and its two projections."""
    XX = QProduct(X, X)
    T = TotalSigma(X.square.obj, rho)
    KK = Product(T.obj, T.obj).obj
    firsts = Arrow(prog(r"\z. pair (p1 (p1 z)) (p1 (p2 z))"), KK, XX.obj.square.obj)
    rel = substitute(firsts, XX.obj.rel)
    K = mk_qobject(T.obj, rel, {"refl": prog(r"\x u. r (p1 x) 0", r=XX.obj.refl)}, name=f"K({rho.name})")
    k1 = QArrow(Arrow(prog(r"\z. p1 (p1 z)"), T.obj, X.carrier), K, X, prog(r"\z w. p1 w"))
    k2 = QArrow(Arrow(prog(r"\z. p2 (p1 z)"), T.obj, X.carrier), K, X, prog(r"\z w. p2 w"))
    return K, k1, k2


def effectiveness(X, rho, Q, canonical):
    """Kernel pair of the canonical arrow bi-entails ρ, and the canonical arrow coequalizes it."""
    K, k1, k2 = kernel_object(X, rho)
    kp = kernel_pair(canonical)
    return {"kernel_pair": bi_entails(kp, rho, hints_there=[prog(r"\z w. w")],
                                      hints_back=[prog(r"\z w. w")]) is not None,
            "coequalizes": qarrows_equal(q_compose(canonical, k1), q_compose(canonical, k2),
                                         hints=[prog(r"\k u. p2 k")])}


def coequalizer_factor(X, rho, Q, h):
    """The factorization of h: X -> Z through X/ρ when h coequalizes the kernel of ρ."""
    from .qobject import qarrows_equal_witness
    K, k1, k2 = kernel_object(X, rho)
    w = qarrows_equal_witness(q_compose(h, k1), q_compose(h, k2))
    if w is None:
        return None
    ext = prog(r"\z r. w (pair z r) (k (pair z r) 0)", w=w.realizer, k=K.refl)
    return qarrow(Arrow(h.code, X.carrier, h.cod.carrier), Q, h.cod, ext=ext)


def stable_along_projection(X, rho, Z):
    """(X×Z)/(ρ×S_Z) and X/ρ × Z carry bi-entailing relations on the same carrier."""
    Q, _ = quotient_of(X, rho)
    left = QProduct(Q, Z).obj
    XZ = QProduct(X, Z).obj
    rel = product_relation(Q, Z, XZ.carrier)
    right, _ = quotient_of(XZ, rel)
    return bi_entails(left.rel, right.rel, hints_there=[prog(r"\z w. w")], hints_back=[prog(r"\z w. w")]) is not None


class QPullback:
    """Pullback of f: Y -> X and g: Z -> X: triples pair(pair(y, z), r) with r ⊩ R(f y, g z)."""

    def __init__(self, f, g):
        Y, Z, X = f.dom, g.dom, f.cod
        YZ = QProduct(Y, Z)
        fg = Arrow(prog(r"\v. pair (f (p1 v)) (g (p2 v))", f=f.code, g=g.code), YZ.obj.carrier, X.square.obj)
        T = TotalSigma(YZ.obj.carrier, substitute(fg, X.rel))
        P = T.obj
        firsts = Arrow(prog(r"\z. pair (p1 (p1 z)) (p1 (p2 z))"), Product(P, P).obj, YZ.obj.square.obj)
        rel = substitute(firsts, YZ.obj.rel)
        W = YZ.obj
        self.obj = QObject(P, rel, find_law_witnesses(P, rel, {
            "refl": prog(r"\x u. r (p1 x) 0", r=W.refl),
            "sym": prog(r"\z w. s (pair (p1 (p1 z)) (p1 (p2 z))) w", s=W.sym),
            "trans": prog(r"\t w. r (pair (pair (p1 (p1 (p1 t))) (p1 (p2 (p1 t)))) (p1 (p2 t))) w", r=W.trans)}),
            f"({Y.name}×_{X.name}{Z.name})")
        self.p1 = QArrow(Arrow(prog(r"\v. p1 (p1 v)"), P, Y.carrier), self.obj, Y, prog(r"\z w. p1 w"))
        self.p2 = QArrow(Arrow(prog(r"\v. p2 (p1 v)"), P, Z.carrier), self.obj, Z, prog(r"\z w. p2 w"))


def q_pullback(f, g):
    return QPullback(f, g)
