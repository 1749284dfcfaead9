"""Families of collections with dependent equivalences and actions, the K functor, small maps."""
from .. import config
from ..collections import Arrow, Product, apply_tri, same
from ..doctrine import check_entailment
from ..errors import IndeterminateVerdict, InvalidAction, InvalidEquivalence, InvalidFamily
from ..families import (Family, FibreCoproduct, FibreExponential, FibreList, FibreProduct, TotalSigma,
                        _guarded, initial_family, substitute, terminal_family)
from ..pca import Code, kleene_apply, prog, table_term
from ..pca.coding import decode_list, encode_list, pair, unpair
from ..pca.terms import Abs
from ..tri import IN, OUT, UNKNOWN, Tri, tri_all, tri_and
from ..universe import N0, N1, TauFamily, tau_substitute
from .qobject import QArrow, QObject, delta, discrete_relation, mk_qobject, q_compose, qarrow, qarrows_equal
from .structure import q_pullback

ACTION_LAWS = (1, 2, 3, 4)
S_LAWS = ("S-refl", "S-sym", "S-trans")
CANDIDATES = [r"\p w. w", r"\p w. 0", r"\p w. p1 w", r"\p w. p2 w", r"\p w. pair w w", r"\p w. pair 0 0"]
POINT_CAP = 256


def _apply(code, args):
    r = kleene_apply(code, list(args))
    if r.exhausted:
        raise IndeterminateVerdict("application ran out of fuel")
    if not r.ok:
        return None
    return r.value


def _table_witness(entries):
    first = next(iter(entries.values()))
    return Code.of(Abs(Abs(table_term(1, entries, first))))


def law_tri(points, S, w, fuel=None):
    """Every (point, premise, target) has {w}(point, premise) realizing S at target."""
    fuel = config.fuel_or_default(fuel)
    return tri_all(points, lambda p: apply_tri(w, [p[0], p[1]], fuel, lambda v: S.decide(p[2], v, fuel)))


def search_law(points, S, hints=()):
    """First verified law witness among hints, standard codes and a table, or None."""
    unknown = False
    for h in list(hints) + [prog(t) for t in CANDIDATES]:
        h = h if isinstance(h, Code) else Code(int(h))
        v = law_tri(points, S, h)
        if v is IN:
            return h
        unknown = unknown or v is UNKNOWN
    if not points:
        return prog(r"\p w. w")
    entries = {}
    for pt, _, target in points:
        fib = S.fibre(target)
        if not fib:
            break
        entries[pt] = fib[0]
    else:
        v = law_tri(points, S, _table_witness(entries))
        if v is IN:
            return _table_witness(entries)
        unknown = unknown or v is UNKNOWN
    if unknown:
        raise IndeterminateVerdict("law witness search ran out of fuel")
    return None


def fibre_relation_base(B):
    """Σ(A, B×B): points pair(a, pair(b, b'))."""
    return TotalSigma(B.base, FibreProduct(B, B).obj).obj


def discrete_fibre_relation(B):
    base = fibre_relation_base(B)

    def inner(z, w, fuel):
        b, b2 = unpair(unpair(z)[1])
        return Tri.of(w == 0 and b == b2)

    return Family(base, _guarded(base, inner), lambda z: [0] if len(set(unpair(unpair(z)[1]))) == 1 else [],
                  f"disc({B.name})", exact=True, recipe={"kind": "fdisc", "arg": B.recipe})


def small_discrete_relation(B):
    """The discrete relation as a τ-family: the singleton code on the diagonal, empty elsewhere."""
    code = prog(r"\z. ite (eq0 (p1 (p2 z)) (p2 (p2 z))) (\u. n1) (\u. n0) 0", n1=N1, n0=N0)
    return TauFamily(fibre_relation_base(B), code, name=f"sdisc({B.name})")


def top_fibre_relation(B):
    return terminal_family(fibre_relation_base(B))


class DepFamilyQ:
    """(B, S, σ) over X: S a relation on fibres, σ(q, b) transports b along q = pair(pair(a, a'), r)."""

    def __init__(self, X, B, S, sigma, witnesses=None, name=None):
        self.X, self.B, self.S = X, B, S
        self.sigma = sigma if isinstance(sigma, Code) else Code(int(sigma))
        self.name = name or f"({B.name},{S.name})"
        self.total = TotalSigma(X.carrier, B)
        if not same(S.base, fibre_relation_base(B)):
            raise InvalidFamily("S", "S must live over Σ(A, B×B)")
        self.witnesses = dict(witnesses or {})

    def act(self, q, b):
        v = _apply(self.sigma, [q, b])
        if v is None:
            raise InvalidAction("map", f"σ undefined at ({q}, {b})")
        return v

    def fibre(self, a):
        return self.B.fibre(a)

    def _rel_points(self):
        return [(z, r) for z, r in self.X.rel.points()][:POINT_CAP]

    def law_points(self, law):
        A, S = self.X.carrier, self.S
        out = []
        if law == "S-refl":
            out = [(pair(a, b), 0, pair(a, pair(b, b))) for a in A.support for b in self.fibre(a)]
        elif law == "S-sym":
            for z, s in S.points():
                a, (b, b2) = unpair(z)[0], unpair(unpair(z)[1])
                out.append((z, s, pair(a, pair(b2, b))))
        elif law == "S-trans":
            for a in A.support:
                fib = self.fibre(a)
                for b1 in fib:
                    for b2 in fib:
                        s1 = S.fibre(pair(a, pair(b1, b2)))
                        if not s1:
                            continue
                        for b3 in fib:
                            s2 = S.fibre(pair(a, pair(b2, b3)))
                            if s2:
                                out.append((pair(a, pair(pair(b1, b2), b3)), pair(s1[0], s2[0]),
                                            pair(a, pair(b1, b3))))
        elif law == 1:
            for z, r in self._rel_points():
                a, a2 = unpair(z)
                q = pair(z, r)
                for b in self.fibre(a):
                    for b2 in self.fibre(a):
                        for s in S.fibre(pair(a, pair(b, b2)))[:1]:
                            out.append((pair(q, pair(b, b2)), s, pair(a2, pair(self.act(q, b), self.act(q, b2)))))
        elif law == 2:
            for z in {z for z, _ in self._rel_points()}:
                a, a2 = unpair(z)
                rs = self.X.related(a, a2)
                for r in rs:
                    for r2 in rs:
                        for b in self.fibre(a):
                            out.append((pair(pair(z, pair(r, r2)), b), 0,
                                        pair(a2, pair(self.act(pair(z, r), b), self.act(pair(z, r2), b)))))
        elif law == 3:
            for a in A.support:
                for r in self.X.related(a, a):
                    for b in self.fibre(a):
                        out.append((pair(pair(a, r), b), 0, pair(a, pair(b, self.act(pair(pair(a, a), r), b)))))
        elif law == 4:
            sup = A.support
            for a in sup:
                for a2 in sup:
                    r1s = self.X.related(a, a2)
                    if not r1s:
                        continue
                    for a3 in sup:
                        r2s, r3s = self.X.related(a2, a3), self.X.related(a, a3)
                        if not r2s or not r3s:
                            continue
                        r1, r2, r3 = r1s[0], r2s[0], r3s[0]
                        for b in self.fibre(a):
                            direct = self.act(pair(pair(a, a3), r3), b)
                            stepped = self.act(pair(pair(a2, a3), r2), self.act(pair(pair(a, a2), r1), b))
                            out.append((pair(pair(pair(pair(a, a2), a3), pair(pair(r1, r2), r3)), b), 0,
                                        pair(a3, pair(direct, stepped))))
                            if len(out) >= POINT_CAP:
                                return out
        return out[:POINT_CAP]

    def check_map(self):
        """σ sends B(a) into B(a') along every realized R(a, a')."""
        for z, r in self._rel_points():
            a, a2 = unpair(z)
            for b in self.fibre(a):
                v = self.B.decide(a2, self.act(pair(z, r), b))
                if v is UNKNOWN:
                    raise IndeterminateVerdict("map check ran out of fuel")
                if v is OUT:
                    return False
        return True

    def validate(self):
        """Find or check all seven witnesses; InvalidAction names the first failing law."""
        if not self.check_map():
            raise InvalidAction("map", "σ leaves the fibres")
        for law in S_LAWS + ACTION_LAWS:
            given = self.witnesses.get(law)
            pts = self.law_points(law)
            if given is not None and law_tri(pts, self.S, given) is IN:
                continue
            found = search_law(pts, self.S, [given] if given is not None else [])
            if found is None:
                raise InvalidAction(law, f"no realizer for law {law} of {self.name}")
            self.witnesses[law] = found
        return self

    def __repr__(self):
        return f"DepFamilyQ{self.name}"


def mk_dep_family(X, B, S, sigma, witnesses=None, name=None):
    return DepFamilyQ(X, B, S, sigma, witnesses, name).validate()


IDENTITY_ACTION = prog(r"\q b. b")


def constant_family(X, C, name=None):
    """B(a) = C with the discrete relation and the identity action."""
    from ..families import constant_family as const
    B = const(X.carrier, C)
    return mk_dep_family(X, B, discrete_fibre_relation(B), IDENTITY_ACTION, name=name)


# -- morphisms -----------------------------------------------------------------------

class FamMorphism:
    """φ(a, b) ∈ C(a), preserving S and commuting with the actions up to T."""

    def __init__(self, F, G, code):
        self.F, self.G = F, G
        self.code = code if isinstance(code, Code) else Code(int(code))

    def __call__(self, a, b):
        v = _apply(self.code, [a, b])
        if v is None:
            raise InvalidFamily("map", f"undefined at ({a}, {b})")
        return v

    def law_points(self, law):
        F, G = self.F, self.G
        out = []
        if law == "S":
            for z, s in F.S.points():
                a, (b, b2) = unpair(z)[0], unpair(unpair(z)[1])
                out.append((z, s, pair(a, pair(self(a, b), self(a, b2)))))
        elif law == "action":
            for z, r in F._rel_points():
                a, a2 = unpair(z)
                q = pair(z, r)
                for b in F.fibre(a):
                    out.append((pair(q, b), 0, pair(a2, pair(self(a2, F.act(q, b)), G.act(q, self(a, b))))))
        return out[:POINT_CAP]

    def validate(self):
        for a in self.F.X.carrier.support:
            for b in self.F.fibre(a):
                v = self.G.B.decide(a, self(a, b))
                if v is UNKNOWN:
                    raise IndeterminateVerdict("map check ran out of fuel")
                if v is OUT:
                    raise InvalidFamily("map", f"({a}, {b}) leaves the target fibre")
        for law in ("S", "action"):
            if search_law(self.law_points(law), self.G.S) is None:
                raise InvalidFamily(law)
        return self


def fam_morphism(F, G, code):
    return FamMorphism(F, G, code).validate()


def fam_morphisms_equivalent(phi, psi):
    """T(φ b, ψ b) realized at every support point."""
    G = phi.G
    return all(G.S.fibre(pair(a, pair(phi(a, b), psi(a, b))))
               for a in phi.F.X.carrier.support for b in phi.F.fibre(a))


# -- structure on families -----------------------------------------------------------

def _componentwise(base, parts, split, name):
    """Relation over ``base`` whose realizers pair up realizers of the parts at split points."""
    def inner(z, w, fuel):
        pts = split(z)
        if pts is None:
            return OUT
        ws = [w] if len(pts) == 1 else list(unpair(w))
        return tri_all(list(zip(parts, pts, ws)), lambda t: t[0].decide(t[1], t[2], fuel))

    def cands(z):
        pts = split(z)
        if pts is None:
            return []
        fibs = [p.fibre(x) for p, x in zip(parts, pts)]
        if any(not f for f in fibs):
            return []
        if len(fibs) == 1:
            return list(fibs[0])
        return [pair(u, v) for u in fibs[0] for v in fibs[1]]

    return Family(base, _guarded(base, inner), cands, name, exact=True)


def fam_terminal(X):
    B = terminal_family(X.carrier)
    return mk_dep_family(X, B, top_fibre_relation(B), IDENTITY_ACTION, name="1")


def fam_initial(X):
    B = initial_family(X.carrier)
    return mk_dep_family(X, B, top_fibre_relation(B), IDENTITY_ACTION, name="0")


def fam_product(F, G):
    B = FibreProduct(F.B, G.B).obj
    base = fibre_relation_base(B)

    def split(z):
        a, (u, v) = unpair(z)[0], unpair(unpair(z)[1])
        (b, c), (b2, c2) = unpair(u), unpair(v)
        return [pair(a, pair(b, b2)), pair(a, pair(c, c2))]

    S = _componentwise(base, [F.S, G.S], split, f"({F.S.name}∧{G.S.name})")
    sigma = prog(r"\q z. pair (s q (p1 z)) (t q (p2 z))", s=F.sigma, t=G.sigma)
    return mk_dep_family(F.X, B, S, sigma, name=f"({F.name}×{G.name})")


def fam_coproduct(F, G):
    B = FibreCoproduct(F.B, G.B).obj
    base = fibre_relation_base(B)

    def inner(z, w, fuel):
        a, (u, v) = unpair(z)[0], unpair(unpair(z)[1])
        (tu, b), (tv, b2) = unpair(u), unpair(v)
        tag, s = unpair(w)
        if tu != tv or tag != tu:
            return OUT
        return (F.S if tu == 0 else G.S).decide(pair(a, pair(b, b2)), s, fuel)

    def cands(z):
        a, (u, v) = unpair(z)[0], unpair(unpair(z)[1])
        (tu, b), (tv, b2) = unpair(u), unpair(v)
        if tu != tv or tu not in (0, 1):
            return []
        return [pair(tu, s) for s in (F.S if tu == 0 else G.S).fibre(pair(a, pair(b, b2)))]

    S = Family(base, _guarded(base, inner), cands, f"({F.S.name}+{G.S.name})", exact=True)
    sigma = prog(r"\q z. pair (p1 z) (ite (p1 z) (\u. s q (p2 z)) (\u. t q (p2 z)) 0)", s=F.sigma, t=G.sigma)
    return mk_dep_family(F.X, B, S, sigma, name=f"({F.name}+{G.name})")


def fam_list(F, max_len=2):
    B = FibreList(F.B, max_len).obj
    base = fibre_relation_base(B)

    def inner(z, w, fuel):
        a, (l1, l2) = unpair(z)[0], unpair(unpair(z)[1])
        xs, ys, ws = decode_list(l1), decode_list(l2), decode_list(w)
        if not (len(xs) == len(ys) == len(ws)):
            return OUT
        return tri_all(list(zip(xs, ys, ws)), lambda t: F.S.decide(pair(a, pair(t[0], t[1])), t[2], fuel))

    def cands(z):
        a, (l1, l2) = unpair(z)[0], unpair(unpair(z)[1])
        xs, ys = decode_list(l1), decode_list(l2)
        if len(xs) != len(ys):
            return []
        per = [F.S.fibre(pair(a, pair(x, y))) for x, y in zip(xs, ys)]
        if any(not p for p in per):
            return []
        return [encode_list([p[0] for p in per])]

    S = Family(base, _guarded(base, inner), cands, f"List({F.S.name})", exact=True)
    sigma = prog(r"\q l. listrec 0 (\rest a acc. cnc acc (s q a)) l", s=F.sigma)
    return mk_dep_family(F.X, B, S, sigma, name=f"List{F.name}")


def fam_exponential(F, G):
    """Fibrewise codes B(a) -> C(a), related when S-related inputs go to T-related outputs."""
    E = FibreExponential(F.B, G.B)
    B = E.obj
    base = fibre_relation_base(B)

    def s_points(a):
        return [(pair(b, b2), s) for b in F.fibre(a) for b2 in F.fibre(a)
                for s in F.S.fibre(pair(a, pair(b, b2)))[:1]]

    def inner(z, k, fuel):
        a, (c, c2) = unpair(z)[0], unpair(unpair(z)[1])

        def tracked(p):
            b, b2 = unpair(p[0])
            u, v = _apply(Code(c), [b]), _apply(Code(c2), [b2])
            if u is None or v is None:
                return OUT
            return apply_tri(k, [p[0], p[1]], fuel, lambda t: G.S.decide(pair(a, pair(u, v)), t, fuel))

        return tri_all(s_points(a), tracked)

    def cands(z):
        a, (c, c2) = unpair(z)[0], unpair(unpair(z)[1])
        entries = {}
        for pb, _ in s_points(a):
            b, b2 = unpair(pb)
            u, v = _apply(Code(c), [b]), _apply(Code(c2), [b2])
            fib = G.S.fibre(pair(a, pair(u, v))) if u is not None and v is not None else ()
            if not fib:
                return []
            entries[pb] = fib[0]
        if not entries:
            return [prog(r"\p w. 0").value]
        return [_table_witness(entries).value]

    S = Family(base, _guarded(base, inner), cands, f"({F.S.name}⇒{G.S.name})")
    inv = r"(pair (pair (p2 (p1 q)) (p1 (p1 q))) (y (p1 q) (p2 q)))"
    sigma = prog(rf"\q c. \b. t q (c (s {inv} b))", s=F.sigma, t=G.sigma, y=F.X.sym)
    return mk_dep_family(F.X, B, S, sigma, name=f"({F.name}⇒{G.name})")


def _first_realizer_table(points):
    """Code of a table keyed by point, or the empty-table constant."""
    if not points:
        return prog(r"\p. 0")
    from ..pca import table_code
    return table_code(points, next(iter(points.values())))


def fam_equalizer(phi, psi):
    """E(a) = {pair(b, t) | t ⊩ T(φ b, ψ b)}; σ′ transports the T-witness by a synthesized table."""
    F, G = phi.F, phi.G
    A = F.X.carrier

    def inner(a, e, fuel):
        b, t = unpair(e)
        return tri_and(lambda: F.B.decide(a, b, fuel),
                       lambda: G.S.decide(pair(a, pair(phi(a, b), psi(a, b))), t, fuel))

    def cands(a):
        return [pair(b, t) for b in F.fibre(a) for t in G.S.fibre(pair(a, pair(phi(a, b), psi(a, b))))]

    B = Family(A, _guarded(A, inner), cands, f"Eq({F.name})", exact=True)
    base = fibre_relation_base(B)
    firsts = Arrow(prog(r"\z. pair (p1 z) (pair (p1 (p1 (p2 z))) (p1 (p2 (p2 z))))"), base, fibre_relation_base(F.B))
    S = substitute(firsts, F.S)
    table = {}
    for z, r in F._rel_points():
        a, a2 = unpair(z)
        q = pair(z, r)
        for e in B.fibre(a):
            b2 = F.act(q, unpair(e)[0])
            fib = G.S.fibre(pair(a2, pair(phi(a2, b2), psi(a2, b2))))
            if fib:
                table[pair(q, e)] = fib[0]
    sigma = prog(r"\q e. pair (s q (p1 e)) (t (pair q e))", s=F.sigma, t=_first_realizer_table(table))
    return mk_dep_family(F.X, B, S, sigma, name=f"Eq({F.name})")


def fam_image(phi):
    """I(a) = {pair(c, pair(b, t)) | t ⊩ T(φ b, c)} with T on the first component."""
    F, G = phi.F, phi.G
    A = F.X.carrier

    def inner(a, i, fuel):
        c, (b, t) = unpair(i)[0], unpair(unpair(i)[1])
        return tri_and(lambda: tri_and(lambda: G.B.decide(a, c, fuel), lambda: F.B.decide(a, b, fuel)),
                       lambda: G.S.decide(pair(a, pair(phi(a, b), c)), t, fuel))

    def cands(a):
        return [pair(c, pair(b, t)) for b in F.fibre(a) for c in G.fibre(a)
                for t in G.S.fibre(pair(a, pair(phi(a, b), c)))[:1]]

    B = Family(A, _guarded(A, inner), cands, f"Im({F.name})", exact=True)
    base = fibre_relation_base(B)
    firsts = Arrow(prog(r"\z. pair (p1 z) (pair (p1 (p1 (p2 z))) (p1 (p2 (p2 z))))"), base, fibre_relation_base(G.B))
    S = substitute(firsts, G.S)
    table = {}
    for z, r in F._rel_points():
        a, a2 = unpair(z)
        q = pair(z, r)
        for i in B.fibre(a):
            c, (b, _) = unpair(i)[0], unpair(unpair(i)[1])
            c2, b2 = G.act(q, c), F.act(q, b)
            fib = G.S.fibre(pair(a2, pair(phi(a2, b2), c2)))
            if fib:
                table[pair(q, i)] = fib[0]
    sigma = prog(r"\q i. pair (g q (p1 i)) (pair (f q (p1 (p2 i))) (t (pair q i)))",
                 g=G.sigma, f=F.sigma, t=_first_realizer_table(table))
    return mk_dep_family(F.X, B, S, sigma, name=f"Im({F.name})")


def famq_structure(X):
    return {"terminal": lambda: fam_terminal(X), "initial": lambda: fam_initial(X), "product": fam_product,
            "coproduct": fam_coproduct, "list": fam_list, "exponential": fam_exponential,
            "equalizer": fam_equalizer, "image": fam_image}


def is_small_family(F):
    """Membership in the small sub-bundle: B a τ-family and S small."""
    return isinstance(F.B, TauFamily) and isinstance(F.S, TauFamily)


# -- the K functor ---------------------------------------------------------------------

def k_relation(F):
    """(a,b) ~ (a',b') realized by pair(r, s): r ⊩ R(a,a') and s ⊩ S_{a'}(σ(a,a',r,b), b')."""
    T = F.total.obj
    TT = Product(T, T).obj

    def split(z):
        (a, b), (a2, b2) = unpair(unpair(z)[0]), unpair(unpair(z)[1])
        return a, b, a2, b2

    def inner(z, w, fuel):
        a, b, a2, b2 = split(z)
        r, s = unpair(w)

        def transported():
            moved = _apply(F.sigma, [pair(pair(a, a2), r), b])
            if moved is None:
                return OUT
            return F.S.decide(pair(a2, pair(moved, b2)), s, fuel)

        return tri_and(lambda: F.X.rel.decide(pair(a, a2), r, fuel), transported)

    def cands(z):
        a, b, a2, b2 = split(z)
        out = []
        for r in F.X.related(a, a2):
            moved = _apply(F.sigma, [pair(pair(a, a2), r), b])
            if moved is not None:
                out += [pair(r, s) for s in F.S.fibre(pair(a2, pair(moved, b2)))]
        return out

    return Family(TT, _guarded(TT, inner), cands, f"K({F.name})", exact=True)


def k_object(F):
    return mk_qobject(F.total.obj, k_relation(F), name=f"K{F.name}")


def k_functor(F, X=None):
    """[p1]: (Σ(A,B), K-relation) -> X, carrying F as its presentation."""
    if not F.witnesses:
        raise InvalidFamily("unvalidated", "validate the family first")
    K = k_object(F)
    arrow = QArrow(F.total.p1, K, F.X, prog(r"\z w. p1 w"))
    arrow.presentation = F
    return arrow


def k_on_morphisms(phi, KF=None, KG=None):
    """K([φ]) = [I(φ)]: pair(a, b) |-> pair(a, φ(a, b))."""
    KF = KF or k_functor(phi.F)
    KG = KG or k_functor(phi.G)
    rep = Arrow(prog(r"\z. pair (p1 z) (f (p1 z) (p2 z))", f=phi.code), KF.dom.carrier, KG.dom.carrier)
    return qarrow(rep, KF.dom, KG.dom)


def _iso_checks(there, back):
    from .qobject import q_identity
    return {"there": there.validate(), "back": back.validate(),
            "back_there": qarrows_equal(q_compose(back, there), q_identity(there.dom)),
            "there_back": qarrows_equal(q_compose(there, back), q_identity(back.dom))}


def k_preserves_terminal(X):
    K = k_functor(fam_terminal(X))
    there = qarrow(prog(r"\z. p1 z"), K.dom, X)
    back = qarrow(prog(r"\a. pair a 0"), X, K.dom)
    return _iso_checks(there, back)


def k_preserves_product(F, G):
    """K(F×G) ≅ K(F) ×_X K(G), by explicit mediators both ways."""
    KFG = k_functor(fam_product(F, G))
    PB = q_pullback(k_functor(F), k_functor(G))
    there = qarrow(prog(r"\w. pair (pair (pair (p1 w) (p1 (p2 w))) (pair (p1 w) (p2 (p2 w)))) (r (p1 w) 0)",
                        r=F.X.refl), KFG.dom, PB.obj)
    back = qarrow(prog(r"\v. (\a b a2 c r. pair a (pair b (t (pair (pair a2 a) (y (pair a a2) r)) c)))"
                       r" (p1 (p1 (p1 v))) (p2 (p1 (p1 v))) (p1 (p2 (p1 v))) (p2 (p2 (p1 v))) (p2 v)",
                       t=G.sigma, y=F.X.sym), PB.obj, KFG.dom)
    return _iso_checks(there, back)


def k_preserves_equalizer(phi, psi):
    """K(Eq(φ, ψ)) ≅ Eq(K φ, K ψ), with mediators tabulated on the witness components."""
    from .structure import q_equalizer
    E = fam_equalizer(phi, psi)
    KE = k_functor(E)
    Kphi, Kpsi = k_on_morphisms(phi), k_on_morphisms(psi)
    Q = q_equalizer(Kphi, Kpsi)
    rel = Kphi.cod.rel
    there_t, back_t = {}, {}
    for z in KE.dom.carrier.support:
        a, b = unpair(z)[0], unpair(unpair(z)[1])[0]
        fib = rel.fibre(pair(pair(a, phi(a, b)), pair(a, psi(a, b))))
        if fib:
            there_t[z] = fib[0]
    for v in Q.obj.carrier.support:
        a, b = unpair(unpair(v)[0])
        fib = phi.G.S.fibre(pair(a, pair(phi(a, b), psi(a, b))))
        if fib:
            back_t[v] = fib[0]
    there = qarrow(prog(r"\z. pair (pair (p1 z) (p1 (p2 z))) (t z)", t=_first_realizer_table(there_t)),
                   KE.dom, Q.obj)
    back = qarrow(prog(r"\v. pair (p1 (p1 v)) (pair (p2 (p1 v)) (t v))", t=_first_realizer_table(back_t)),
                  Q.obj, KE.dom)
    return _iso_checks(there, back)


def k_faithful(pairs):
    """For each (φ, ψ): K φ ≃ K ψ implies φ and ψ agree up to T on supports."""
    for phi, psi in pairs:
        if qarrows_equal(k_on_morphisms(phi), k_on_morphisms(psi)) and not fam_morphisms_equivalent(phi, psi):
            return False
    return True


def k_full(h, F, G):
    """A QArrow h: K F -> K G over X restricts fibrewise to a morphism φ with K φ ≃ h."""
    from .qobject import qarrows_equal_witness
    KF, KG = k_functor(F), k_functor(G)
    over = qarrows_equal_witness(q_compose(KG, h), KF)
    if over is None:
        return None
    code = prog(r"\a b. (\z. (\v. s (pair (pair (p1 v) a) (w z (k z 0))) (p2 v)) (h z)) (pair a b)",
                s=G.sigma, w=over.realizer, k=KF.dom.refl, h=h.code)
    try:
        phi = fam_morphism(F, G, code)
    except InvalidFamily:
        return None
    return phi if qarrows_equal(k_on_morphisms(phi, KF, KG), h) else None


def class_count(Q):
    """Number of equivalence classes met on the carrier support."""
    sup = list(Q.carrier.support)
    parent = {x: x for x in sup}

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, x in enumerate(sup):
        for y in sup[i + 1:]:
            if Q.relates(x, y):
                parent[root(x)] = root(y)
    return len({root(x) for x in sup})


# -- small maps ---------------------------------------------------------------------------

def is_small_map(f, presentation=None):
    """f is iso over its codomain to K of a small presentation."""
    F = presentation or getattr(f, "presentation", None)
    if F is None or not is_small_family(F):
        return False
    K = k_functor(F)
    if f.dom is K.dom:
        return qarrows_equal(K, f)
    if not (same(f.dom.carrier, K.dom.carrier) and same(f.cod.carrier, K.cod.carrier)):
        return False
    try:
        there = qarrow(prog(r"\x. x"), f.dom, K.dom)
        back = qarrow(prog(r"\x. x"), K.dom, f.dom)
    except InvalidEquivalence:
        return False
    return all(_iso_checks(there, back).values()) and qarrows_equal(q_compose(K, there), f)


def pullback_family(F, g):
    """g*F over Y for g: Y -> X: reindexed B and S, σ composed with the extensionality of g."""
    Y = g.dom
    B = tau_substitute(g.rep, F.B) if isinstance(F.B, TauFamily) else substitute(g.rep, F.B)
    base = fibre_relation_base(B)
    reidx = Arrow(prog(r"\z. pair (g (p1 z)) (p2 z)", g=g.code), base, F.S.base)
    S = tau_substitute(reidx, F.S) if isinstance(F.S, TauFamily) else substitute(reidx, F.S)
    sigma = prog(r"\q b. s (pair (pair (g (p1 (p1 q))) (g (p2 (p1 q)))) (e (p1 q) (p2 q))) b",
                 s=F.sigma, g=g.code, e=g.ext)
    return mk_dep_family(Y, B, S, sigma, name=f"{F.name}[g]")


def small_pullback_check(F, g):
    """The pulled-back presentation is small, and K of it is the pullback of K F along g."""
    G = pullback_family(F, g)
    KG = k_functor(G)
    PB = q_pullback(k_functor(F), g)
    there = qarrow(prog(r"\w. pair (pair (pair (g (p1 w)) (p2 w)) (p1 w)) (r (g (p1 w)) 0)",
                        g=g.code, r=F.X.refl), KG.dom, PB.obj)
    back = qarrow(prog(r"\v. (\a b y r. pair y (s (pair (pair a (g y)) r) b))"
                       r" (p1 (p1 (p1 v))) (p2 (p1 (p1 v))) (p2 (p1 v)) (p2 v)", g=g.code, s=F.sigma),
                  PB.obj, KG.dom)
    out = _iso_checks(there, back)
    out["small"] = is_small_map(KG)
    return out


# -- embeddings ------------------------------------------------------------------------------

def delta_c(B):
    """[p1]: (Σ(A,B), ∃_Δ⊤) -> Δ(A)."""
    T = TotalSigma(B.base, B)
    D = delta(B.base)
    obj = QObject(T.obj, discrete_relation(T.obj), delta(T.obj).witnesses, name=f"Δc({B.name})")
    return QArrow(T.p1, obj, D, prog(r"\z w. pair (p1 (p1 w)) 0"))


def delta_s(B):
    """The small presentation of Δ_c(B) for a τ-family B."""
    return mk_dep_family(delta(B.base), B, small_discrete_relation(B), IDENTITY_ACTION, name=f"Δs({B.name})")


def delta_p(P):
    """A proposition over A as a proposition over Δ(A); saturation is immediate."""
    return P


def delta_p_entailment(P, Q, r):
    """A witness of P ⊑ Q is also a witness between the images."""
    return check_entailment(delta_p(P), delta_p(Q), r)


def delta_ps(P):
    from ..universe import as_small
    return as_small(P)


def delta_embeddings():
    from .qobject import delta_arrow
    return {"Delta": delta, "Delta_arrow": delta_arrow, "Delta_c": delta_c, "Delta_s": delta_s,
            "Delta_p": delta_p, "Delta_ps": delta_ps}
