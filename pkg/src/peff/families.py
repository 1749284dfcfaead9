"""Families of realized collections indexed over a base collection.

A family C over A assigns to each x in A a collection C(x); arrows between
families over the same base are codes taking (x, x').
"""
from . import config
from .collections import (ID_CODE, Arrow, Collection, _evaluate, apply_tri, arrows_equal,
                          bounded_lists, cap_support, compose, diagonal, same)
from .errors import DomainMismatch, PreconditionFailed
from .pca import Code, kleene_apply, prog, table_code
from .pca.coding import decode_list, pair, short, unpair
from .tri import IN, OUT, UNKNOWN, Tri, tri_all, tri_and


class Family:
    """decide(x, x', fuel) -> Tri, with candidate fibre members per base point.

    ``candidates(x)`` may overshoot; listed fibres keep only verified members
    unless ``exact`` says the candidates are already members.
    """

    def __init__(self, base, decider, candidates, name, exact=False, recipe=None):
        self.base = base
        self._decider = decider
        self._candidates = candidates
        self.name = name
        self.exact = exact
        self.recipe = recipe if recipe is not None else {"kind": "opaque", "name": name}
        self._fibres = {}

    def decide(self, x, xp, fuel=None):
        return self._decider(x, xp, config.fuel_or_default(fuel))

    def fibre(self, x):
        hit = self._fibres.get(x)
        if hit is None:
            items = cap_support(int(c) for c in self._candidates(x))
            if not self.exact:
                items = tuple(c for c in items if self.decide(x, c) is IN)
            self._fibres[x] = hit = items
        return hit

    @property
    def fibre_support(self):
        return {x: self.fibre(x) for x in self.base.support}

    def points(self):
        """All (x, x') with x in the base support and x' in the listed fibre."""
        return [(x, xp) for x in self.base.support for xp in self.fibre(x)]

    def __repr__(self):
        return f"Family({self.name} over {self.base.name})"


def _guarded(base, inner):
    return lambda x, xp, fuel: tri_and(lambda: base.decide(x, fuel), lambda: inner(x, xp, fuel))


def explicit_family(base, fibres, name=None):
    """Family with the given finite fibres; points missing from ``fibres`` are empty."""
    table = {x: tuple(v) for x, v in fibres.items()}
    members = {x: frozenset(v) for x, v in table.items()}
    return Family(base, _guarded(base, lambda x, xp, fuel: Tri.of(xp in members.get(x, ()))),
                  lambda x: table.get(x, ()), name or f"fam{sorted(table.items())}", exact=True,
                  recipe={"kind": "explicit", "base": base.recipe,
                          "fibres": {str(k): list(v) for k, v in table.items()}})


def constant_family(base, C, name=None):
    return Family(base, _guarded(base, lambda x, xp, fuel: C.decide(xp, fuel)),
                  lambda x: C.support, name or f"const({C.name})", exact=True,
                  recipe={"kind": "constant", "base": base.recipe, "value": C.recipe})


def program_family(base, code, candidates, name):
    """{x' | {code}(x, x') = 0}, with the given candidate fibre members."""
    code = code if isinstance(code, Code) else Code(int(code))

    def inner(x, xp, fuel):
        status, v = _evaluate(code, [x, xp], fuel)
        return status if status is not IN else Tri.of(v == 0)

    return Family(base, _guarded(base, inner), candidates, name,
                  recipe={"kind": "program", "base": base.recipe, "code": code.value})


def singleton_family(base, name=None):
    """x |-> {x}."""
    return Family(base, _guarded(base, lambda x, xp, fuel: Tri.of(xp == x)), lambda x: (x,),
                  name or f"single({base.name})", exact=True)


# -- maps between families ---------------------------------------------------------

class FamilyMap:
    def __init__(self, code, dom, cod):
        if not same(dom.base, cod.base):
            raise DomainMismatch("family maps need a common base")
        self.code = code if isinstance(code, Code) else Code(int(code))
        self.dom = dom
        self.cod = cod

    def __call__(self, x, xp, fuel=None):
        r = kleene_apply(self.code, [x, xp], fuel)
        if not r.ok:
            from .errors import IndeterminateVerdict
            if r.exhausted:
                raise IndeterminateVerdict("family map ran out of fuel")
            raise PreconditionFailed(f"family map undefined at ({x}, {xp})")
        return r.value

    def check(self, fuel=None):
        fuel = config.fuel_or_default(fuel)
        return tri_all(self.dom.points(),
                       lambda p: apply_tri(self.code, list(p), fuel,
                                           lambda v: self.cod.decide(p[0], v, fuel)))

    def __repr__(self):
        return f"FamilyMap({short(self.code.value)}: {self.dom.name} -> {self.cod.name})"


def fmap(text, dom, cod, **env):
    return FamilyMap(prog(text, **env), dom, cod)


def family_maps_equal_tri(m, n, fuel=None):
    fuel = config.fuel_or_default(fuel)

    def agree(p):
        a, va = _evaluate(m.code, list(p), fuel)
        b, vb = _evaluate(n.code, list(p), fuel)
        if UNKNOWN in (a, b):
            return UNKNOWN
        return Tri.of(a is b and va == vb)

    return tri_all(m.dom.points(), agree)


def family_maps_equal(m, n, fuel=None):
    return bool(family_maps_equal_tri(m, n, fuel))


def fm_compose(m, n):
    """m after n."""
    return FamilyMap(prog(r"\x y. m x (n x y)", m=m.code, n=n.code), n.dom, m.cod)


FM_ID = prog(r"\x y. y")


def fm_identity(C):
    return FamilyMap(FM_ID, C, C)


def is_iso(forward, backward):
    """Both composites are identities on listed fibres."""
    return (family_maps_equal(fm_compose(backward, forward), fm_identity(forward.dom))
            and family_maps_equal(fm_compose(forward, backward), fm_identity(forward.cod)))


# -- substitution, Σ and Π -----------------------------------------------------------

class _PointCache:
    """Values of an arrow on points, memoized."""

    def __init__(self, f):
        self.f = f
        self.values = {}

    def status(self, x, fuel):
        hit = self.values.get(x)
        if hit is None:
            hit = _evaluate(self.f.code, [x], fuel)
            if hit[0] is not UNKNOWN:
                self.values[x] = hit
        return hit

    def value(self, x):
        s, v = self.status(x, config.current().fuel)
        return v if s is IN else None

    def preimages(self, y):
        return [a for a in self.f.dom.support if self.value(a) == y]


def substitute(f, C):
    """C reindexed along f: x' in C(f x) for x in dom f."""
    if not same(f.cod, C.base):
        raise DomainMismatch(f"cannot reindex {C} along {f}")
    cache = _PointCache(f)

    def inner(x, xp, fuel):
        s, v = cache.status(x, fuel)
        return s if s is not IN else C.decide(v, xp, fuel)

    def cands(x):
        v = cache.value(x)
        return () if v is None else C.fibre(v)

    return Family(f.dom, _guarded(f.dom, inner), cands, f"{C.name}[{short(f.code.value)}]", exact=True,
                  recipe={"kind": "substitute", "arrow": f.code.value, "dom": f.dom.recipe, "family": C.recipe})


def substitute_map(f, k, dom=None, cod=None):
    """Reindex a family map k: C -> D along f."""
    return FamilyMap(prog(r"\x y. k (n x) y", k=k.code, n=f.code),
                     dom or substitute(f, k.dom), cod or substitute(f, k.cod))


def sigma_along(f, C):
    """Σ_f C over cod f: members pair(a, c) with f(a) = x and c in C(a)."""
    if not same(f.dom, C.base):
        raise DomainMismatch(f"{C} is not over the domain of {f}")
    cache = _PointCache(f)

    def inner(y, z, fuel):
        a, c = unpair(z)

        def hits():
            s, v = cache.status(a, fuel)
            return s if s is not IN else Tri.of(v == y)

        return tri_and(hits, lambda: C.decide(a, c, fuel))

    def cands(y):
        return [pair(a, c) for a in cache.preimages(y) for c in C.fibre(a)]

    return Family(f.cod, _guarded(f.cod, inner), cands, f"Σ[{short(f.code.value)}]{C.name}", exact=True,
                  recipe={"kind": "sigma", "arrow": f.code.value, "cod": f.cod.recipe, "family": C.recipe})


def sigma_map(f, m, dom=None, cod=None):
    """Σ_f on a family map m: C -> C'."""
    return FamilyMap(prog(r"\x z. pair (p1 z) (m (p1 z) (p2 z))", m=m.code),
                     dom or sigma_along(f, m.dom), cod or sigma_along(f, m.cod))


def sigma_transpose(f, phi, C, D):
    """Σ_f C -> D  gives  C -> f*D."""
    return FamilyMap(prog(r"\a c. phi (n a) (pair a c)", phi=phi.code, n=f.code), C, substitute(f, D))


def sigma_untranspose(f, psi, C, D):
    """C -> f*D  gives  Σ_f C -> D."""
    return FamilyMap(prog(r"\y z. psi (p1 z) (p2 z)", psi=psi.code), sigma_along(f, C), D)


def code_catalog(points, fibre_of, extra=()):
    """Candidate codes sending each point into its fibre: a table, constants, identity."""
    out = [ID_CODE, prog(r"\t. 0")] + list(extra)
    firsts = {}
    for a in points:
        fib = fibre_of(a)
        if not fib:
            return out
        firsts[a] = fib[0]
    if firsts:
        values = set(firsts.values())
        if len(values) == 1:
            out.append(prog(r"\t. v", v=values.pop()))
        out.append(table_code(firsts, next(iter(firsts.values()))))
    return out


class WeakPi:
    def __init__(self, f, C, extra=()):
        if not same(f.dom, C.base):
            raise DomainMismatch(f"{C} is not over the domain of {f}")
        self.f, self.C = f, C
        cache = _PointCache(f)
        self._cache = cache

        def inner(y, c, fuel):
            return tri_all(cache.preimages(y),
                           lambda a: apply_tri(c, [a], fuel, lambda v: C.decide(a, v, fuel)))

        def cands(y):
            return code_catalog(cache.preimages(y), C.fibre, extra)

        self.obj = Family(f.cod, _guarded(f.cod, inner), cands, f"Π[{short(f.code.value)}]{C.name}",
                          recipe={"kind": "pi", "arrow": f.code.value, "family": C.recipe, "cod": f.cod.recipe})
        self.ev = FamilyMap(prog(r"\x y. y x"), substitute(f, self.obj), C)

    def __iter__(self):
        return iter((self.obj, self.ev))

    def transpose(self, g, D):
        """g: f*D -> C gives g': D -> Π_f C with ev ∘ f*(g') ≈ g."""
        return FamilyMap(prog(r"\y d. \a. g a d", g=g.code), D, self.obj)


def weak_pi_along(f, C, extra=()):
    return WeakPi(f, C, extra)


# -- total objects and the slice equivalence ----------------------------------------

class TotalSigma:
    def __init__(self, A, B):
        if not same(A, B.base):
            raise DomainMismatch(f"{B} is not over {A}")
        self.base, self.family = A, B

        def decide(z, fuel):
            a, b = unpair(z)
            return tri_and(lambda: A.decide(a, fuel), lambda: B.decide(a, b, fuel))

        support = cap_support(pair(a, b) for a in A.support for b in B.fibre(a))
        self.obj = Collection(f"Σ({A.name},{B.name})", decide, support,
                              {"kind": "total", "base": A.recipe, "family": B.recipe})
        self.p1 = Arrow(prog("p1"), self.obj, A)

    def __iter__(self):
        return iter((self.obj, self.p1))


def total_sigma(A, B):
    return TotalSigma(A, B)


def sigma_arrow(f, C, source=None, target=None):
    """Σ(f, C): Σ(A, f*C) -> Σ(B, C), x |-> pair(f(p1 x), p2 x)."""
    source = source or TotalSigma(f.dom, substitute(f, C))
    target = target or TotalSigma(f.cod, C)
    return Arrow(prog(r"\x. pair (n (p1 x)) (p2 x)", n=f.code), source.obj, target.obj)


def check_sigma_pullback(f, C):
    """The square (Σ(f,C), p1; p1, f) is a pullback on supports.

    Every pair (a, z) with f(a) = p1 z has exactly one source point over it,
    namely pair(a, p2 z), and commutativity holds.
    """
    source, target = TotalSigma(f.dom, substitute(f, C)), TotalSigma(f.cod, C)
    top = sigma_arrow(f, C, source, target)
    if not arrows_equal(compose(f, source.p1), compose(target.p1, top)):
        return False
    images = {}
    for s in source.obj.support:
        images.setdefault((unpair(s)[0], top(s)), []).append(s)
    for a in f.dom.support:
        fa = f(a)
        for z in target.obj.support:
            if unpair(z)[0] != fa:
                continue
            expected = pair(a, unpair(z)[1])
            if source.obj.decide(expected) is not IN:
                return False
            if images.get((a, z), [expected]) != [expected]:
                return False
    return True


def slice_to_family(e):
    """J_A: an arrow e: B -> A gives the family x |-> {b in B | e(b) = x}."""
    A, B = e.cod, e.dom
    cache = _PointCache(e)

    def inner(x, b, fuel):
        def hits():
            s, v = cache.status(b, fuel)
            return s if s is not IN else Tri.of(v == x)
        return tri_and(lambda: B.decide(b, fuel), hits)

    return Family(A, _guarded(A, inner), cache.preimages, f"J({short(e.code.value)})", exact=True,
                  recipe={"kind": "fibres_of", "arrow": e.code.value, "dom": B.recipe, "cod": A.recipe})


def family_to_slice(B):
    """I_A: a family B over A gives the projection Σ(A, B) -> A."""
    return TotalSigma(B.base, B).p1


def family_map_to_slice(n, source=None, target=None):
    """I_A on maps: Σ(A,B) -> Σ(A,C), x |-> pair(p1 x, n(p1 x, p2 x))."""
    source = source or TotalSigma(n.dom.base, n.dom)
    target = target or TotalSigma(n.cod.base, n.cod)
    return Arrow(prog(r"\x. pair (p1 x) (n (p1 x) (p2 x))", n=n.code), source.obj, target.obj)


def slice_roundtrip_isos(e):
    """Arrows B -> Σ(A, J e) and back exhibiting I(J(e)) ≅ e over A."""
    T = TotalSigma(e.cod, slice_to_family(e))
    there = Arrow(prog(r"\b. pair (e b) b", e=e.code), e.dom, T.obj)
    back = Arrow(prog("p2"), T.obj, e.dom)
    return T, there, back


def family_roundtrip_isos(C):
    """Family maps C -> J(I(C)) and back."""
    T = TotalSigma(C.base, C)
    JI = slice_to_family(T.p1)
    return JI, FamilyMap(prog(r"\x c. pair x c"), C, JI), FamilyMap(prog(r"\x z. p2 z"), JI, C)


def pullback_via_families(f, e):
    """I ∘ f* ∘ J applied to e: B -> A' along f: A -> A'."""
    return TotalSigma(f.dom, substitute(f, slice_to_family(e)))


def mediator_univprod(f, g, left, right, fibre_prod=None):
    """Mediator into Σ(B, C ×_B D) for f into Σ(B,C) and g into Σ(B,D)."""
    if not arrows_equal(compose(left.p1, f), compose(right.p1, g)):
        raise PreconditionFailed("first projections of f and g differ")
    fp = fibre_prod or fibre_product(left.family, right.family)
    target = TotalSigma(left.base, fp.obj)
    return Arrow(prog(r"\x. pair (p1 (f x)) (pair (p2 (f x)) (p2 (g x)))", f=f.code, g=g.code),
                 f.dom, target.obj), target, fp


def mediator_univsig(g, h, f, source, D):
    """Mediator into Σ(B, f*D) for g into Σ(C,D), h into B, f: B -> C with f∘h ≈ p1∘g."""
    if not arrows_equal(compose(f, h), compose(source.p1, g)):
        raise PreconditionFailed("the square does not commute")
    target = TotalSigma(f.dom, substitute(f, D))
    return Arrow(prog(r"\x. pair (h x) (p2 (g x))", h=h.code, g=g.code), g.dom, target.obj), target


# -- fibrewise structure -------------------------------------------------------------

def terminal_family(A):
    return Family(A, _guarded(A, lambda x, xp, fuel: Tri.of(xp == 0)), lambda x: (0,),
                  f"1_{A.name}", exact=True, recipe={"kind": "top", "base": A.recipe})


def initial_family(A):
    return Family(A, lambda x, xp, fuel: OUT, lambda x: (), f"0_{A.name}", exact=True,
                  recipe={"kind": "bottom", "base": A.recipe})


class FibreProduct:
    def __init__(self, B, C):
        if not same(B.base, C.base):
            raise DomainMismatch("fibre product needs a common base")
        A = B.base

        def inner(x, z, fuel):
            b, c = unpair(z)
            return tri_and(lambda: B.decide(x, b, fuel), lambda: C.decide(x, c, fuel))

        self.obj = Family(A, _guarded(A, inner),
                          lambda x: [pair(b, c) for b, c in diagonal(B.fibre(x), C.fibre(x))],
                          f"({B.name}×{C.name})", exact=True,
                          recipe={"kind": "meet", "args": [B.recipe, C.recipe]})
        self.p1 = FamilyMap(prog(r"\x y. p1 y"), self.obj, B)
        self.p2 = FamilyMap(prog(r"\x y. p2 y"), self.obj, C)

    def mediator(self, m, n):
        return FamilyMap(prog(r"\x y. pair (m x y) (n x y)", m=m.code, n=n.code), m.dom, self.obj)


def fibre_product(B, C):
    return FibreProduct(B, C)


class FibreEqualizer:
    def __init__(self, n, m):
        B = n.dom
        A = B.base

        def inner(x, xp, fuel):
            def equal():
                a, va = _evaluate(n.code, [x, xp], fuel)
                b, vb = _evaluate(m.code, [x, xp], fuel)
                if UNKNOWN in (a, b):
                    return UNKNOWN
                return Tri.of(a is IN and b is IN and va == vb)
            return tri_and(lambda: B.decide(x, xp, fuel), equal)

        self.obj = Family(A, _guarded(A, inner), B.fibre, f"Eq({short(n.code.value)},{short(m.code.value)})")
        self.inclusion = FamilyMap(FM_ID, self.obj, B)


def fibre_equalizer(n, m):
    return FibreEqualizer(n, m)


class FibreCoproduct:
    def __init__(self, B, C):
        A = B.base

        def inner(x, z, fuel):
            tag, v = unpair(z)
            if tag == 0:
                return B.decide(x, v, fuel)
            if tag == 1:
                return C.decide(x, v, fuel)
            return OUT

        def cands(x):
            left = [pair(0, b) for b in B.fibre(x)]
            right = [pair(1, c) for c in C.fibre(x)]
            out = []
            for i in range(max(len(left), len(right))):
                out += left[i:i + 1] + right[i:i + 1]
            return out

        self.obj = Family(A, _guarded(A, inner), cands, f"({B.name}+{C.name})", exact=True,
                          recipe={"kind": "join", "args": [B.recipe, C.recipe]})
        self.j1 = FamilyMap(prog(r"\x y. pair 0 y"), B, self.obj)
        self.j2 = FamilyMap(prog(r"\x y. pair 1 y"), C, self.obj)

    def copair(self, m, n):
        code = prog(r"\x y. ite (p1 y) (\u. m x (p2 y)) (\u. n x (p2 y)) 0", m=m.code, n=n.code)
        return FamilyMap(code, self.obj, m.cod)


def fibre_coproduct(B, C):
    return FibreCoproduct(B, C)


class FibreList:
    def __init__(self, B, max_len=None):
        A = B.base
        L = config.current().list_cap if max_len is None else max_len

        def inner(x, l, fuel):
            return tri_all(decode_list(l), lambda b: B.decide(x, b, fuel))

        self.obj = Family(A, _guarded(A, inner), lambda x: bounded_lists(B.fibre(x), L),
                          f"List({B.name})", exact=True, recipe={"kind": "list", "arg": B.recipe})
        self.empty = FamilyMap(prog(r"\x y. 0"), terminal_family(A), self.obj)
        self.cons = FamilyMap(prog(r"\x y. cnc (p1 y) (p2 y)"), FibreProduct(self.obj, B).obj, self.obj)


def fibre_list(B, max_len=None):
    return FibreList(B, max_len)


class FibreExponential:
    def __init__(self, B, C, extra=()):
        A = B.base

        def inner(x, c, fuel):
            return tri_all(B.fibre(x),
                           lambda t: apply_tri(c, [t], fuel, lambda v: C.decide(x, v, fuel)))

        def cands(x):
            src = B.fibre(x)
            tgt = C.fibre(x)
            out = [ID_CODE, prog(r"\t. 0")] + list(extra)
            out += [prog(r"\t. v", v=v) for v in tgt[:3]]
            if src and tgt:
                out.append(table_code({t: tgt[0] for t in src}, tgt[0]))
            return out

        self.left, self.right = B, C
        self.obj = Family(A, _guarded(A, inner), cands, f"({B.name}⇒{C.name})",
                          recipe={"kind": "imp", "args": [B.recipe, C.recipe]})
        self.ev = FamilyMap(prog(r"\x y. (p1 y) (p2 y)"), FibreProduct(self.obj, B).obj, C)

    def curry(self, m, D):
        """m: D ×_A B -> C gives D -> (B ⇒ C)."""
        return FamilyMap(prog(r"\x d. \t. m x (pair d t)", m=m.code), D, self.obj)


def fibre_exponential(B, C, extra=()):
    return FibreExponential(B, C, extra)


def fibre_structure(A):
    """The fibrewise structure of families over A, as constructors."""
    return {
        "terminal": lambda: terminal_family(A),
        "product": fibre_product,
        "equalizer": fibre_equalizer,
        "initial": lambda: initial_family(A),
        "coproduct": fibre_coproduct,
        "list": fibre_list,
        "exponential": fibre_exponential,
    }


# -- the two presentations along a first projection ----------------------------------

def sigma_prime(P, R):
    """Σ'_{p1} R over A for R over A×B: members pair(b, r) with r in R(pair(x, b))."""
    A, B = P.left, P.right

    def inner(x, z, fuel):
        b, r = unpair(z)
        return tri_and(lambda: B.decide(b, fuel), lambda: R.decide(pair(x, b), r, fuel))

    return Family(A, _guarded(A, inner),
                  lambda x: [pair(b, r) for b in B.support for r in R.fibre(pair(x, b))],
                  f"Σ'{R.name}", exact=True)


def pi_prime(P, R):
    """Π'_{p1} R over A: codes c with {c}(t) in R(pair(x, t)) for t in B."""
    A, B = P.left, P.right

    def inner(x, c, fuel):
        return tri_all(B.support, lambda t: apply_tri(c, [t], fuel,
                                                       lambda v: R.decide(pair(x, t), v, fuel)))

    def cands(x):
        firsts = {}
        for t in B.support:
            fib = R.fibre(pair(x, t))
            if not fib:
                return [ID_CODE]
            firsts[t] = fib[0]
        return [ID_CODE, table_code(firsts, 0)] if firsts else [ID_CODE]

    return Family(A, _guarded(A, inner), cands, f"Π'{R.name}")


def remark_isos(P, R):
    """Family maps Σ_{p1}R <-> Σ'R and Π_{p1}R <-> Π'R over A."""
    S = sigma_along(P.p1, R)
    Sp = sigma_prime(P, R)
    s_to = FamilyMap(prog(r"\x z. pair (p2 (p1 z)) (p2 z)"), S, Sp)
    s_from = FamilyMap(prog(r"\x w. pair (pair x (p1 w)) (p2 w)"), Sp, S)
    Pi = WeakPi(P.p1, R).obj
    Pp = pi_prime(P, R)
    p_to = FamilyMap(prog(r"\x c. \t. c (pair x t)"), Pi, Pp)
    p_from = FamilyMap(prog(r"\x c. \y. c (p2 y)"), Pp, Pi)
    return (s_to, s_from), (p_to, p_from)
