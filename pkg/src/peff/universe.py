"""Inductive set codes, their membership relations, and families of sets.

Codes: n0 = p(1,0), n1 = p(1,1), σ(a,b) = p(2,p(a,b)), π(a,b) = p(3,p(a,b)),
a⊕b = p(4,p(a,b)), list(a) = p(5,a), id(a,x,y) = p(6,p(a,p(x,y))). In σ and
π the second component b is a program sending members of a to codes.

``set``, ``member`` and ``nonmember`` are computed together by structural
recursion, i.e. as the least fixpoint of their defining clauses.
"""
import itertools
import re
from dataclasses import dataclass

from . import config
from .collections import Arrow, Collection, _evaluate, arrows_equal, bounded_lists, compose
from .errors import NotASetCode, NotSmall, PresentationInvalid, TermSyntaxError
from .families import (Family, FamilyMap, FibreCoproduct, FibreEqualizer, FibreExponential,
                       FibreList, FibreProduct, TotalSigma, WeakPi, _guarded, code_catalog,
                       family_maps_equal, fm_compose, fm_identity, initial_family, sigma_along,
                       terminal_family)
from .pca import Code, kleene_apply, prog, table_code
from .pca.coding import decode_list, pair, short, unpair
from .tri import IN, OUT, UNKNOWN, Tri, tri_all, tri_and, tri_any, tri_or

N0 = pair(1, 0)
N1 = pair(1, 1)


def sigma_code(a, b):
    return pair(2, pair(a, int(b)))


def pi_code(a, b):
    return pair(3, pair(a, int(b)))


def plus_code(a, b):
    return pair(4, pair(a, b))


def list_code(a):
    return pair(5, a)


def id_code(a, x, y):
    return pair(6, pair(a, pair(x, y)))


def const_fn(c):
    """Code of Λt.c, the constant dependent family."""
    return prog(r"\t. c", c=c)


@dataclass(frozen=True)
class SetCode:
    value: int

    @property
    def view(self):
        return view(self.value)


def view(c):
    """Decoded shape as a tuple (name, *fields), or ("invalid", c)."""
    tag, rest = unpair(c)
    if tag == 1 and rest in (0, 1):
        return ("N0",) if rest == 0 else ("N1",)
    if tag in (2, 3, 4):
        a, b = unpair(rest)
        return ({2: "Sigma", 3: "Pi", 4: "Plus"}[tag], a, b)
    if tag == 5:
        return ("List", rest)
    if tag == 6:
        a, xy = unpair(rest)
        return ("Id", a) + unpair(xy)
    return ("invalid", c)


def mk_code(shape):
    kind = shape[0]
    if kind == "N0":
        return SetCode(N0)
    if kind == "N1":
        return SetCode(N1)
    if kind == "Sigma":
        return SetCode(sigma_code(shape[1], shape[2]))
    if kind == "Pi":
        return SetCode(pi_code(shape[1], shape[2]))
    if kind == "Plus":
        return SetCode(plus_code(shape[1], shape[2]))
    if kind == "List":
        return SetCode(list_code(shape[1]))
    if kind == "Id":
        return SetCode(id_code(*shape[1:4]))
    raise ValueError(f"unknown set constructor {kind}")


def constructor_numerals():
    return {
        "n0": Code.of(prog(str(N0)).term),
        "n1": Code.of(prog(str(N1)).term),
        "sigma": prog(r"\x y. pair 2 (pair x y)"),
        "pi": prog(r"\x y. pair 3 (pair x y)"),
        "plus": prog(r"\x y. pair 4 (pair x y)"),
        "list": prog(r"\x. pair 5 x"),
        "id": prog(r"\x y z. pair 6 (pair x (pair y z))"),
    }


# -- the checker ---------------------------------------------------------------------

class Checker:
    """Bounded evaluation of set / member / nonmember with per-instance memo."""

    def __init__(self, depth=None, bound=None, fuel=None, max_members=1024):
        cfg = config.current()
        self.depth = cfg.depth if depth is None else depth
        self.bound = cfg.bound if bound is None else bound
        self.fuel = cfg.fuel if fuel is None else fuel
        self.list_cap = cfg.list_cap
        self.max_members = max_members
        self._memo = {}

    def _app(self, code, arg):
        """(status, value); status OUT means definitely undefined."""
        key = ("app", code, arg)
        hit = self._memo.get(key)
        if hit is None:
            hit = _evaluate(code, [arg], self.fuel)
            self._memo[key] = hit
        return hit

    def _cached(self, key, compute):
        hit = self._memo.get(key)
        if hit is None:
            hit = compute()
            self._memo[key] = hit
        return hit

    def set(self, c, depth=None):
        d = self.depth if depth is None else depth
        return self._cached(("set", c, d), lambda: self._set(c, d))

    def _set(self, c, d):
        if d <= 0:
            return UNKNOWN
        shape = view(c)
        kind = shape[0]
        if kind in ("N0", "N1"):
            return IN
        if kind in ("Sigma", "Pi"):
            a, b = shape[1], shape[2]

            def family_ok():
                return tri_all(self.members(a, d - 1), lambda t: self._then(b, t, lambda v: self.set(v, d - 1)))

            return tri_and(lambda: self.set(a, d - 1), family_ok)
        if kind == "Plus":
            return tri_and(lambda: self.set(shape[1], d - 1), lambda: self.set(shape[2], d - 1))
        if kind == "List":
            return self.set(shape[1], d - 1)
        if kind == "Id":
            a, x, y = shape[1:]
            return tri_and(lambda: self.set(a, d - 1), lambda: self.member(x, a, d - 1),
                           lambda: self.member(y, a, d - 1))
        return OUT

    def _then(self, code, arg, k, undefined=OUT):
        status, v = self._app(code, arg)
        if status is IN:
            return k(v)
        return undefined if status is OUT else UNKNOWN

    def member(self, n, c, depth=None):
        d = self.depth if depth is None else depth
        return self._cached(("in", n, c, d), lambda: tri_and(lambda: self.set(c, d),
                                                             lambda: self._member(n, c, d)))

    def _member(self, n, c, d):
        shape = view(c)
        kind = shape[0]
        if kind == "N0":
            return OUT
        if kind == "N1":
            return Tri.of(n == 0)
        if kind == "Sigma":
            a, b = shape[1], shape[2]
            x, y = unpair(n)
            return tri_and(lambda: self.member(x, a, d - 1),
                           lambda: self._then(b, x, lambda v: self.member(y, v, d - 1)))
        if kind == "Pi":
            a, b = shape[1], shape[2]
            return tri_all(self.members(a, d - 1),
                           lambda t: self._then(n, t, lambda v: self._then(
                               b, t, lambda w: self.member(v, w, d - 1))))
        if kind == "Plus":
            tag, x = unpair(n)
            if tag == 0:
                return self.member(x, shape[1], d - 1)
            if tag == 1:
                return self.member(x, shape[2], d - 1)
            return OUT
        if kind == "List":
            return tri_all(decode_list(n), lambda x: self.member(x, shape[1], d - 1))
        if kind == "Id":
            return Tri.of(shape[2] == shape[3])
        return OUT

    def nonmember(self, n, c, depth=None):
        d = self.depth if depth is None else depth
        return self._cached(("out", n, c, d), lambda: tri_and(lambda: self.set(c, d),
                                                              lambda: self._nonmember(n, c, d)))

    def _nonmember(self, n, c, d):
        shape = view(c)
        kind = shape[0]
        if kind == "N0":
            return IN
        if kind == "N1":
            return Tri.of(n > 0)
        if kind == "Sigma":
            a, b = shape[1], shape[2]
            x, y = unpair(n)
            return tri_or(lambda: self.nonmember(x, a, d - 1),
                          lambda: self._then(b, x, lambda v: self.nonmember(y, v, d - 1)))
        if kind == "Pi":
            a, b = shape[1], shape[2]
            # an application that is definitely undefined refutes membership
            return tri_any(self.members(a, d - 1),
                           lambda t: self._then(n, t, lambda v: self._then(
                               b, t, lambda w: self.nonmember(v, w, d - 1)), undefined=IN))
        if kind == "Plus":
            tag, x = unpair(n)
            return tri_and(lambda: Tri.of(tag != 0) if tag != 0 else self.nonmember(x, shape[1], d - 1),
                           lambda: Tri.of(tag != 1) if tag != 1 else self.nonmember(x, shape[2], d - 1))
        if kind == "List":
            return tri_any(decode_list(n), lambda x: self.nonmember(x, shape[1], d - 1))
        if kind == "Id":
            return Tri.of(shape[2] != shape[3])
        return OUT

    def coherent(self, c):
        def one(t):
            m, nm = self.member(t, c), self.nonmember(t, c)
            if UNKNOWN in (m, nm):
                return UNKNOWN
            return Tri.of(m is not nm)
        return self._cached(("coh", c), lambda: tri_all(range(self.bound + 1), one))

    def in_universe(self, c):
        return tri_and(lambda: self.set(c), lambda: self.coherent(c))

    def members(self, c, depth=None):
        d = self.depth if depth is None else depth
        return self._cached(("enum", c, d), lambda: tuple(self._members(c, d)))

    def _members(self, c, d):
        if d <= 0 or self.set(c, d) is not IN:
            return []
        shape = view(c)
        kind = shape[0]
        if kind == "N0":
            return []
        if kind == "N1":
            return [0]
        if kind == "Sigma":
            a, b = shape[1], shape[2]
            out = []
            for s in self.members(a, d - 1):
                status, v = self._app(b, s)
                if status is IN:
                    out += [pair(s, t) for t in self.members(v, d - 1)]
                if len(out) >= self.max_members:
                    break
            return out[:self.max_members]
        if kind == "Plus":
            return ([pair(0, s) for s in self.members(shape[1], d - 1)]
                    + [pair(1, s) for s in self.members(shape[2], d - 1)])[:self.max_members]
        if kind == "List":
            with config.using(support_cap=self.max_members):
                return bounded_lists(list(self.members(shape[1], d - 1)), self.list_cap)
        if kind == "Id":
            a, x, y = shape[1:]
            return list(range(self.bound + 1)) if x == y else []
        if kind == "Pi":
            a, b = shape[1], shape[2]
            dom = self.members(a, d - 1)

            def fibre(t):
                status, v = self._app(b, t)
                return self.members(v, d - 1) if status is IN else ()

            extra = []
            fibres = [fibre(t) for t in dom]
            size = 1
            for f in fibres:
                size *= len(f)
            if dom and 0 < size <= 64:
                for choice in itertools.product(*fibres):
                    extra.append(table_code(dict(zip(dom, choice)), choice[0]))
            cands = code_catalog(dom, fibre, extra)
            return [int(k) for k in dict.fromkeys(int(k) for k in cands) if self.member(int(k), c, d) is IN]
        return []


_SHARED = {}


def checker(depth=None, bound=None, fuel=None):
    """A memoizing checker shared per configuration."""
    cfg = config.current()
    key = (cfg.depth if depth is None else depth, cfg.bound if bound is None else bound,
           cfg.fuel if fuel is None else fuel, cfg.list_cap)
    ch = _SHARED.get(key)
    if ch is None or len(ch._memo) > 500_000:
        ch = _SHARED[key] = Checker(*key[:3])
    return ch


def check_set(c, depth=None, fuel=None):
    return checker(depth=depth, fuel=fuel).set(c)


def check_member(x, c, depth=None, fuel=None):
    return checker(depth=depth, fuel=fuel).member(x, c)


def check_nonmember(x, c, depth=None, fuel=None):
    return checker(depth=depth, fuel=fuel).nonmember(x, c)


def check_coherence(c, bound=None, depth=None, fuel=None):
    return checker(depth=depth, bound=bound, fuel=fuel).coherent(c)


def enumerate_members(c, bound=None, depth=None):
    return list(checker(depth=depth, bound=bound).members(c))


def universe_verdict(c, xs=()):
    ch = checker()
    return {"set_ok": ch.set(c), "coherent": ch.coherent(c),
            "member": {x: ch.member(x, c) for x in xs},
            "nonmember": {x: ch.nonmember(x, c) for x in xs}}


SAMPLE_CODES = None


def sample_codes():
    """A small fixed catalog of codes in the universe, used as its support."""
    global SAMPLE_CODES
    if SAMPLE_CODES is None:
        two = plus_code(N1, N1)
        SAMPLE_CODES = (N0, N1, two, sigma_code(N1, const_fn(N1)), list_code(N0),
                        sigma_code(two, const_fn(N1)), plus_code(N0, N1))
    return SAMPLE_CODES


def universe(support=None):
    """U_S as a collection: set codes that are coherent within bounds."""
    return Collection("U_S", lambda x, fuel: checker(fuel=fuel).in_universe(x),
                      sample_codes() if support is None else support,
                      {"kind": "builtin", "name": "universe"})


# -- families of realized sets -------------------------------------------------------

class TauFamily(Family):
    """τ_A(n): fibre at x is the extension of the set code {n}(x)."""

    def __init__(self, A, n, name=None, validate=True):
        self.code = n if isinstance(n, Code) else Code(int(n))
        ch = checker()
        self._codes = {}
        if validate:
            for x in A.support:
                self.set_code_at(x, strict=True)

        def inner(x, xp, fuel):
            status, v = _evaluate(self.code, [x], fuel)
            if status is not IN:
                return status
            return checker(fuel=fuel).member(xp, v)

        def cands(x):
            v = self.set_code_at(x)
            return () if v is None else ch.members(v)

        super().__init__(A, _guarded(A, inner), cands, name or f"τ({short(self.code.value)})", exact=True,
                         recipe={"kind": "tau", "base": A.recipe, "code": self.code.value})

    def set_code_at(self, x, strict=False):
        hit = self._codes.get(x)
        if hit is not None:
            return hit
        r = kleene_apply(self.code, [x])
        ok = r.ok and checker().in_universe(r.value) is IN
        if not ok:
            if strict:
                raise NotASetCode(x, r.value if r.ok else None)
            return None
        self._codes[x] = r.value
        return r.value


def tau_family(A, n, name=None):
    return TauFamily(A, n, name)


def tau_substitute(f, T):
    """τ_B(n) reindexed along f: A -> B is τ_A(n ∘ f)."""
    return TauFamily(f.dom, prog(r"\x. n (f x)", n=T.code, f=f.code))


class SetStructure:
    """The constructions on families of sets, each with its comparison isomorphism.

    Every method returns (τ-family, comparison family, there, back) where the
    comparison is the construction on families of collections.
    """

    def __init__(self, A):
        self.base = A

    def _iso(self, tau, other, there=r"\x y. y", back=r"\x y. y"):
        return tau, other, FamilyMap(prog(there), other, tau), FamilyMap(prog(back), tau, other)

    def terminal(self):
        return self._iso(TauFamily(self.base, prog(r"\x. n1", n1=N1)), terminal_family(self.base))

    def initial(self):
        return self._iso(TauFamily(self.base, prog(r"\x. n0", n0=N0)), initial_family(self.base))

    def product(self, B, C):
        tau = TauFamily(self.base, prog(r"\x. pair 2 (pair (n x) (\y. m x))", n=B.code, m=C.code))
        return self._iso(tau, FibreProduct(B, C).obj)

    def equalizer(self, j, k):
        B, C = j.dom, j.cod
        code = prog(r"\x. pair 2 (pair (n x) (\y. pair 6 (pair (m x) (pair (j x y) (k x y)))))",
                    n=B.code, m=C.code, j=j.code, k=k.code)
        return self._iso(TauFamily(self.base, code), FibreEqualizer(j, k).obj,
                         there=r"\x y. pair y 0", back=r"\x z. p1 z")

    def coproduct(self, B, C):
        tau = TauFamily(self.base, prog(r"\x. pair 4 (pair (n x) (m x))", n=B.code, m=C.code))
        return self._iso(tau, FibreCoproduct(B, C).obj)

    def list(self, B):
        return self._iso(TauFamily(self.base, prog(r"\x. pair 5 (n x)", n=B.code)), FibreList(B).obj)

    def exponential(self, B, C):
        tau = TauFamily(self.base, prog(r"\x. pair 3 (pair (n x) (\y. m x))", n=B.code, m=C.code))
        return self._iso(tau, FibreExponential(B, C).obj)


def set_structure(A):
    return SetStructure(A)


def iso_roundtrips(tau, other, there, back):
    """Both composites are identities on listed fibres; maps land correctly."""
    checks = {
        "there_lands": there.check() is IN,
        "back_lands": back.check() is IN,
        "other_roundtrip": family_maps_equal(fm_compose(back, there), fm_identity(other)),
        "tau_roundtrip": family_maps_equal(fm_compose(there, back), fm_identity(tau)),
    }
    return checks


# -- representable maps -------------------------------------------------------------

@dataclass
class Presentation:
    arrow: Arrow
    family: TauFamily
    total: TotalSigma
    there: Arrow      # dom f -> Σ(B, τ)
    back: Arrow       # Σ(B, τ) -> dom f


def is_representable(f, family, there=None, back=None):
    """Certify f: D -> B as isomorphic over B to p1 of Σ(B, family)."""
    if not isinstance(family, TauFamily):
        raise PresentationInvalid("the presenting family must be a family of sets")
    T = TotalSigma(f.cod, family)
    there = there or Arrow(prog(r"\x. x"), f.dom, T.obj)
    back = back or Arrow(prog(r"\x. x"), T.obj, f.dom)
    ok = (there.check() is IN and back.check() is IN
          and arrows_equal(compose(back, there), Arrow(prog(r"\x. x"), f.dom, f.dom))
          and arrows_equal(compose(there, back), Arrow(prog(r"\x. x"), T.obj, T.obj))
          and arrows_equal(compose(T.p1, there), f))
    if not ok:
        raise PresentationInvalid(f"{f} is not presented by {family}")
    return Presentation(f, family, T, there, back)


def sigma_pi_representable(pres, C):
    """Σ and Π of a family of sets C over Σ(B, τ_B(n)) along the presentation.

    Returns dict with the two τ-families over B and, for each, the families-level
    counterpart along p1 together with maps both ways.
    """
    B, n = pres.total.base, pres.family.code
    if not isinstance(C, TauFamily):
        raise NotSmall("the family must be a family of sets")
    p1 = pres.total.p1
    sig = TauFamily(B, prog(r"\x. pair 2 (pair (n x) (\y. m (pair x y)))", n=n, m=C.code))
    pi = TauFamily(B, prog(r"\x. pair 3 (pair (n x) (\y. m (pair x y)))", n=n, m=C.code))
    S = sigma_along(p1, C)
    P = WeakPi(p1, C).obj
    return {
        "sigma": (sig, S, FamilyMap(prog(r"\x w. pair (p2 (p1 w)) (p2 w)"), S, sig),
                  FamilyMap(prog(r"\x w. pair (pair x (p1 w)) (p2 w)"), sig, S)),
        "pi": (pi, P, FamilyMap(prog(r"\x c. \b. c (pair x b)"), P, pi),
               FamilyMap(prog(r"\x c. \z. c (p2 z)"), pi, P)),
    }


# -- small propositions ---------------------------------------------------------------

def as_small(P):
    if not isinstance(P, TauFamily):
        raise NotSmall(f"{P.name} has no presentation as a family of sets")
    return P


def small_top(A):
    return set_structure(A).terminal()[0]


def small_bottom(A):
    return set_structure(A).initial()[0]


def small_meet(P, Q):
    return set_structure(P.base).product(as_small(P), as_small(Q))[0]


def small_join(P, Q):
    return set_structure(P.base).coproduct(as_small(P), as_small(Q))[0]


def small_imp(P, Q):
    return set_structure(P.base).exponential(as_small(P), as_small(Q))[0]


def small_exists(pres, C):
    return sigma_pi_representable(pres, as_small(C))["sigma"][0]


def small_forall(pres, C):
    return sigma_pi_representable(pres, as_small(C))["pi"][0]


# -- s-expression syntax for codes -----------------------------------------------------

_SEXP = re.compile(r"\s*(\(|\)|[A-Za-z0-9_]+)")


def parse_code(text):
    """(n0) (n1) (sigma A (lam B)) (pi A (lam B)) (plus A B) (list A) (id A x y), or a decimal."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _SEXP.match(text, pos)
        if not m:
            raise TermSyntaxError("bad character in code", pos)
        toks.append((m.group(1), m.start(1)))
        pos = m.end()

    def expr(i):
        if i >= len(toks):
            raise TermSyntaxError("unexpected end of code", len(text))
        tok, at = toks[i]
        if tok.isdigit():
            return int(tok), i + 1
        if tok != "(":
            raise TermSyntaxError(f"unexpected {tok!r}", at)
        if i + 1 >= len(toks):
            raise TermSyntaxError("unexpected end of code", len(text))
        head, hat = toks[i + 1]
        args = []
        j = i + 2
        while j < len(toks) and toks[j][0] != ")":
            v, j = expr(j)
            args.append(v)
        if j >= len(toks):
            raise TermSyntaxError("missing ')'", len(text))
        arity = {"n0": 0, "n1": 0, "sigma": 2, "pi": 2, "plus": 2, "list": 1, "id": 3, "lam": 1}
        if head not in arity:
            raise TermSyntaxError(f"unknown constructor {head!r}", hat)
        if len(args) != arity[head]:
            raise TermSyntaxError(f"{head} expects {arity[head]} arguments", hat)
        value = {
            "n0": lambda: N0, "n1": lambda: N1,
            "sigma": lambda: sigma_code(*args), "pi": lambda: pi_code(*args),
            "plus": lambda: plus_code(*args), "list": lambda: list_code(*args),
            "id": lambda: id_code(*args), "lam": lambda: const_fn(args[0]).value,
        }[head]()
        return value, j + 1

    value, end = expr(0)
    if end != len(toks):
        raise TermSyntaxError("trailing input after code", toks[end][1])
    return value


def show_code(c, depth=6):
    shape = view(c)
    kind = shape[0]
    if depth <= 0:
        return str(c)
    if kind in ("N0", "N1"):
        return f"({kind.lower()})"
    if kind in ("Sigma", "Pi"):
        b = kleene_apply(shape[2], [0])
        tail = f"(lam {show_code(b.value, depth - 1)})" if b.ok and _is_constant(shape[2]) else str(shape[2])
        return f"({kind.lower()} {show_code(shape[1], depth - 1)} {tail})"
    if kind == "Plus":
        return f"(plus {show_code(shape[1], depth - 1)} {show_code(shape[2], depth - 1)})"
    if kind == "List":
        return f"(list {show_code(shape[1], depth - 1)})"
    if kind == "Id":
        return f"(id {show_code(shape[1], depth - 1)} {shape[2]} {shape[3]})"
    return str(c)


def _is_constant(b):
    from .pca.terms import Abs, Const, decode
    t = decode(b)
    return type(t) is Abs and type(t.body) is Const
