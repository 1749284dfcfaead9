"""Realized collections and the operations between them.

A collection is a three-valued membership test together with a finite
support; every quantifier that the constructions need ranges over supports.
Arrows are codes, compared pointwise on the support of their domain.
"""
from itertools import product as _cartesian

from . import config
from .errors import DomainMismatch, IndeterminateVerdict, PreconditionFailed
from .pca import Code, kleene_apply, prog, table_code
from .pca.coding import decode_list, encode_list, pair, short, unpair
from .tri import IN, OUT, UNKNOWN, Tri, tri_all, tri_and


class Collection:
    """Membership decider plus finite support.

    ``decider(x, fuel)`` returns a Tri. ``recipe`` is a JSON-able description
    used for serialization; ``key`` identifies the collection structurally.
    """

    def __init__(self, name, decider, support, recipe=None):
        self.name = name
        self._decider = decider
        self.support = tuple(support)
        self.recipe = recipe if recipe is not None else {"kind": "opaque", "name": name}

    @property
    def key(self):
        return self.name

    def decide(self, x, fuel=None):
        return self._decider(x, config.fuel_or_default(fuel))

    def __contains__(self, x):
        return bool(self.decide(x))

    def __repr__(self):
        return f"Collection({self.name}, |support|={len(self.support)})"


def same(a, b):
    return a is b or a.key == b.key


def _evaluate(code, args, fuel):
    """Application as a Tri-friendly triple: (Tri, value)."""
    r = kleene_apply(code, args, fuel)
    if r.ok:
        return IN, r.value
    if r.exhausted:
        return UNKNOWN, None
    return OUT, None


def apply_tri(code, args, fuel, then):
    """Run code on args and feed the value into ``then``; stuck means OUT."""
    status, v = _evaluate(code, args, fuel)
    if status is not IN:
        return status
    return then(v)


def cap_support(items):
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
            if len(out) >= config.current().support_cap:
                break
    return tuple(out)


def diagonal(xs, ys):
    """All pairs of positions in diagonal order, so truncation keeps small indices."""
    n, m = len(xs), len(ys)
    for s in range(n + m - 1):
        for i in range(max(0, s - m + 1), min(s, n - 1) + 1):
            yield xs[i], ys[s - i]


# -- arrows ---------------------------------------------------------------------

class Arrow:
    def __init__(self, code, dom, cod):
        self.code = code if isinstance(code, Code) else Code(int(code))
        self.dom = dom
        self.cod = cod

    def at(self, x, fuel=None):
        return kleene_apply(self.code, [x], fuel)

    def __call__(self, x, fuel=None):
        r = self.at(x, fuel)
        if r.ok:
            return r.value
        if r.exhausted:
            raise IndeterminateVerdict(f"arrow evaluation at {x} ran out of fuel")
        raise PreconditionFailed(f"arrow evaluation at {x} is undefined")

    def check(self, fuel=None):
        """IN when every support point lands in the codomain."""
        fuel = config.fuel_or_default(fuel)
        return tri_all(self.dom.support,
                       lambda x: apply_tri(self.code, [x], fuel, lambda v: self.cod.decide(v, fuel)))

    def __repr__(self):
        return f"Arrow({short(self.code.value)}: {self.dom.name} -> {self.cod.name})"


def arrow(text, dom, cod, **env):
    return Arrow(prog(text, **env), dom, cod)


def arrows_equal_tri(f, g, fuel=None):
    if not (same(f.dom, g.dom) and same(f.cod, g.cod)):
        raise DomainMismatch(f"{f} and {g} are not parallel")
    fuel = config.fuel_or_default(fuel)

    def agree(x):
        a, va = _evaluate(f.code, [x], fuel)
        b, vb = _evaluate(g.code, [x], fuel)
        if a is UNKNOWN or b is UNKNOWN:
            return UNKNOWN
        if a is OUT or b is OUT:
            return Tri.of(a is b)
        return Tri.of(va == vb)

    return tri_all(f.dom.support, agree)


def arrows_equal(f, g, fuel=None):
    """Pointwise equality on the domain support; raises IndeterminateVerdict on fuel exhaustion."""
    return bool(arrows_equal_tri(f, g, fuel))


def compose(g, f):
    """g after f."""
    if not same(f.cod, g.dom):
        raise DomainMismatch(f"cannot compose {g} after {f}")
    return Arrow(prog(r"\x. m (n x)", m=g.code, n=f.code), f.dom, g.cod)


ID_CODE = prog(r"\x. x")


def identity(A):
    return Arrow(ID_CODE, A, A)


def is_mono_tri(j, fuel=None):
    fuel = config.fuel_or_default(fuel)
    seen = {}
    unknown = False
    for x in j.dom.support:
        status, v = _evaluate(j.code, [x], fuel)
        if status is UNKNOWN:
            unknown = True
            continue
        if status is OUT:
            continue
        if v in seen:
            return OUT
        seen[v] = x
    return UNKNOWN if unknown else IN


def is_mono(j, fuel=None):
    """Injectivity of the code on the domain support."""
    return bool(is_mono_tri(j, fuel))


# -- base objects ---------------------------------------------------------------

def terminal():
    return Collection("1", lambda x, fuel: Tri.of(x == 0), [0], {"kind": "builtin", "name": "terminal"})


def initial():
    return Collection("0", lambda x, fuel: OUT, [], {"kind": "builtin", "name": "initial"})


def nat(size=None):
    size = config.current().nat_size if size is None else size
    return Collection("N" if size == config.current().nat_size else f"N<{size}",
                      lambda x, fuel: IN, range(size),
                      {"kind": "builtin", "name": "nat", "size": size})


def finite(values, name=None):
    """The collection {x | x is one of values}."""
    values = tuple(sorted(set(values)))
    members = frozenset(values)
    return Collection(name or "{" + ",".join(map(str, values)) + "}",
                      lambda x, fuel: Tri.of(x in members), values,
                      {"kind": "builtin", "name": "finite", "values": list(values)})


def from_program(code, support, name):
    """{x | {code}(x) = 0}; the support is checked lazily by callers."""
    code = code if isinstance(code, Code) else Code(int(code))

    def decide(x, fuel):
        status, v = _evaluate(code, [x], fuel)
        return status if status is not IN else Tri.of(v == 0)

    return Collection(name, decide, support, {"kind": "program", "code": code.value,
                                              "support": list(support), "name": name})


def undecided_flag():
    """{x | x = 0 and phi} for a sentence phi the decider cannot settle.

    Nothing is provably in it, so the support is empty, yet membership of 0 is
    never refuted.
    """
    return Collection("Undecided", lambda x, fuel: UNKNOWN if x == 0 else OUT, [],
                      {"kind": "builtin", "name": "undecided"})


def bang(A):
    """The unique arrow into the terminal collection."""
    return Arrow(prog(r"\x. 0"), A, terminal())


def nat_zero(N=None):
    return Arrow(prog(r"\x. 0"), terminal(), N or nat())


def nat_succ(N=None):
    N = N or nat()
    return Arrow(prog("succ"), N, N)


def base_objects():
    N = nat()
    return {"terminal": terminal(), "initial": initial(), "nat": N,
            "zero": nat_zero(N), "succ": nat_succ(N)}


# -- limits ---------------------------------------------------------------------

class Product:
    def __init__(self, A, B):
        self.left, self.right = A, B
        self.obj = Collection(
            f"({A.name}×{B.name})",
            lambda z, fuel: _product_decide(A, B, z, fuel),
            cap_support(pair(a, b) for a, b in diagonal(A.support, B.support)),
            {"kind": "builtin", "name": "product", "args": [A.recipe, B.recipe]})
        self.p1 = Arrow(prog("p1"), self.obj, A)
        self.p2 = Arrow(prog("p2"), self.obj, B)

    def __iter__(self):
        return iter((self.obj, self.p1, self.p2))

    def mediator(self, f, g):
        if not same(f.dom, g.dom):
            raise DomainMismatch("mediator needs arrows with a common domain")
        return Arrow(prog(r"\x. pair (f x) (g x)", f=f.code, g=g.code), f.dom, self.obj)

    def cross(self, f, g, other):
        """f × g from ``other`` (a Product of the domains) into this product."""
        return Arrow(prog(r"\x. pair (f (p1 x)) (g (p2 x))", f=f.code, g=g.code), other.obj, self.obj)


def _product_decide(A, B, z, fuel):
    x, y = unpair(z)
    return tri_and(lambda: A.decide(x, fuel), lambda: B.decide(y, fuel))


def product(A, B):
    return Product(A, B)


class Equalizer:
    def __init__(self, f, g):
        if not (same(f.dom, g.dom) and same(f.cod, g.cod)):
            raise DomainMismatch("equalizer needs a parallel pair")
        self.f, self.g = f, g
        A = f.dom

        def decide(x, fuel):
            def same_value():
                a, va = _evaluate(f.code, [x], fuel)
                b, vb = _evaluate(g.code, [x], fuel)
                if a is UNKNOWN or b is UNKNOWN:
                    return UNKNOWN
                return Tri.of(a is IN and b is IN and va == vb)
            return tri_and(lambda: A.decide(x, fuel), same_value)

        support = [x for x in A.support if decide(x, config.current().fuel) is IN]
        self.obj = Collection(f"Eq({short(f.code.value)},{short(g.code.value)})", decide, support,
                              {"kind": "builtin", "name": "equalizer",
                               "args": [A.recipe, f.cod.recipe], "codes": [f.code.value, g.code.value]})
        self.inclusion = Arrow(ID_CODE, self.obj, A)

    def __iter__(self):
        return iter((self.obj, self.inclusion))

    def mediator(self, h):
        """Factor h: C -> A with f∘h ≈ g∘h through the inclusion (same code)."""
        if not arrows_equal(compose(self.f, h), compose(self.g, h)):
            raise PreconditionFailed("h does not equalize the pair")
        return Arrow(h.code, h.dom, self.obj)


def equalizer(f, g):
    return Equalizer(f, g)


def pullback(f, g):
    """Pullback of f: A -> C and g: B -> C as an equalizer on A×B."""
    P = Product(f.dom, g.dom)
    E = Equalizer(compose(f, P.p1), compose(g, P.p2))
    return E, compose(P.p1, E.inclusion), compose(P.p2, E.inclusion)


# -- colimits and the rest -------------------------------------------------------

class Coproduct:
    def __init__(self, A, B):
        self.left, self.right = A, B

        def decide(z, fuel):
            tag, x = unpair(z)
            if tag == 0:
                return A.decide(x, fuel)
            if tag == 1:
                return B.decide(x, fuel)
            return OUT

        left = [pair(0, a) for a in A.support]
        right = [pair(1, b) for b in B.support]
        merged = [v for ab in _interleave(left, right) for v in ab]
        self.obj = Collection(f"({A.name}+{B.name})", decide, cap_support(merged),
                              {"kind": "builtin", "name": "coproduct", "args": [A.recipe, B.recipe]})
        self.j1 = Arrow(prog(r"\x. pair 0 x"), A, self.obj)
        self.j2 = Arrow(prog(r"\x. pair 1 x"), B, self.obj)

    def __iter__(self):
        return iter((self.obj, self.j1, self.j2))

    def copair(self, f, g):
        if not same(f.cod, g.cod):
            raise DomainMismatch("copairing needs a common codomain")
        code = prog(r"\x. ite (p1 x) (\u. f (p2 x)) (\u. g (p2 x)) 0", f=f.code, g=g.code)
        return Arrow(code, self.obj, f.cod)


def _interleave(xs, ys):
    for i in range(max(len(xs), len(ys))):
        yield [v for v in (xs[i:i + 1] + ys[i:i + 1])]


def coproduct(A, B):
    return Coproduct(A, B)


def bounded_lists(elements, max_len):
    """Codes of all lists over ``elements`` up to ``max_len``, shortest first."""
    out = []
    for n in range(max_len + 1):
        for combo in _cartesian(elements, repeat=n):
            out.append(encode_list(combo))
            if len(out) >= config.current().support_cap:
                return out
    return out


class ListObject:
    def __init__(self, A, max_len=None):
        self.elem = A
        L = config.current().list_cap if max_len is None else max_len

        def decide(n, fuel):
            return tri_all(decode_list(n), lambda a: A.decide(a, fuel))

        self.obj = Collection(f"List({A.name})", decide, cap_support(bounded_lists(A.support, L)),
                              {"kind": "builtin", "name": "list", "args": [A.recipe], "max_len": L})
        self.empty = Arrow(prog(r"\x. 0"), terminal(), self.obj)
        self._pair = Product(self.obj, A)
        self.cons = Arrow(prog(r"\x. cnc (p1 x) (p2 x)"), self._pair.obj, self.obj)

    def __iter__(self):
        return iter((self.obj, self.empty, self.cons))

    def rec(self, f, g, params=None):
        """listrec(f, g): P × List(A) -> B for f: P -> B and g: B × A -> B."""
        P = f.dom
        PL = params or Product(P, self.obj)
        code = prog(r"\z. listrec (f (p1 z)) (\l a acc. g (pair acc a)) (p2 z)", f=f.code, g=g.code)
        return Arrow(code, PL.obj, f.cod)


def list_object(A, max_len=None):
    return ListObject(A, max_len)


class WeakExponential:
    def __init__(self, A, B, catalog=()):
        self.dom_obj, self.cod_obj = A, B

        def decide(c, fuel):
            return tri_all(A.support,
                           lambda u: apply_tri(c, [u], fuel, lambda v: B.decide(v, fuel)))

        candidates = list(catalog) + exponential_catalog(A, B)
        fuel = config.current().fuel
        support = [c.value for c in candidates if decide(c, fuel) is IN]
        self.obj = Collection(f"({A.name}⇒{B.name})", decide, cap_support(support),
                              {"kind": "builtin", "name": "exponential", "args": [A.recipe, B.recipe]})
        self._pair = Product(self.obj, A)
        self.ev = Arrow(prog(r"\x. (p1 x) (p2 x)"), self._pair.obj, B)

    def __iter__(self):
        return iter((self.obj, self.ev))

    def curry(self, f, C):
        """f': C -> (A ⇒ B) for f: C × A -> B."""
        return Arrow(prog(r"\c. \a. f (pair c a)", f=f.code), C, self.obj)


def exponential_catalog(A, B):
    """Finite catalog of candidate codes A -> B: constants, identity, and a table."""
    out = [ID_CODE]
    out += [prog(r"\u. b", b=b) for b in B.support[:4]]
    if B.support and A.support:
        out.append(table_code({a: B.support[i % len(B.support)] for i, a in enumerate(A.support)},
                              B.support[0]))
    return out


def weak_exponential(A, B, catalog=()):
    return WeakExponential(A, B, catalog)
