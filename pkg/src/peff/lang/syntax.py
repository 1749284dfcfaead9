"""Terms and formulas in context, their type checker, and the textual grammar."""
import re
from dataclasses import dataclass, field

from ..collections import Arrow, Collection, Product, nat, same, terminal
from ..errors import TermSyntaxError, TypeMismatch
from ..families import Family
from ..pca import prog


@dataclass(frozen=True)
class Symbol:
    """An arrow A1 × ... × An -> B, with its argument collections listed."""
    name: str
    arrow: Arrow
    args: tuple

    @property
    def result(self):
        return self.arrow.cod


@dataclass(frozen=True)
class PredSymbol:
    name: str
    prop: Family
    args: tuple


def point_symbol(name, value, B):
    return Symbol(name, Arrow(prog(r"\u. v", v=value), terminal(), B), ())


def product_of(colls):
    """Left-nested product; the empty product is the terminal collection."""
    if not colls:
        return terminal()
    obj = colls[0]
    for c in colls[1:]:
        obj = Product(obj, c).obj
    return obj


class Context:
    def __init__(self, entries=()):
        names = [n for n, _ in entries]
        if len(set(names)) != len(names):
            raise TypeMismatch("context variables must be distinct")
        self.entries = tuple(entries)
        self.obj = product_of([c for _, c in self.entries])

    def __len__(self):
        return len(self.entries)

    def extend(self, name, A):
        if name in self.names:
            # shadowing: the inner binder wins, so rename the outer entry away
            entries = [(n + "'" if n == name else n, c) for n, c in self.entries]
            return Context(entries + [(name, A)])
        return Context(self.entries + ((name, A),))

    @property
    def names(self):
        return [n for n, _ in self.entries]

    def lookup(self, name):
        for i in range(len(self.entries) - 1, -1, -1):
            if self.entries[i][0] == name:
                return i, self.entries[i][1]
        return None

    def extension_point(self, g, a):
        """The point of (this, ξ:A) over g in this context and a in A."""
        from ..pca.coding import pair
        return a if not self.entries else pair(g, a)

    def extension_text(self, g, a):
        return a if not self.entries else f"(pair {g} {a})"

    def projection_text(self, i, g="g"):
        """Program text extracting component i from a point named g."""
        n = len(self.entries)
        if n == 1:
            return g
        expr = g
        for _ in range(n - 1 - i):
            expr = f"(p1 {expr})"
        return expr if i == 0 else f"(p2 {expr})"

    def __repr__(self):
        return "[" + ", ".join(f"{n}:{c.name}" for n, c in self.entries) + "]"


# -- AST ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class PointConst:
    symbol: Symbol


@dataclass(frozen=True)
class Apply:
    symbol: Symbol
    args: tuple


@dataclass(frozen=True)
class Atom:
    pred: PredSymbol
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    coll: Collection = field(compare=False)
    left: object = None
    right: object = None


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Imp:
    left: object
    right: object


@dataclass(frozen=True)
class Exists:
    var: str
    coll: Collection = field(compare=False)
    body: object = None


@dataclass(frozen=True)
class Forall:
    var: str
    coll: Collection = field(compare=False)
    body: object = None


def neg(phi):
    return Imp(phi, Bot())


def show_term(t):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, PointConst):
        return t.symbol.name
    return f"{t.symbol.name}(" + ", ".join(show_term(a) for a in t.args) + ")"


def show(phi):
    if isinstance(phi, Bot):
        return "Bot"
    if isinstance(phi, Eq):
        return f"Eq({phi.coll.name}, {show_term(phi.left)}, {show_term(phi.right)})"
    if isinstance(phi, Atom):
        return phi.pred.name + ("(" + ", ".join(show_term(a) for a in phi.args) + ")" if phi.args else "")
    if isinstance(phi, (And, Or, Imp)):
        op = {And: "&&", Or: "||", Imp: "->"}[type(phi)]
        return f"({show(phi.left)} {op} {show(phi.right)})"
    q = "forall" if isinstance(phi, Forall) else "exists"
    return f"{q} {phi.var}:{phi.coll.name}. {show(phi.body)}"


# -- type checking -----------------------------------------------------------------

def type_of(t, ctx):
    if isinstance(t, Var):
        hit = ctx.lookup(t.name)
        if hit is None:
            raise TypeMismatch(f"unbound variable {t.name}", variable=t.name)
        return hit[1]
    if isinstance(t, PointConst):
        if t.symbol.args:
            raise TypeMismatch(f"{t.symbol.name} expects {len(t.symbol.args)} arguments")
        return t.symbol.result
    if len(t.args) != len(t.symbol.args):
        raise TypeMismatch(f"{t.symbol.name} expects {len(t.symbol.args)} arguments, got {len(t.args)}")
    for a, want in zip(t.args, t.symbol.args):
        got = type_of(a, ctx)
        if not same(got, want):
            raise TypeMismatch(f"argument {show_term(a)} of {t.symbol.name} has type {got.name}, "
                               f"expected {want.name}", variable=show_term(a), expected=want.name)
    return t.symbol.result


def check(phi, ctx):
    """Raise TypeMismatch unless phi is a formula in context ctx."""
    if isinstance(phi, Bot):
        return
    if isinstance(phi, Eq):
        for side in (phi.left, phi.right):
            got = type_of(side, ctx)
            if not same(got, phi.coll):
                raise TypeMismatch(f"{show_term(side)} has type {got.name}, expected {phi.coll.name}",
                                   variable=show_term(side), expected=phi.coll.name)
        return
    if isinstance(phi, Atom):
        if len(phi.args) != len(phi.pred.args):
            raise TypeMismatch(f"{phi.pred.name} expects {len(phi.pred.args)} arguments")
        for a, want in zip(phi.args, phi.pred.args):
            got = type_of(a, ctx)
            if not same(got, want):
                raise TypeMismatch(f"{show_term(a)} has type {got.name}, expected {want.name}",
                                   variable=show_term(a), expected=want.name)
        return
    if isinstance(phi, (And, Or, Imp)):
        check(phi.left, ctx)
        check(phi.right, ctx)
        return
    if isinstance(phi, (Exists, Forall)):
        check(phi.body, ctx.extend(phi.var, phi.coll))
        return
    raise TypeMismatch(f"not a formula: {phi!r}")


# -- signatures and the parser -------------------------------------------------------

class Signature:
    """Names available to the parser: collections, function symbols, predicates."""

    def __init__(self, collections=None, functions=None, predicates=None):
        self.collections = dict(collections or {})
        self.functions = dict(functions or {})
        self.predicates = dict(predicates or {})

    def with_function(self, sym):
        self.functions[sym.name] = sym
        return self

    def with_predicate(self, sym):
        self.predicates[sym.name] = sym
        return self


def arithmetic_signature():
    N = nat()
    NN = Product(N, N).obj
    fns = {
        "zero": point_symbol("zero", 0, N),
        "succ": Symbol("succ", Arrow(prog("succ"), N, N), (N,)),
        "pred": Symbol("pred", Arrow(prog("pred"), N, N), (N,)),
        "plus": Symbol("plus", Arrow(prog(r"\z. rec (p1 z) (\k acc. succ acc) (p2 z)"), NN, N), (N, N)),
        "times": Symbol("times", Arrow(prog(
            r"\z. rec 0 (\k acc. rec acc (\j b. succ b) (p1 z)) (p2 z)"), NN, N), (N, N)),
    }
    return Signature({"N": N, "1": terminal()}, fns)


_TOKEN = re.compile(r"\s*(->|&&|\|\||[A-Za-z_][A-Za-z0-9_']*|\d+|[():,.~])")
KEYWORDS = {"forall", "exists", "Eq", "Bot"}


def _tokenize(text):
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                  len(text) - len(text[pos:].lstrip()))
        toks.append((m.group(1), m.start(1)))
        pos = m.end()
    toks.append(("<end>", len(text)))
    return toks


class _Parser:
    def __init__(self, text, sig):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self, want=None):
        tok, at = self.toks[self.i]
        if want is not None and tok != want:
            raise TermSyntaxError(f"expected {want!r}, found {tok!r}", at)
        self.i += 1
        return tok

    def formula(self):
        if self.peek() in ("forall", "exists"):
            q = self.take()
            var = self.name()
            self.take(":")
            coll = self.collection()
            self.take(".")
            body = self.formula()
            return (Forall if q == "forall" else Exists)(var, coll, body)
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.formula())
        return left

    def disj(self):
        left = self.conj()
        while self.peek() == "||":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek() == "&&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return neg(self.unary())
        if tok in ("forall", "exists"):
            return self.formula()
        if tok == "(":
            self.take()
            phi = self.formula()
            self.take(")")
            return phi
        if tok == "Bot":
            self.take()
            return Bot()
        if tok == "Eq":
            self.take()
            self.take("(")
            coll = self.collection()
            self.take(",")
            left = self.term()
            self.take(",")
            right = self.term()
            self.take(")")
            return Eq(coll, left, right)
        at = self.pos()
        name = self.name()
        pred = self.sig.predicates.get(name)
        if pred is None:
            raise TermSyntaxError(f"unknown predicate {name!r}", at)
        args = self.arguments() if self.peek() == "(" else ()
        return Atom(pred, args)

    def arguments(self):
        self.take("(")
        args = [self.term()]
        while self.peek() == ",":
            self.take()
            args.append(self.term())
        self.take(")")
        return tuple(args)

    def term(self):
        tok, at = self.toks[self.i]
        if tok.isdigit():
            self.take()
            return PointConst(point_symbol(tok, int(tok), nat()))
        name = self.name()
        if self.peek() == "(":
            sym = self.sig.functions.get(name)
            if sym is None:
                raise TermSyntaxError(f"unknown function symbol {name!r}", at)
            return Apply(sym, self.arguments())
        if name in self.sig.functions and not self.sig.functions[name].args:
            return PointConst(self.sig.functions[name])
        return Var(name)

    def name(self):
        tok, at = self.toks[self.i]
        if not re.match(r"[A-Za-z_]", tok) or tok in KEYWORDS:
            raise TermSyntaxError(f"expected a name, found {tok!r}", at)
        self.i += 1
        return tok

    def collection(self):
        tok, at = self.toks[self.i]
        if tok not in self.sig.collections:
            raise TermSyntaxError(f"unknown collection {tok!r}", at)
        self.i += 1
        return self.sig.collections[tok]


def parse(text, context=None, signature=None):
    """Parse and type-check a formula in the given context."""
    sig = signature or arithmetic_signature()
    p = _Parser(text, sig)
    phi = p.formula()
    if p.peek() != "<end>":
        raise TermSyntaxError(f"unexpected {p.peek()!r}", p.pos())
    check(phi, context or Context())
    return phi
