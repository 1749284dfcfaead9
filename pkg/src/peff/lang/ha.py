"""Heyting arithmetic: formulas, Kleene realizability, and the translation."""
import re
from dataclasses import dataclass

from .. import config
from ..collections import _evaluate, diagonal, nat
from ..doctrine import EntailmentWitness, check_entailment, top
from ..errors import IndeterminateVerdict, PreconditionFailed, TermSyntaxError, UnknownFunctionSymbol
from ..pca import prog, table_code
from ..pca.coding import pair, unpair
from ..tri import IN, UNKNOWN
from . import syntax as L
from .interpret import interpret, term_code


@dataclass(frozen=True)
class HVar:
    name: str


@dataclass(frozen=True)
class HNum:
    value: int


@dataclass(frozen=True)
class HFun:
    name: str
    args: tuple


@dataclass(frozen=True)
class HEq:
    left: object
    right: object


@dataclass(frozen=True)
class HBot:
    pass


@dataclass(frozen=True)
class HAnd:
    left: object
    right: object


@dataclass(frozen=True)
class HOr:
    left: object
    right: object


@dataclass(frozen=True)
class HImp:
    left: object
    right: object


@dataclass(frozen=True)
class HForall:
    var: str
    body: object


@dataclass(frozen=True)
class HExists:
    var: str
    body: object


def _plus(x, y):
    return x + y


FUNCTIONS = {
    "zero": (0, lambda: 0),
    "succ": (1, lambda x: x + 1),
    "pred": (1, lambda x: max(x - 1, 0)),
    "plus": (2, _plus),
    "times": (2, lambda x, y: x * y),
}


def value(t, env):
    if isinstance(t, HVar):
        return env[t.name]
    if isinstance(t, HNum):
        return t.value
    if t.name not in FUNCTIONS:
        raise UnknownFunctionSymbol(t.name)
    return FUNCTIONS[t.name][1](*(value(a, env) for a in t.args))


def free_vars(phi, bound=()):
    """Free variables in order of first occurrence."""
    out = []

    def term(t, bound):
        if isinstance(t, HVar) and t.name not in bound and t.name not in out:
            out.append(t.name)
        elif isinstance(t, HFun):
            for a in t.args:
                term(a, bound)

    def walk(phi, bound):
        if isinstance(phi, HEq):
            term(phi.left, bound)
            term(phi.right, bound)
        elif isinstance(phi, (HAnd, HOr, HImp)):
            walk(phi.left, bound)
            walk(phi.right, bound)
        elif isinstance(phi, (HForall, HExists)):
            walk(phi.body, bound + (phi.var,))

    walk(phi, tuple(bound))
    return out


def ha_context(phi):
    N = nat()
    return L.Context([(v, N) for v in free_vars(phi)])


# -- translation ---------------------------------------------------------------------

def _translate_term(t, sig):
    if isinstance(t, HVar):
        return L.Var(t.name)
    if isinstance(t, HNum):
        return L.PointConst(L.point_symbol(str(t.value), t.value, nat()))
    sym = sig.functions.get(t.name)
    if sym is None:
        raise UnknownFunctionSymbol(t.name)
    if not sym.args:
        return L.PointConst(sym)
    return L.Apply(sym, tuple(_translate_term(a, sig) for a in t.args))


def translate_ha(phi, signature=None):
    """The compositional translation into the internal language over N."""
    sig = signature or L.arithmetic_signature()
    N = sig.collections["N"]

    def go(phi):
        if isinstance(phi, HEq):
            return L.Eq(N, _translate_term(phi.left, sig), _translate_term(phi.right, sig))
        if isinstance(phi, HBot):
            return L.Bot()
        if isinstance(phi, HAnd):
            return L.And(go(phi.left), go(phi.right))
        if isinstance(phi, HOr):
            return L.Or(go(phi.left), go(phi.right))
        if isinstance(phi, HImp):
            return L.Imp(go(phi.left), go(phi.right))
        if isinstance(phi, HForall):
            return L.Forall(phi.var, N, go(phi.body))
        if isinstance(phi, HExists):
            return L.Exists(phi.var, N, go(phi.body))
        raise TypeError(f"not an HA formula: {phi!r}")

    return go(phi)


# -- Kleene realizability -----------------------------------------------------------

def _apply(code, arg):
    status, v = _evaluate(code, [arg], config.current().fuel)
    if status is UNKNOWN:
        raise IndeterminateVerdict(f"{{{code}}}({arg}) ran out of fuel")
    return v if status is IN else None


def _support():
    return range(config.current().nat_size)


def ha_realize(n, phi, env=None):
    """n ⊩ φ by the Kleene clauses; quantifiers range over the nat support."""
    env = dict(env or {})
    if isinstance(phi, HEq):
        return value(phi.left, env) == value(phi.right, env)
    if isinstance(phi, HBot):
        return False
    if isinstance(phi, HAnd):
        a, b = unpair(n)
        return ha_realize(a, phi.left, env) and ha_realize(b, phi.right, env)
    if isinstance(phi, HOr):
        tag, r = unpair(n)
        if tag == 0:
            return ha_realize(r, phi.left, env)
        return tag == 1 and ha_realize(r, phi.right, env)
    if isinstance(phi, HImp):
        for m in candidates(phi.left, env):
            v = _apply(n, m)
            if v is None or not ha_realize(v, phi.right, env):
                return False
        return True
    if isinstance(phi, HForall):
        for x in _support():
            v = _apply(n, x)
            if v is None or not ha_realize(v, phi.body, {**env, phi.var: x}):
                return False
        return True
    if isinstance(phi, HExists):
        x, r = unpair(n)
        return ha_realize(r, phi.body, {**env, phi.var: x})
    raise TypeError(f"not an HA formula: {phi!r}")


def candidates(phi, env, limit=16):
    """A bounded list of realizers of φ, used to test implications."""
    return [m for m in _raw_candidates(phi, env, limit) if ha_realize(m, phi, env)][:limit]


def _raw_candidates(phi, env, limit):
    if isinstance(phi, HEq):
        return [0] if value(phi.left, env) == value(phi.right, env) else []
    if isinstance(phi, HBot):
        return []
    if isinstance(phi, HAnd):
        return [pair(a, b) for a, b in diagonal(candidates(phi.left, env, limit),
                                                 candidates(phi.right, env, limit))][:limit]
    if isinstance(phi, HOr):
        return ([pair(0, r) for r in candidates(phi.left, env, limit)]
                + [pair(1, r) for r in candidates(phi.right, env, limit)])
    if isinstance(phi, HExists):
        out = []
        for x in _support():
            out += [pair(x, r) for r in candidates(phi.body, {**env, phi.var: x}, 2)]
            if len(out) >= limit:
                break
        return out
    if isinstance(phi, HForall):
        firsts = {}
        for x in _support():
            c = candidates(phi.body, {**env, phi.var: x}, 1)
            if not c:
                return []
            firsts[x] = c[0]
        return [table_code(firsts, firsts[0]).value]
    right = candidates(phi.right, env, 1)
    return [prog(r"\w. r", r=right[0]).value] if right else [prog(r"\w. w").value]


# -- the bridge -----------------------------------------------------------------------

def _conversions(phi, ctx):
    """Codes (to, back): to(γ, n) turns a Kleene realizer into an internal one."""
    if isinstance(phi, L.Eq):
        return prog(r"\g r. pair (t g) 0", t=term_code(phi.left, ctx)), prog(r"\g r. 0")
    if isinstance(phi, L.Bot):
        return prog(r"\g r. r"), prog(r"\g r. r")
    if isinstance(phi, (L.And, L.Or, L.Imp)):
        lt, lb = _conversions(phi.left, ctx)
        rt, rb = _conversions(phi.right, ctx)
        if isinstance(phi, L.And):
            text = r"\g r. pair (f g (p1 r)) (h g (p2 r))"
            return prog(text, f=lt, h=rt), prog(text, f=lb, h=rb)
        if isinstance(phi, L.Or):
            text = r"\g r. ite (eq0 (p1 r) 0) (\u. pair 0 (f g (p2 r))) (\u. pair 1 (h g (p2 r))) 0"
            return prog(text, f=lt, h=rt), prog(text, f=lb, h=rb)
        text = r"\g r. \w. h g (r (f g w))"
        return prog(text, f=lb, h=rt), prog(text, f=lt, h=rb)
    ext = ctx.extend(phi.var, phi.coll)
    bt, bb = _conversions(phi.body, ext)
    step = prog(rf"\g a. {ctx.extension_text('g', 'a')}")
    if isinstance(phi, L.Forall):
        text = r"\g r. \a. f (e g a) (r a)"
    else:
        text = r"\g r. pair (p1 r) (f (e g (p1 r)) (p2 r))"
    return prog(text, f=bt, e=step), prog(text, f=bb, e=step)


def bridge(n, phi):
    """A verified Kleene realizer of a closed φ gives a validity witness for its translation."""
    if free_vars(phi):
        raise PreconditionFailed("the bridge needs a closed formula")
    if not ha_realize(n, phi):
        raise PreconditionFailed(f"{n} does not realize the formula")
    psi = translate_ha(phi)
    ctx = L.Context()
    to, _ = _conversions(psi, ctx)
    r = prog(r"\g y. c g n", c=to, n=n)
    P = interpret(psi, ctx)
    w = EntailmentWitness(r, top(ctx.obj), P)
    if not check_entailment(w.source, w.target, r):
        raise IndeterminateVerdict("converted realizer failed verification")
    return w


# -- concrete syntax --------------------------------------------------------------------

_TOK = re.compile(r"\s*(->|&&|\|\||[A-Za-z_][A-Za-z0-9_']*|\d+|[()=,.~])")


def parse_ha(text):
    """forall x. φ | exists x. φ | φ && φ | φ || φ | φ -> φ | t = t | Bot | ~φ | (φ)"""
    toks, pos = [], 0
    while text[pos:].strip():
        m = _TOK.match(text, pos)
        if not m:
            raise TermSyntaxError("unexpected character", len(text) - len(text[pos:].lstrip()))
        toks.append((m.group(1), m.start(1)))
        pos = m.end()
    toks.append(("<end>", len(text)))
    i = 0

    def peek():
        return toks[i][0]

    def take(want=None):
        nonlocal i
        tok, at = toks[i]
        if want is not None and tok != want:
            raise TermSyntaxError(f"expected {want!r}, found {tok!r}", at)
        i += 1
        return tok

    def formula():
        if peek() in ("forall", "exists"):
            q = take()
            v = take()
            take(".")
            body = formula()
            return HForall(v, body) if q == "forall" else HExists(v, body)
        left = disj()
        if peek() == "->":
            take()
            return HImp(left, formula())
        return left

    def disj():
        left = conj()
        while peek() == "||":
            take()
            left = HOr(left, conj())
        return left

    def conj():
        left = unary()
        while peek() == "&&":
            take()
            left = HAnd(left, unary())
        return left

    def unary():
        tok = peek()
        if tok == "~":
            take()
            return HImp(unary(), HBot())
        if tok in ("forall", "exists"):
            return formula()
        if tok == "Bot":
            take()
            return HBot()
        if tok == "(":
            save = i
            take()
            try:
                phi = formula()
                take(")")
                if peek() != "=":
                    return phi
            except TermSyntaxError:
                pass
            _rewind(save)
        left = term()
        take("=")
        return HEq(left, term())

    def _rewind(to):
        nonlocal i
        i = to

    def term():
        tok, at = toks[i]
        if tok == "(":
            take()
            t = term()
            take(")")
            return t
        if tok.isdigit():
            take()
            return HNum(int(tok))
        if not re.match(r"[A-Za-z_]", tok):
            raise TermSyntaxError(f"expected a term, found {tok!r}", at)
        take()
        if peek() == "(":
            take()
            args = [term()]
            while peek() == ",":
                take()
                args.append(term())
            take(")")
            if tok not in FUNCTIONS:
                raise UnknownFunctionSymbol(tok)
            return HFun(tok, tuple(args))
        if tok in FUNCTIONS and FUNCTIONS[tok][0] == 0:
            return HFun(tok, ())
        return HVar(tok)

    phi = formula()
    if peek() != "<end>":
        raise TermSyntaxError(f"unexpected {peek()!r}", toks[i][1])
    return phi
