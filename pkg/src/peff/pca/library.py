"""Codes, application, named programs, and Kleene's T predicate."""
from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import OpenTerm, UnknownBuiltin
from . import coding
from .machine import evaluate
from .terms import Abs, App, Builtin, Const, Var, decode, encode, free_vars, remember, show


@dataclass(frozen=True)
class Code:
    """A natural number read as a closed program."""
    value: int
    _term: object = field(default=None, compare=False, repr=False, hash=False)

    @staticmethod
    def of(term):
        if free_vars(term):
            raise OpenTerm(f"term has free variables: {show(term)}")
        n = encode(term)
        remember(n, term)
        return Code(n, term)

    @property
    def term(self):
        return self._term if self._term is not None else decode(self.value)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Code({coding.short(self.value)})"

    def show(self):
        return show(self.term)


def _code_value(f):
    return f.value if isinstance(f, Code) else int(f)


def kleene_apply(f, args=(), fuel=None):
    """{f}(a1, ..., an), applied left to right; returns an EvalResult."""
    term = f.term if isinstance(f, Code) else decode(int(f))
    return evaluate(term, [_code_value(a) for a in args], fuel)


def run(f, *args, fuel=None):
    return kleene_apply(f, args, fuel)


def prog(text, **env):
    """Compile textual syntax (with named code bindings) to a Code."""
    from .syntax import parse_term
    return Code.of(parse_term(text, env))


def lambda_abstract(body):
    """Code of the abstraction binding de Bruijn index 0 of ``body``."""
    fv = free_vars(body)
    if fv - {0}:
        raise OpenTerm(f"free variables {sorted(fv - {0})} remain after abstraction")
    return Code.of(Abs(body))


_PRIMS = {"succ": "succ", "pred": "pred", "p": "pair", "pair": "pair", "p1": "proj1",
          "proj1": "proj1", "p2": "proj2", "proj2": "proj2", "ite": "ite", "fix": "fix",
          "eq0": "eq0"}

_DEFS = {
    "id": r"\x. x",
    "cnc": r"\l a. succ (pair l a)",
    "rec": r"\b s n. fix (\self k. ite (eq0 k 0) (\u. b) (\u. s (pred k) (self (pred k))) 0) n",
    "listrec": r"\b s l. fix (\self m. ite (eq0 m 0) (\u. b)"
               r" (\u. s (proj1 (pred m)) (proj2 (pred m)) (self (proj1 (pred m)))) 0) l",
    "lh": r"\l. listrec 0 (\q a acc. succ acc) l",
    "comp": r"\l j. fix (\self m. ite (eq0 m 0) (\u. pair 1 0)"
            r" (\u. ite (eq0 (lh (proj1 (pred m))) j) (\w. pair 0 (proj2 (pred m)))"
            r" (\w. self (proj1 (pred m))) 0) 0) l",
}

BUILTIN_NAMES = ("p", "p1", "p2", "ite", "cnc", "listrec", "succ", "rec")


@lru_cache(maxsize=None)
def _library_code(name):
    return prog(_DEFS[name])


def lookup(name):
    """Term for a library name, or None."""
    if name in _PRIMS:
        return Builtin(_PRIMS[name])
    if name in _DEFS:
        return Const(_library_code(name).value)
    return None


def builtin(name):
    """Code of a named program."""
    if name in _PRIMS:
        return Code.of(Builtin(_PRIMS[name]))
    if name in _DEFS:
        return _library_code(name)
    raise UnknownBuiltin(name)


def const_code(n):
    """Code of the constant function with value n."""
    return Code.of(Abs(Const(n)))


def kleene_T(e, x, y, fuel_cap=None):
    """T(e, x, y): y = pair(steps, result) and e on x yields result within steps."""
    steps, result = coding.unpair(y)
    if steps <= 0:
        return False
    if fuel_cap is not None:
        steps = min(steps, fuel_cap)
    r = kleene_apply(e, [x], steps)
    return r.ok and r.value == result


def kleene_U(y):
    return coding.proj2(y)


def trace(e, x, fuel=None):
    """A trace code pair(steps, result) for a converging computation, else None."""
    r = kleene_apply(e, [x], fuel)
    if not r.ok:
        return None
    return coding.pair(max(r.steps, 1), r.value)


def table_term(var_index, entries, default):
    """Term of a lookup: value of entries[k] when Var(var_index) == k, else default.

    ``entries`` maps naturals to terms (or naturals).
    """
    body = default if not isinstance(default, int) else Const(default)
    for key, val in reversed(list(entries.items())):
        val = Const(val) if isinstance(val, int) else val
        cond = App(App(Builtin("eq0"), Var(var_index)), Const(key))
        body = App(App(App(Builtin("ite"), cond), val), body)
    return body


def table_code(entries, default=0):
    """Code of a one-argument function given by a finite table."""
    return Code.of(Abs(table_term(0, entries, default)))
