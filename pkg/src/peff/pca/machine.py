"""Call-by-value evaluator with step counting.

Every application (beta step, primitive step, or a natural used as a
program) costs one step. Function values are read back into closed terms and
numbered whenever they have to be treated as data.
"""
from dataclasses import dataclass

from .. import config
from . import coding
from .terms import ARITY, Abs, App, Builtin, Const, Var, decode, encode, remember


class Clo:
    __slots__ = ("body", "env", "_code")

    def __init__(self, body, env):
        self.body = body
        self.env = env
        self._code = None


class Prim:
    __slots__ = ("name", "args", "_code")

    def __init__(self, name, args):
        self.name = name
        self.args = args
        self._code = None


class FixVal:
    __slots__ = ("fn", "_code")

    def __init__(self, fn):
        self.fn = fn
        self._code = None


@dataclass(frozen=True)
class EvalResult:
    kind: str            # "value" | "stuck" | "fuel"
    value: int = None
    steps: int = 0

    @property
    def ok(self):
        return self.kind == "value"

    @property
    def stuck(self):
        return self.kind == "stuck"

    @property
    def exhausted(self):
        return self.kind == "fuel"

    def __repr__(self):
        if self.kind == "value":
            return f"Value({coding.short(self.value)})"
        if self.kind == "stuck":
            return "Stuck"
        return f"FuelExhausted({self.steps})"


def Value(v, steps=0):
    return EvalResult("value", v, steps)


STUCK = EvalResult("stuck")


def FuelExhausted(steps):
    return EvalResult("fuel", None, steps)


class _Stuck(Exception):
    pass


class _OutOfFuel(Exception):
    pass


# -- read back -------------------------------------------------------------------

def quote(v):
    """Closed term denoting a runtime value."""
    if type(v) is int:
        return Const(v)
    if type(v) is Clo:
        return Abs(_subst(v.body, v.env, 1))
    if type(v) is Prim:
        t = Builtin(v.name)
        for a in v.args:
            t = App(t, quote(a))
        return t
    return App(Builtin("fix"), quote(v.fn))


def _env_get(env, i):
    while i and env is not None:
        env = env[1]
        i -= 1
    return None if env is None else env


def _subst(term, env, depth):
    if env is None:
        return term
    cls = type(term)
    if cls is Var:
        if term.index < depth:
            return term
        cell = _env_get(env, term.index - depth)
        if cell is None:
            return term
        return quote(cell[0])
    if cls is Abs:
        return Abs(_subst(term.body, env, depth + 1))
    if cls is App:
        return App(_subst(term.fun, env, depth), _subst(term.arg, env, depth))
    return term


def number(v):
    """Goedel number of a runtime value."""
    if type(v) is int:
        return v
    if v._code is None:
        t = quote(v)
        n = encode(t)
        remember(n, t)
        v._code = n
    return v._code


# -- evaluation ------------------------------------------------------------------

_ARG, _FUN, _TO = 0, 1, 2


def _prim(name, args):
    if name == "succ":
        return number(args[0]) + 1
    if name == "pred":
        n = number(args[0])
        return n - 1 if n else 0
    if name == "pair":
        return coding.pair(number(args[0]), number(args[1]))
    if name == "proj1":
        return coding.unpair(number(args[0]))[0]
    if name == "proj2":
        return coding.unpair(number(args[0]))[1]
    if name == "ite":
        return args[1] if number(args[0]) == 0 else args[2]
    if name == "eq0":
        return 0 if number(args[0]) == number(args[1]) else 1
    raise AssertionError(name)


class Machine:
    __slots__ = ("fuel", "steps")

    def __init__(self, fuel):
        self.fuel = fuel
        self.steps = 0

    def run(self, term, env=None, apply_to=()):
        """Evaluate ``term`` and apply the result to each of ``apply_to``."""
        stack = [(_TO, a) for a in reversed(apply_to)]
        t, e = term, env
        mode = 0          # 0 eval t in e, 1 return v, 2 apply f to a
        v = f = a = None
        fuel = self.fuel
        while True:
            if mode == 0:
                cls = type(t)
                if cls is App:
                    stack.append((_ARG, t.arg, e))
                    t = t.fun
                    continue
                if cls is Var:
                    cell = _env_get(e, t.index)
                    if cell is None:
                        raise _Stuck()
                    v = cell[0]
                elif cls is Const:
                    v = t.value
                elif cls is Abs:
                    v = Clo(t.body, e)
                else:
                    v = Prim(t.name, ())
                mode = 1
            if mode == 1:
                if not stack:
                    return v
                frame = stack.pop()
                tag = frame[0]
                if tag == _ARG:
                    stack.append((_FUN, v))
                    t, e = frame[1], frame[2]
                    mode = 0
                    continue
                if tag == _FUN:
                    f, a = frame[1], v
                else:
                    f, a = v, frame[1]
                mode = 2
            # mode 2: apply f to a
            self.steps += 1
            if self.steps > fuel:
                self.steps = fuel
                raise _OutOfFuel()
            cls = type(f)
            if cls is Clo:
                t, e = f.body, (a, f.env)
                mode = 0
            elif cls is Prim:
                args = f.args + (a,)
                if f.name == "fix":
                    v = FixVal(a)
                elif len(args) < ARITY[f.name]:
                    v = Prim(f.name, args)
                else:
                    v = _prim(f.name, args)
                mode = 1
            elif cls is FixVal:
                stack.append((_TO, a))
                f, a = f.fn, f
                self.steps -= 1  # unrolling fix is bookkeeping, the applications are counted
                mode = 2
            else:
                stack.append((_TO, a))
                t, e = decode(f), None
                mode = 0


def evaluate(term, args=(), fuel=None):
    """Evaluate ``term`` applied to naturals ``args``; returns an EvalResult."""
    fuel = config.fuel_or_default(fuel)
    m = Machine(fuel)
    try:
        v = m.run(term, None, tuple(args))
    except _Stuck:
        return EvalResult("stuck", None, m.steps)
    except _OutOfFuel:
        return FuelExhausted(fuel)
    return Value(number(v), m.steps)
