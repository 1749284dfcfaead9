"""Textual term syntax.

    term ::= '\' name+ '.' term | atom+
    atom ::= name | decimal | '(' term ')'

Application is juxtaposition, left associative. Names resolve, in order, to
bound variables, caller-supplied bindings, primitives, and library programs.
"""
import re

from ..errors import TermSyntaxError
from .terms import BUILTINS, Builtin, Const, Var, Abs, App

_TOKEN = re.compile(r"\s*(?:(\\|λ)|(\.)|(\()|(\))|(\d+)|([A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            at = len(text) - len(text[pos:].lstrip())
            raise TermSyntaxError(f"unexpected character {text[at]!r}", at)
        kind = m.lastindex
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append((0, None, len(text)))
    return out


class _Parser:
    def __init__(self, text, env):
        self.toks = _tokenize(text)
        self.i = 0
        self.env = env or {}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise TermSyntaxError(f"unexpected {tok[1]!r}" if tok[1] else "unexpected end of input", tok[2])
        self.i += 1
        return tok

    def term(self, scope):
        if self.peek()[0] == 1:
            self.take()
            names = []
            while self.peek()[0] == 6:
                names.append(self.take()[1])
            if not names:
                raise TermSyntaxError("binder expects a variable", self.peek()[2])
            self.take(2)
            body = self.term(scope + names)
            for _ in names:
                body = Abs(body)
            return body
        head = self.atom(scope)
        while self.peek()[0] in (1, 3, 5, 6):
            if self.peek()[0] == 1:
                head = App(head, self.term(scope))
                break
            head = App(head, self.atom(scope))
        return head

    def atom(self, scope):
        kind, text, pos = self.peek()
        if kind == 3:
            self.take()
            t = self.term(scope)
            self.take(4)
            return t
        if kind == 5:
            self.take()
            return Const(int(text))
        if kind == 6:
            self.take()
            return self.resolve(text, scope, pos)
        raise TermSyntaxError(f"unexpected {text!r}" if text else "unexpected end of input", pos)

    def resolve(self, name, scope, pos):
        for depth, bound in enumerate(reversed(scope)):
            if bound == name:
                return Var(depth)
        if name in self.env:
            return as_term(self.env[name])
        if name in BUILTINS:
            return Builtin(name)
        from . import library
        lib = library.lookup(name)
        if lib is not None:
            return lib
        raise TermSyntaxError(f"unbound name {name!r}", pos)


def as_term(x):
    from .library import Code
    if isinstance(x, Code):
        return Const(x.value)
    if isinstance(x, int):
        return Const(x)
    return x


def parse_term(text, env=None):
    p = _Parser(text, env)
    t = p.term([])
    if p.peek()[0] != 0:
        tok = p.peek()
        raise TermSyntaxError(f"unexpected {tok[1]!r}", tok[2])
    return t
