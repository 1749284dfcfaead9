"""Program terms and their Goedel numbering.

Terms use de Bruijn indices. The numbering is a bijection between naturals
and terms, so decoding is total and ``encode(decode(n)) == n`` for every n.

Layout of a code ``n``:

* ``n < 8``: a primitive, ``BUILTINS[n]``
* otherwise ``m = n - 8`` and ``m % 4`` selects variable, constant,
  abstraction or application, with payload ``m // 4``.

Applications pair the codes of argument and function with a size-additive
bijection ``N x N -> N`` (``tpair``) instead of Cantor pairing, whose output
doubles in bit length at every level and would make nested terms unusable.
"""
from dataclasses import dataclass
from functools import lru_cache

BUILTINS = ("succ", "pred", "pair", "proj1", "proj2", "ite", "fix", "eq0")
ARITY = {"succ": 1, "pred": 1, "pair": 2, "proj1": 1, "proj2": 1, "ite": 3, "fix": 1, "eq0": 2}
_BUILTIN_INDEX = {name: i for i, name in enumerate(BUILTINS)}


@dataclass(frozen=True, slots=True)
class Var:
    index: int


@dataclass(frozen=True, slots=True)
class Const:
    value: int


@dataclass(frozen=True, slots=True)
class App:
    fun: object
    arg: object


@dataclass(frozen=True, slots=True)
class Abs:
    body: object


@dataclass(frozen=True, slots=True)
class Builtin:
    name: str

    def __post_init__(self):
        if self.name not in _BUILTIN_INDEX:
            from ..errors import UnknownBuiltin
            raise UnknownBuiltin(self.name)


def apps(f, *args):
    for a in args:
        f = App(f, a)
    return f


# -- bijective base-k strings ------------------------------------------------

@lru_cache(maxsize=4096)
def _pow(base, k):
    return base ** k


def _to_base(v, base, length):
    if length <= 48:
        out = bytearray(length)
        for i in range(length - 1, -1, -1):
            v, out[i] = divmod(v, base)
        return bytes(out)
    h = length // 2
    hi, lo = divmod(v, _pow(base, h))
    return _to_base(hi, base, length - h) + _to_base(lo, base, h)


def _from_base(digits, base):
    if len(digits) <= 48:
        v = 0
        for d in digits:
            v = v * base + d
        return v
    h = len(digits) // 2
    lo = digits[len(digits) - h:]
    return _from_base(digits[:len(digits) - h], base) * _pow(base, h) + _from_base(lo, base)


def _offset(base, length):
    return (_pow(base, length) - 1) // (base - 1)


def _bijective_length(n, base, bits_per_digit):
    length = max(0, int(((base - 1) * n + 1).bit_length() / bits_per_digit) - 1)
    while length > 0 and _offset(base, length) > n:
        length -= 1
    while _offset(base, length + 1) <= n:
        length += 1
    return length


def _to_bij256(n):
    length = _bijective_length(n, 256, 8.0)
    return (n - _offset(256, length)).to_bytes(length, "big")


def _from_bij256(b):
    return _offset(256, len(b)) + int.from_bytes(b, "big")


def _to_bij255(n):
    length = _bijective_length(n, 255, 7.994353436858858)
    return _to_base(n - _offset(255, length), 255, length)


def _from_bij255(b):
    return _offset(255, len(b)) + _from_base(b, 255)


def tpair(x, y):
    """Bijection N x N -> N with output size about bits(x) + bits(y).

    The left component is written in bijective base 255, a 0xff separator
    follows, and then the right component in bijective base 256.
    """
    w = _to_bij255(x)
    if y:
        w = w + b"\xff" + _to_bij256(y - 1)
    return _from_bij256(w)


def tunpair(k):
    w = _to_bij256(k)
    i = w.find(b"\xff")
    if i < 0:
        return _from_bij255(w), 0
    return _from_bij255(w[:i]), 1 + _from_bij256(w[i + 1:])


# -- numbering -----------------------------------------------------------------

def encode(term):
    out = []
    stack = [(term, False)]
    while stack:
        node, ready = stack.pop()
        cls = type(node)
        if cls is Var:
            out.append(8 + 4 * node.index)
        elif cls is Const:
            out.append(9 + 4 * node.value)
        elif cls is Builtin:
            out.append(_BUILTIN_INDEX[node.name])
        elif cls is Abs:
            if ready:
                out.append(10 + 4 * out.pop())
            else:
                stack.append((node, True))
                stack.append((node.body, False))
        elif cls is App:
            if ready:
                a = out.pop()
                f = out.pop()
                out.append(11 + 4 * tpair(a, f))
            else:
                stack.append((node, True))
                stack.append((node.arg, False))
                stack.append((node.fun, False))
        else:
            raise TypeError(f"not a program term: {node!r}")
    return out[0]


_DECODED = {}
_DECODE_CACHE_MAX = 200_000


def remember(n, term):
    if len(_DECODED) >= _DECODE_CACHE_MAX:
        _DECODED.clear()
    _DECODED[n] = term


def decode(n):
    if n < 0:
        raise ValueError("codes are naturals")
    hit = _DECODED.get(n)
    if hit is not None:
        return hit
    out = []
    stack = [(n, False)]
    while stack:
        k, ready = stack.pop()
        if ready:
            if k == 2:
                out.append(Abs(out.pop()))
            else:
                f = out.pop()
                a = out.pop()
                out.append(App(f, a))
            continue
        hit = _DECODED.get(k)
        if hit is not None:
            out.append(hit)
            continue
        if k < 8:
            out.append(Builtin(BUILTINS[k]))
            continue
        payload, tag = divmod(k - 8, 4)
        if tag == 0:
            out.append(Var(payload))
        elif tag == 1:
            out.append(Const(payload))
        elif tag == 2:
            stack.append((2, True))
            stack.append((payload, False))
        else:
            a, f = tunpair(payload)
            stack.append((3, True))
            stack.append((f, False))
            stack.append((a, False))
    term = out[0]
    remember(n, term)
    return term


def free_vars(term, depth=0):
    """Set of free de Bruijn indices, relative to the outside of ``term``."""
    found = set()
    stack = [(term, depth)]
    while stack:
        node, d = stack.pop()
        cls = type(node)
        if cls is Var:
            if node.index >= d:
                found.add(node.index - d)
        elif cls is Abs:
            stack.append((node.body, d + 1))
        elif cls is App:
            stack.append((node.fun, d))
            stack.append((node.arg, d))
    return found


def is_closed(term):
    return not free_vars(term)


def term_size(term):
    n = 0
    stack = [term]
    while stack:
        node = stack.pop()
        n += 1
        if type(node) is Abs:
            stack.append(node.body)
        elif type(node) is App:
            stack.append(node.fun)
            stack.append(node.arg)
    return n


def show(term, names=None):
    """Readable rendering using the textual term syntax."""
    names = list(names or [])
    if type(term) is Var:
        i = len(names) - 1 - term.index
        return names[i] if 0 <= i < len(names) else f"#{term.index}"
    if type(term) is Const:
        return str(term.value)
    if type(term) is Builtin:
        return term.name
    if type(term) is Abs:
        v = f"x{len(names)}"
        return f"\\{v}. {show(term.body, names + [v])}"
    f, a = show(term.fun, names), show(term.arg, names)
    if type(term.fun) is Abs:
        f = f"({f})"
    if type(term.arg) in (App, Abs):
        a = f"({a})"
    return f"{f} {a}"
