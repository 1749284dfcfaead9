"""Cantor pairing and the list codec built on it."""
import hashlib
from math import isqrt

from ..errors import IndexOutOfRange


def pair(x, y):
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z):
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def proj1(z):
    return unpair(z)[0]


def proj2(z):
    return unpair(z)[1]


def tuple_code(*xs):
    """Left-nested pairing: tuple_code(a, b, c) == pair(pair(a, b), c)."""
    if not xs:
        return 0
    acc = xs[0]
    for x in xs[1:]:
        acc = pair(acc, x)
    return acc


# lists: 0 is empty, cnc(l, a) = pair(l, a) + 1 appends a at the end

def list_concat(code, a):
    return pair(code, a) + 1


def encode_list(items):
    code = 0
    for a in items:
        code = list_concat(code, a)
    return code


def decode_list(code):
    out = []
    while code > 0:
        code, a = unpair(code - 1)
        out.append(a)
    out.reverse()
    return out


def list_length(code):
    n = 0
    while code > 0:
        code = proj1(code - 1)
        n += 1
    return n


def list_component(code, j):
    items = decode_list(code)
    if not 0 <= j < len(items):
        raise IndexOutOfRange(f"component {j} of a list of length {len(items)}")
    return items[j]


def short(n):
    """Printable label for a possibly huge natural: itself, or a digest."""
    if n < 10 ** 12:
        return str(n)
    digest = hashlib.blake2b(n.to_bytes((n.bit_length() + 7) // 8, "big"), digest_size=8).hexdigest()
    return f"#{digest}"
