"""Brute-force set semantics of universe codes over finite extensions.

Independent of the library checker: decoding, extensions and membership are
computed here from the constructor clauses. Only family programs are run on
the PCA.
"""
from math import isqrt

from peff.pca import kleene_apply, table_code
from peff.universe import N0, N1, const_fn, id_code, list_code, pi_code, plus_code, sigma_code

INFINITE = None
MAX_EXT = 4
PER_SIZE = 3


def cantor_unpair(z):
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def cantor_pair(x, y):
    return (x + y) * (x + y + 1) // 2 + y


def run(code, arg):
    r = kleene_apply(code, [arg])
    return r.value if r.ok else None


def list_items(n):
    out = []
    while n > 0:
        n, a = cantor_unpair(n - 1)
        out.append(a)
    return out


class Oracle:
    def __init__(self):
        self._ext = {}

    def is_set(self, c):
        tag, rest = cantor_unpair(c)
        if tag == 1:
            return rest in (0, 1)
        if tag in (2, 3):
            a, b = cantor_unpair(rest)
            ea = self.ext(a) if self.is_set(a) else INFINITE
            if not self.is_set(a) or ea is INFINITE:
                return False
            return all(run(b, t) is not None and self.is_set(run(b, t)) for t in ea)
        if tag == 4:
            return all(self.is_set(x) for x in cantor_unpair(rest))
        if tag == 5:
            return self.is_set(rest)
        if tag == 6:
            a, xy = cantor_unpair(rest)
            x, y = cantor_unpair(xy)
            return self.is_set(a) and self.member(x, a) and self.member(y, a)
        return False

    def ext(self, c):
        """The extension as a frozenset, or INFINITE."""
        if c not in self._ext:
            self._ext[c] = self._extension(c)
        return self._ext[c]

    def _extension(self, c):
        tag, rest = cantor_unpair(c)
        if tag == 1:
            return frozenset() if rest == 0 else frozenset([0])
        if tag in (2, 3):
            a, b = cantor_unpair(rest)
            ea = self.ext(a)
            fibres = {t: self.ext(run(b, t)) for t in ea}
            if any(f is INFINITE for f in fibres.values()):
                return INFINITE
            if tag == 2:
                return frozenset(cantor_pair(t, y) for t, f in fibres.items() for y in f)
            return INFINITE if ea else frozenset()  # functions are codes: infinitely many
        if tag == 4:
            l, r = (self.ext(x) for x in cantor_unpair(rest))
            if l is INFINITE or r is INFINITE:
                return INFINITE
            return frozenset([cantor_pair(0, x) for x in l] + [cantor_pair(1, x) for x in r])
        if tag == 5:
            return INFINITE if self.ext(rest) else frozenset([0])
        if tag == 6:
            a, xy = cantor_unpair(rest)
            x, y = cantor_unpair(xy)
            return INFINITE if x == y else frozenset()
        return frozenset()

    def member(self, n, c):
        if not self.is_set(c):
            return False
        tag, rest = cantor_unpair(c)
        if tag == 1:
            return rest == 1 and n == 0
        if tag == 2:
            a, b = cantor_unpair(rest)
            x, y = cantor_unpair(n)
            return self.member(x, a) and self.member(y, run(b, x))
        if tag == 3:
            a, b = cantor_unpair(rest)
            for t in self.ext(a):
                v = run(n, t)
                if v is None or not self.member(v, run(b, t)):
                    return False
            return True
        if tag == 4:
            side, x = cantor_unpair(n)
            l, r = cantor_unpair(rest)
            return (side == 0 and self.member(x, l)) or (side == 1 and self.member(x, r))
        if tag == 5:
            return all(self.member(x, rest) for x in list_items(n))
        if tag == 6:
            _, xy = cantor_unpair(rest)
            x, y = cantor_unpair(xy)
            return x == y
        return False


def generate(depth=4, oracle=None):
    """Constructor-generated codes up to ``depth``, components with extensions of size <= MAX_EXT.

    Components are deduplicated by extension, since membership in a composite
    code depends on its components only through their extensions, and at most
    PER_SIZE components of each extension size are kept.
    """
    o = oracle or Oracle()
    codes, seen = [N0, N1], {N0, N1}
    pool = {frozenset(): N0, frozenset([0]): N1}
    for _ in range(depth):
        comps = list(pool.values())
        fams = [const_fn(c) for c in comps]
        level = []
        for a in comps:
            ea = sorted(o.ext(a))
            if ea:
                fams_a = fams + [table_code({t: comps[i % len(comps)] for i, t in enumerate(ea)}, N0)]
            else:
                fams_a = fams
            for b in fams_a:
                level += [sigma_code(a, b), pi_code(a, b)]
            for a2 in comps:
                level.append(plus_code(a, a2))
            level.append(list_code(a))
            for x in ea[:2]:
                for y in ea[:2]:
                    level.append(id_code(a, x, y))
            level.append(id_code(a, 0, 99))
        level.append(cantor_pair(7, 0))
        for c in level:
            if c in seen:
                continue
            seen.add(c)
            codes.append(c)
            e = o.ext(c) if o.is_set(c) else INFINITE
            if e is not INFINITE and len(e) <= MAX_EXT and e not in pool \
                    and sum(len(k) == len(e) for k in pool) < PER_SIZE:
                pool[e] = c
    return codes, o
