"""Three-valued verdicts for bounded decision procedures."""
from enum import Enum

from .errors import IndeterminateVerdict


class Tri(Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"

    def __bool__(self):
        if self is Tri.UNKNOWN:
            raise IndeterminateVerdict("verdict is unknown (fuel exhausted)")
        return self is Tri.IN

    @staticmethod
    def of(flag):
        return Tri.IN if flag else Tri.OUT

    def neg(self):
        if self is Tri.IN:
            return Tri.OUT
        if self is Tri.OUT:
            return Tri.IN
        return Tri.UNKNOWN


IN, OUT, UNKNOWN = Tri.IN, Tri.OUT, Tri.UNKNOWN


def tri_and(*parts):
    """Short-circuit conjunction. Arguments may be Tri values or zero-arg callables."""
    seen_unknown = False
    for p in parts:
        v = p() if callable(p) else p
        if v is OUT:
            return OUT
        if v is UNKNOWN:
            seen_unknown = True
    return UNKNOWN if seen_unknown else IN


def tri_or(*parts):
    seen_unknown = False
    for p in parts:
        v = p() if callable(p) else p
        if v is IN:
            return IN
        if v is UNKNOWN:
            seen_unknown = True
    return UNKNOWN if seen_unknown else OUT


def tri_all(items, pred):
    seen_unknown = False
    for x in items:
        v = pred(x)
        if v is OUT:
            return OUT
        if v is UNKNOWN:
            seen_unknown = True
    return UNKNOWN if seen_unknown else IN


def tri_any(items, pred):
    seen_unknown = False
    for x in items:
        v = pred(x)
        if v is IN:
            return IN
        if v is UNKNOWN:
            seen_unknown = True
    return UNKNOWN if seen_unknown else OUT
