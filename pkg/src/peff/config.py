"""Global evaluation bounds.

Every bounded procedure reads its defaults from ``CONFIG``; the CLI and the
suite runner install a fresh ``Config`` with :func:`using`.
"""
from contextlib import contextmanager
from dataclasses import dataclass, asdict, replace

DEFAULT_FUEL = 10**6


@dataclass(frozen=True)
class Config:
    fuel: int = DEFAULT_FUEL
    depth: int = 16          # recursion depth for set-code checks
    bound: int = 256         # membership bound for universe checks
    nat_size: int = 64       # support of the natural numbers object is 0..nat_size-1
    list_cap: int = 3        # maximum list length in list supports
    support_cap: int = 256   # cap on constructed supports
    seed: int = 0

    def to_dict(self):
        return asdict(self)


CONFIG = Config()


def current():
    return CONFIG


@contextmanager
def using(cfg=None, **overrides):
    global CONFIG
    old = CONFIG
    base = cfg if cfg is not None else old
    CONFIG = replace(base, **overrides) if overrides else base
    try:
        yield CONFIG
    finally:
        CONFIG = old


def fuel_or_default(fuel):
    return CONFIG.fuel if fuel is None else fuel
