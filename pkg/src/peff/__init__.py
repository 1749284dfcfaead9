"""Realizability toolkit: a coded PCA, realized collections and families, the
realizability doctrine, a set universe, an internal language, and its quotient completion."""
from . import config
from .config import Config, using
from .errors import IndeterminateVerdict, PeffError
from .tri import IN, OUT, UNKNOWN, Tri

__version__ = "0.1.0"
