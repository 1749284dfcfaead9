"""A partial combinatory algebra on natural numbers."""
import sys

from .coding import (decode_list, encode_list, list_component, list_concat, list_length, pair,
                     proj1, proj2, tuple_code, unpair)
from .library import (BUILTIN_NAMES, Code, builtin, const_code, kleene_T, kleene_U, kleene_apply,
                      lambda_abstract, prog, run, table_code, table_term, trace)
from .machine import STUCK, EvalResult, FuelExhausted, Value
from .syntax import parse_term
from .terms import Abs, App, Builtin, Const, Var, decode, encode, show

if sys.getrecursionlimit() < 30000:
    sys.setrecursionlimit(30000)
# codes routinely exceed the default int/str conversion limit
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)
