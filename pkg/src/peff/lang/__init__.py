"""Internal language: syntax, interpretation, arithmetic, and realizer theorems."""
from .syntax import (And, Apply, Atom, Bot, Context, Eq, Exists, Forall, Imp, Or, PointConst, PredSymbol,
                     Signature, Symbol, Var, arithmetic_signature, check, neg, parse, point_symbol,
                     product_of, show)
from .interpret import (assemble, exists_literal, forall_literal, interpret, is_valid, synthesize,
                        term_code, validity, verify_validity)
from .ha import (HAnd, HBot, HEq, HExists, HForall, HFun, HImp, HNum, HOr, HVar, bridge, free_vars,
                 ha_context, ha_realize, parse_ha, translate_ha)
from .theorems import (ac_formula, ac_realizer, choice_extract, choice_extract_with_witness,
                       choice_premise, ct_formula, ct_realizer, kleene_t_predicate, relation)
