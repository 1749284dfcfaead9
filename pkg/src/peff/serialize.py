"""Schema-versioned JSON documents for collections, arrows, families, witnesses and quotient objects."""
import json

from . import collections as col
from . import families as fam
from .doctrine import EntailmentWitness, meet, join, imp, top, bottom
from .errors import SchemaError
from .pca import Code

SCHEMA = "peff/1"
# opaque deciders, and constructions whose support depends on a code catalog
UNSERIALIZABLE = ("opaque", "formula", "qexp", "qexp_rel")
TYPES = ("collection", "arrow", "family", "witness", "qobject", "qarrow", "report")


def _need(doc, key, path, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(path, f"missing field {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise SchemaError(f"{path}.{key}", f"expected {kind.__name__}")
    return v


def _code(v, path):
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise SchemaError(path, "expected a code (non-negative integer)")
    return Code(v)


# -- collections --------------------------------------------------------------------

def _check_recipe(r, path="$"):
    if isinstance(r, dict):
        if r.get("kind") in UNSERIALIZABLE:
            raise SchemaError(path, f"recipe of kind {r.get('kind')!r} is not serializable")
        for k, v in r.items():
            _check_recipe(v, f"{path}.{k}")
    elif isinstance(r, list):
        for i, v in enumerate(r):
            _check_recipe(v, f"{path}[{i}]")


def collection_doc(C):
    _check_recipe(C.recipe)
    return C.recipe


def collection_from(doc, path="$"):
    kind = _need(doc, "kind", path, str)
    if kind == "builtin":
        name = _need(doc, "name", path, str)
        args = [collection_from(a, f"{path}.args[{i}]") for i, a in enumerate(doc.get("args", []))]
        if name == "terminal":
            return col.terminal()
        if name == "initial":
            return col.initial()
        if name == "nat":
            return col.nat(_need(doc, "size", path, int))
        if name == "finite":
            return col.finite(_need(doc, "values", path, list))
        if name == "undecided":
            return col.undecided_flag()
        if name == "universe":
            from .universe import universe
            return universe()
        if name == "product" and len(args) == 2:
            return col.Product(*args).obj
        if name == "coproduct" and len(args) == 2:
            return col.Coproduct(*args).obj
        if name == "list" and len(args) == 1:
            return col.ListObject(args[0], _need(doc, "max_len", path, int)).obj
        if name == "exponential" and len(args) == 2:
            return col.WeakExponential(*args).obj
        if name == "equalizer" and len(args) == 2:
            f, g = (_code(c, f"{path}.codes") for c in _need(doc, "codes", path, list))
            return col.Equalizer(col.Arrow(f, args[0], args[1]), col.Arrow(g, args[0], args[1])).obj
        raise SchemaError(f"{path}.name", f"unknown builtin collection {name!r}")
    if kind == "program":
        return col.from_program(_code(_need(doc, "code", path), f"{path}.code"),
                                _need(doc, "support", path, list), _need(doc, "name", path, str))
    if kind == "total":
        A = collection_from(_need(doc, "base", path), f"{path}.base")
        return fam.TotalSigma(A, family_from(_need(doc, "family", path), f"{path}.family")).obj
    raise SchemaError(f"{path}.kind", f"unknown collection kind {kind!r}")


# -- arrows -------------------------------------------------------------------------

def arrow_doc(f):
    return {"code": f.code.value, "dom": collection_doc(f.dom), "cod": collection_doc(f.cod)}


def arrow_from(doc, path="$"):
    return col.Arrow(_code(_need(doc, "code", path), f"{path}.code"),
                     collection_from(_need(doc, "dom", path), f"{path}.dom"),
                     collection_from(_need(doc, "cod", path), f"{path}.cod"))


# -- families -----------------------------------------------------------------------

def family_doc(P):
    _check_recipe(P.recipe)
    return P.recipe


def family_from(doc, path="$"):
    kind = _need(doc, "kind", path, str)

    def sub(key):
        return family_from(_need(doc, key, path), f"{path}.{key}")

    def base():
        return collection_from(_need(doc, "base", path), f"{path}.base")

    def args():
        return [family_from(a, f"{path}.args[{i}]") for i, a in enumerate(_need(doc, "args", path, list))]

    if kind == "explicit":
        fibres = _need(doc, "fibres", path, dict)
        try:
            table = {int(k): v for k, v in fibres.items()}
        except ValueError:
            raise SchemaError(f"{path}.fibres", "keys must be integers")
        return fam.explicit_family(base(), table)
    if kind == "constant":
        return fam.constant_family(base(), collection_from(_need(doc, "value", path), f"{path}.value"))
    if kind == "program":
        return fam.program_family(base(), _code(_need(doc, "code", path), f"{path}.code"), lambda x: (),
                                  "program")
    if kind == "top":
        return top(base())
    if kind == "bottom":
        return bottom(base())
    if kind in ("meet", "join", "imp"):
        parts = args()
        if len(parts) != 2:
            raise SchemaError(f"{path}.args", "expected two arguments")
        return {"meet": meet, "join": join, "imp": imp}[kind](*parts)
    if kind == "list":
        return fam.FibreList(sub("arg")).obj
    if kind == "substitute":
        C = sub("family")
        dom = collection_from(_need(doc, "dom", path), f"{path}.dom")
        return fam.substitute(col.Arrow(_code(_need(doc, "arrow", path), f"{path}.arrow"), dom, C.base), C)
    if kind == "sigma":
        C = sub("family")
        cod = collection_from(_need(doc, "cod", path), f"{path}.cod")
        return fam.sigma_along(col.Arrow(_code(_need(doc, "arrow", path), f"{path}.arrow"), C.base, cod), C)
    if kind == "tau":
        from .universe import TauFamily
        return TauFamily(base(), _code(_need(doc, "code", path), f"{path}.code"))
    if kind == "discrete":
        from .quotient.qobject import discrete_relation
        return discrete_relation(base())
    if kind == "parity":
        from .quotient.qobject import parity_relation
        return parity_relation(base())
    if kind == "eq_omega":
        from .quotient.props import eq_relation
        from .universe import universe
        return eq_relation(universe())
    if kind == "qproduct":
        from .quotient.structure import product_relation
        left, right = args()
        carrier = collection_from(_need(doc, "carrier", path), f"{path}.carrier")
        return product_relation(_Relation(left), _Relation(right), carrier)
    if kind == "qcoproduct":
        from .quotient.structure import coproduct_relation
        left, right = args()
        A, B = (collection_from(c, f"{path}.carriers[{i}]")
                for i, c in enumerate(_need(doc, "carriers", path, list)))
        return coproduct_relation(_Relation(left, A), _Relation(right, B), col.Coproduct(A, B))
    if kind == "qlist":
        from .quotient.structure import list_relation
        A = collection_from(_need(doc, "carrier", path), f"{path}.carrier")
        L = col.ListObject(A, _need(doc, "max_len", path, int))
        N = collection_from(_need(doc, "nat", path), f"{path}.nat")
        return list_relation(_Relation(sub("arg"), A), L, N)
    if kind == "fdisc":
        from .quotient.families import discrete_fibre_relation
        return discrete_fibre_relation(sub("arg"))
    if kind == "pi":
        C = sub("family")
        cod = collection_from(_need(doc, "cod", path), f"{path}.cod")
        return fam.WeakPi(col.Arrow(_code(_need(doc, "arrow", path), f"{path}.arrow"), C.base, cod), C).obj
    if kind == "fibres_of":
        B = collection_from(_need(doc, "dom", path), f"{path}.dom")
        A = collection_from(_need(doc, "cod", path), f"{path}.cod")
        return fam.slice_to_family(col.Arrow(_code(_need(doc, "arrow", path), f"{path}.arrow"), B, A))
    if kind == "separate":
        from .doctrine import separate
        return separate(sub("arg"))
    raise SchemaError(f"{path}.kind", f"unknown family kind {kind!r}")


class _Relation:
    """Just enough of a QObject for rebuilding relations from their parts."""

    def __init__(self, rel, carrier=None):
        self.rel = rel
        self.carrier = carrier

    def related(self, x, y):
        from .pca.coding import pair
        return self.rel.fibre(pair(x, y))


# -- witnesses and quotient objects --------------------------------------------------------

def witness_doc(w):
    return {"realizer": w.realizer.value, "source": family_doc(w.source), "target": family_doc(w.target)}


def witness_from(doc, path="$"):
    return EntailmentWitness(_code(_need(doc, "realizer", path), f"{path}.realizer"),
                             family_from(_need(doc, "source", path), f"{path}.source"),
                             family_from(_need(doc, "target", path), f"{path}.target"))


def qobject_doc(X):
    return {"name": X.name, "carrier": collection_doc(X.carrier), "rel": family_doc(X.rel),
            "witnesses": {k: X.witnesses[k].value for k in ("refl", "sym", "trans")}}


def qobject_from(doc, path="$"):
    from .quotient.qobject import QObject
    wits = _need(doc, "witnesses", path, dict)
    codes = {}
    for law in ("refl", "sym", "trans"):
        codes[law] = _code(_need(wits, law, f"{path}.witnesses"), f"{path}.witnesses.{law}")
    return QObject(collection_from(_need(doc, "carrier", path), f"{path}.carrier"),
                   family_from(_need(doc, "rel", path), f"{path}.rel"), codes,
                   name=_need(doc, "name", path, str))


def qarrow_doc(f):
    return {"rep": f.code.value, "ext": f.ext.value, "dom": qobject_doc(f.dom), "cod": qobject_doc(f.cod)}


def qarrow_from(doc, path="$"):
    from .quotient.qobject import QArrow
    dom = qobject_from(_need(doc, "dom", path), f"{path}.dom")
    cod = qobject_from(_need(doc, "cod", path), f"{path}.cod")
    rep = col.Arrow(_code(_need(doc, "rep", path), f"{path}.rep"), dom.carrier, cod.carrier)
    return QArrow(rep, dom, cod, _code(_need(doc, "ext", path), f"{path}.ext"))


# -- documents ---------------------------------------------------------------------------

_WRITERS = {"collection": collection_doc, "arrow": arrow_doc, "family": family_doc, "witness": witness_doc,
            "qobject": qobject_doc, "qarrow": qarrow_doc, "report": lambda r: r}
_READERS = {"collection": collection_from, "arrow": arrow_from, "family": family_from, "witness": witness_from,
            "qobject": qobject_from, "qarrow": qarrow_from, "report": lambda d, path="$": d}


def entity_type(x):
    from .quotient.qobject import QArrow, QObject
    if isinstance(x, col.Collection):
        return "collection"
    if isinstance(x, col.Arrow):
        return "arrow"
    if isinstance(x, fam.Family):
        return "family"
    if isinstance(x, EntailmentWitness):
        return "witness"
    if isinstance(x, QObject):
        return "qobject"
    if isinstance(x, QArrow):
        return "qarrow"
    if isinstance(x, dict):
        return "report"
    raise SchemaError("$", f"cannot serialize {type(x).__name__}")


def to_document(x):
    kind = entity_type(x)
    return {"schema": SCHEMA, "type": kind, "value": _WRITERS[kind](x)}


def from_document(doc):
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError("$.schema", f"expected {SCHEMA!r}")
    kind = _need(doc, "type", "$", str)
    if kind not in _READERS:
        raise SchemaError("$.type", f"unknown entity type {kind!r}")
    return _READERS[kind](_need(doc, "value", "$"), "$.value")


def dumps(x):
    return json.dumps(to_document(x), sort_keys=True, ensure_ascii=False)


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"invalid JSON: {e.msg}")
    return from_document(doc)


def serialize(x):
    return to_document(x)


def deserialize(doc):
    return from_document(doc)
