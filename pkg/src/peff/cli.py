"""The peff command line: evaluate, construct, realize, extract and verify."""
import json
import sys

import click

from . import config, serialize
from .errors import IndeterminateVerdict, PeffError, SchemaError, TermSyntaxError, TypeMismatch, UnknownSuite
from .tri import IN, OUT, UNKNOWN, Tri

EXIT = {"pass": 0, "fail": 1, "indeterminate": 3}
USAGE_ERRORS = (TermSyntaxError, SchemaError, UnknownSuite, TypeMismatch)


def show_tri(v):
    return v.value.capitalize() if isinstance(v, Tri) else v


def status_of(verdicts):
    vs = list(verdicts)
    if any(v in (OUT, "fail", False) for v in vs):
        return "fail"
    if any(v in (UNKNOWN, "indeterminate") for v in vs):
        return "indeterminate"
    return "pass"


def law_verdict(v):
    return {IN: "pass", OUT: "fail", UNKNOWN: "indeterminate"}[v]


def emit(ctx, doc, status):
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    out = ctx.obj["out"]
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    ctx.exit(EXIT[status])


def fail_with(ctx, err):
    code = 2 if isinstance(err, USAGE_ERRORS) else 3 if isinstance(err, IndeterminateVerdict) else 1
    doc = {"error": type(err).__name__, "message": str(err)}
    for attr in ("law", "path", "position", "counterexample"):
        if getattr(err, attr, None) is not None:
            doc[attr] = getattr(err, attr)
    click.echo(json.dumps(doc, sort_keys=True, default=str), err=True)
    ctx.exit(code)


class PeffGroup(click.Group):
    """Maps library errors to exit codes: 2 usage, 3 indeterminate, 1 definite failure."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except PeffError as e:
            fail_with(ctx, e)


# -- argument readers ------------------------------------------------------------------

def read_doc(text):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"invalid JSON: {e.msg}")


def collection_arg(text):
    """N, N:8, 1, 0, {0,1,2}, or a JSON collection document (inline or @file)."""
    from .collections import finite, initial, nat, terminal
    t = text.strip()
    if t == "N":
        return nat()
    if t.startswith("N:") and t[2:].isdigit():
        return nat(int(t[2:]))
    if t == "1":
        return terminal()
    if t == "0":
        return initial()
    if t.startswith("{") and not t.startswith('{"'):
        body = t.strip("{}").strip()
        try:
            return finite([int(v) for v in body.split(",") if v.strip()])
        except ValueError:
            raise SchemaError("$", f"bad finite collection {text!r}")
    doc = read_doc(t)
    if isinstance(doc, dict) and "schema" in doc:
        return serialize.from_document(doc)
    return serialize.collection_from(doc)


def term_arg(text):
    from .pca import prog
    return prog(text)


def context_arg(text):
    """x:N,y:N or a JSON list of [name, collection] pairs (inline or @file)."""
    from .lang import Context
    if not text:
        return Context()
    if text.lstrip().startswith(("[", "@")):
        entries = [(n, collection_arg(c)) for n, c in read_doc(text)]
    else:
        entries = []
        for part in text.split(","):
            name, _, coll = part.partition(":")
            if not coll:
                raise TermSyntaxError(f"context entry {part!r} needs name:collection", 0)
            entries.append((name.strip(), collection_arg(coll)))
    return Context(entries)


QOBJECTS = ("delta", "parity", "omega")


def qobject_arg(name, carrier=None):
    from .quotient import delta, omega, parity_nat
    if name == "delta":
        return delta(carrier or collection_arg("N"))
    if name == "parity":
        return parity_nat(carrier)
    if name == "omega":
        return omega()
    raise SchemaError("$", f"unknown object {name!r}; known: {', '.join(QOBJECTS)}")


def _set_out(ctx, param, value):
    if value:
        ctx.find_root().obj["out"] = value


out_option = click.option("--out", type=click.Path(dir_okay=False), expose_value=False, callback=_set_out,
                          help="Write the report here.")


# -- commands ------------------------------------------------------------------------------

@click.group(cls=PeffGroup)
@click.option("--fuel", type=int, default=None, help="Evaluation step budget.")
@click.option("--depth", type=int, default=None, help="Recursion depth for set-code checks.")
@click.option("--bound", type=int, default=None, help="Membership bound for universe checks.")
@click.option("--seed", type=int, default=None, help="Seed for sampled catalogs.")
@click.option("--nat-size", type=int, default=None, help="Support size of the natural numbers.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here.")
@click.pass_context
def main(ctx, fuel, depth, bound, seed, nat_size, out):
    overrides = {k: v for k, v in dict(fuel=fuel, depth=depth, bound=bound, seed=seed,
                                       nat_size=nat_size).items() if v is not None}
    ctx.obj = {"out": out, "overrides": overrides}
    ctx.with_resource(config.using(**overrides))


@main.command("eval")
@out_option
@click.argument("term")
@click.pass_context
def eval_cmd(ctx, term):
    """Evaluate a closed term and print its value."""
    from .pca import kleene_apply
    r = kleene_apply(term_arg(term), [])
    if r.ok:
        emit(ctx, r.value, "pass")
    if r.exhausted:
        emit(ctx, {"result": "fuel exhausted", "steps": r.steps}, "indeterminate")
    emit(ctx, {"result": "stuck"}, "fail")


@main.command("check-arrow")
@out_option
@click.argument("code")
@click.option("--dom", required=True, help="Domain collection.")
@click.option("--cod", required=True, help="Codomain collection.")
@click.pass_context
def check_arrow(ctx, code, dom, cod):
    """Check that a program maps every support point of DOM into COD."""
    from .collections import Arrow
    f = Arrow(term_arg(code), collection_arg(dom), collection_arg(cod))
    v = f.check()
    emit(ctx, {"arrow": serialize.to_document(f), "total": show_tri(v)}, law_verdict(v))


CONSTRUCT_KINDS = ("product", "coproduct", "list", "qobject", "qproduct", "qcoproduct", "quotient")


@main.command("construct")
@out_option
@click.argument("kind", type=click.Choice(CONSTRUCT_KINDS))
@click.argument("args", nargs=-1)
@click.option("--carrier", default=None, help="Carrier collection for qobject.")
@click.option("--relation", "relation_name", default="discrete",
              type=click.Choice(["discrete", "parity", "top"]), help="Relation for qobject.")
@click.option("--witness", "witnesses", multiple=True, help="law=TERM; the given realizer is checked, not searched.")
@click.option("--max-len", type=int, default=None, help="Length cap for list objects.")
@click.pass_context
def construct(ctx, kind, args, carrier, relation_name, witnesses, max_len):
    """Build an object and print its document with per-law verdicts."""
    from .collections import Coproduct, ListObject, Product
    if kind in ("product", "coproduct"):
        if len(args) != 2:
            raise click.UsageError(f"{kind} takes two collections")
        A, B = (collection_arg(a) for a in args)
        obj = (Product if kind == "product" else Coproduct)(A, B).obj
        emit(ctx, {"object": serialize.to_document(obj), "support_size": len(obj.support)}, "pass")
    if kind == "list":
        if len(args) != 1:
            raise click.UsageError("list takes one collection")
        obj = ListObject(collection_arg(args[0]), max_len).obj
        emit(ctx, {"object": serialize.to_document(obj), "support_size": len(obj.support)}, "pass")
    if kind == "qobject":
        doc, status = construct_qobject(carrier, relation_name, witnesses)
        emit(ctx, doc, status)
    from .quotient import parity_relation, q_coproduct, q_product, quotient_of
    if kind in ("qproduct", "qcoproduct"):
        if len(args) != 2:
            raise click.UsageError(f"{kind} takes two object names ({', '.join(QOBJECTS)})")
        X, Y = (qobject_arg(a) for a in args)
        obj = (q_product if kind == "qproduct" else q_coproduct)(X, Y).obj
        emit(ctx, qobject_report(obj), "pass")
    # quotient: ΔN by parity, with the canonical arrow
    X = qobject_arg(args[0] if args else "delta")
    Q, can = quotient_of(X, parity_relation(X.carrier))
    doc = qobject_report(Q)
    doc["canonical"] = serialize.to_document(can)
    emit(ctx, doc, "pass")


def qobject_report(X):
    from .quotient.qobject import LawFamilies
    from .doctrine import entailment_tri
    fams = LawFamilies(X.carrier, X.rel)
    laws = {law: law_verdict(entailment_tri(*fams.pairs[law], X.witnesses[law])) for law in X.witnesses}
    return {"object": serialize.to_document(X), "laws": laws}


def construct_qobject(carrier, relation_name, witnesses):
    from .collections import Product
    from .doctrine import entailment_tri, search_entailment, top
    from .quotient import parity_relation
    from .quotient.qobject import LAWS, LawFamilies, QObject, discrete_relation
    A = collection_arg(carrier or "N")
    rel = {"discrete": discrete_relation, "parity": parity_relation,
           "top": lambda A: top(Product(A, A).obj)}[relation_name](A)
    given = {}
    for w in witnesses:
        law, _, text = w.partition("=")
        if law not in LAWS or not text:
            raise click.UsageError(f"--witness expects one of {', '.join(LAWS)} as law=TERM, got {w!r}")
        given[law] = term_arg(text)
    fams = LawFamilies(A, rel)
    laws, found = {}, {}
    for law in LAWS:
        if law in given:
            found[law] = given[law]
            laws[law] = law_verdict(entailment_tri(*fams.pairs[law], given[law]))
        else:
            try:
                w = search_entailment(*fams.pairs[law])
            except IndeterminateVerdict:
                laws[law] = "indeterminate"
                continue
            laws[law] = "fail" if w is None else "pass"
            if w is not None:
                found[law] = w.realizer
    status = status_of(laws.values())
    doc = {"laws": laws}
    failing = sorted(law for law, v in laws.items() if v != "pass")
    if failing:
        doc["failing"] = failing
    if not failing:
        doc["object"] = serialize.to_document(QObject(A, rel, found))
    return doc, status


@main.command("realize")
@out_option
@click.argument("formula")
@click.option("--context", "context_text", default="", help="x:N,y:N or a JSON [[name, coll], ...] (or @file).")
@click.option("--realizer", default=None, help="Check this realizer instead of searching.")
@click.option("--budget", type=int, default=64, help="Candidate budget for the search.")
@click.pass_context
def realize(ctx, formula, context_text, realizer, budget):
    """Find or check a realizer of a formula in context."""
    from .errors import NotFoundWithinBudget
    from .lang import arithmetic_signature, parse, show, validity, verify_validity
    Gamma = context_arg(context_text)
    sig = arithmetic_signature()
    for name, coll in Gamma.entries:
        sig.collections.setdefault(coll.name, coll)
    phi = parse(formula, Gamma, sig)
    doc = {"formula": show(phi), "context": [[n, c.name] for n, c in Gamma.entries]}
    if realizer is not None:
        code = term_arg(realizer)
        ok = verify_validity(phi, Gamma, code)
        doc.update({"realizer": code.value, "valid": ok})
        emit(ctx, doc, "pass" if ok else "fail")
    try:
        w = validity(phi, Gamma, budget=budget)
    except NotFoundWithinBudget as e:
        doc.update({"valid": None, "reason": str(e)})
        emit(ctx, doc, "indeterminate")
    doc.update({"realizer": w.realizer.value, "valid": True})
    emit(ctx, doc, "pass")


@main.command("extract-choice")
@out_option
@click.argument("relation_text", metavar="RELATION")
@click.option("--witness", required=True, help="Realizer of forall x. exists y. R(x, y) in the empty context.")
@click.option("--dom", default="N", help="Collection of x.")
@click.option("--cod", default="N", help="Collection of y.")
@click.option("--at", "points", multiple=True, type=int, help="Report the extracted function at these points.")
@click.pass_context
def extract_choice(ctx, relation_text, witness, dom, cod, points):
    """Extract a choice function from a realized total relation R(x, y)."""
    from .lang import Context, arithmetic_signature, choice_extract, relation
    A, B = collection_arg(dom), collection_arg(cod)
    sig = arithmetic_signature()
    sig.collections.setdefault(A.name, A)
    sig.collections.setdefault(B.name, B)
    R = relation(relation_text, A, B, signature=sig)
    f = choice_extract(Context(), A, B, R, term_arg(witness))
    values = {str(x): f(x) for x in (points or A.support[:8])}
    emit(ctx, {"relation": relation_text, "function": serialize.to_document(f), "values": values,
               "post_condition": "pass"}, "pass")


@main.group("universe")
def universe_group():
    """Set codes in the universe."""


@universe_group.command("check-code")
@out_option
@click.argument("code")
@click.option("--members", "n_members", type=int, default=8, help="How many members to list.")
@click.pass_context
def check_code(ctx, code, n_members):
    """Check that a code (s-expression or decimal) is a coherent set code."""
    from .universe import check_coherence, check_set, enumerate_members, parse_code, show_code
    c = parse_code(code)
    is_set = check_set(c)
    coherent = check_coherence(c) if is_set is IN else is_set
    doc = {"code": c, "shape": show_code(c), "set": show_tri(is_set), "coherent": show_tri(coherent)}
    if is_set is IN:
        doc["members"] = enumerate_members(c)[:n_members]
    emit(ctx, doc, status_of([is_set, coherent]))


@main.command("classify")
@out_option
@click.argument("family")
@click.option("--object", "obj", default="parity", type=click.Choice(QOBJECTS[:2]),
              help="The object the family lives over.")
@click.pass_context
def classify_cmd(ctx, family, obj):
    """Classify a small proposition, given as a term x -> set code, into Ω."""
    from .errors import NotSaturated
    from .quotient import classify, comprehend, omega
    from .universe import TauFamily
    X = qobject_arg(obj)
    P = TauFamily(X.carrier, term_arg(family), name="P")
    Om = omega()
    try:
        chi = classify(P, X, Om)
    except NotSaturated as e:
        emit(ctx, {"saturated": False, "counterexample": list(e.counterexample)}, "fail")
    back = comprehend(chi)
    pts = X.carrier.support[:8]
    doc = {"saturated": True, "classifier": serialize.to_document(chi),
           "values": {str(x): chi(x) for x in pts},
           "roundtrip": all(bool(back.fibre(x)) == bool(P.fibre(x)) for x in pts)}
    emit(ctx, doc, "pass" if doc["roundtrip"] else "fail")


@main.command("verify")
@out_option
@click.argument("suite_name", metavar="SUITE")
@click.option("--timing", is_flag=True, help="Include per-check wall time (not byte-stable).")
@click.pass_context
def verify(ctx, suite_name, timing):
    """Run a registered suite, or all of them."""
    from .suites import run_all, run_suite
    # desk scale unless the caller chose a size
    overrides = {} if "nat_size" in ctx.obj["overrides"] else {"nat_size": 8}
    with config.using(**overrides) as cfg:
        reports = run_all(cfg) if suite_name == "all" else [run_suite(suite_name, cfg)]
    docs = [r.to_dict(timing) for r in reports]
    status = status_of(r.status for r in reports)
    doc = docs[0] if len(docs) == 1 else {"suites": docs, "status": status}
    emit(ctx, doc, status)


if __name__ == "__main__":
    sys.exit(main())
