"""The interpretation ‖·‖ of formulas in context as propositions over ‖Γ‖.

Quantifiers use the presentation along the last context component: an
existential realizer at γ is pair(a, w) with w realizing the body at (γ, a),
a universal realizer is a code sending each a to a realizer of the body.
Equality is the reindexing of ∃ along the diagonal applied to ⊤.
"""
from .. import config
from ..collections import Arrow, Product, _evaluate, apply_tri, bang
from ..doctrine import EntailmentWitness, bottom, check_entailment, imp, join, meet, search_entailment, top
from ..errors import NotFoundWithinBudget
from ..families import Family, _guarded, sigma_along, substitute
from ..families import WeakPi
from ..pca import kleene_apply, prog, table_code
from ..pca.coding import pair, unpair
from ..tri import IN, tri_all, tri_and
from .syntax import And, Atom, Bot, Context, Eq, Exists, Forall, Imp, Or, PointConst, Var, check, show

EXTRA_WITNESSES = 16


def term_code(t, ctx):
    """Code of ‖t[Γ]‖ : ‖Γ‖ -> type of t."""
    if isinstance(t, Var):
        i, _ = ctx.lookup(t.name)
        return prog(rf"\g. {ctx.projection_text(i)}")
    if isinstance(t, PointConst):
        return prog(r"\g. e 0", e=t.symbol.arrow.code)
    env = {f"a{i}": term_code(a, ctx) for i, a in enumerate(t.args)}
    return prog(rf"\g. f {_tuple_text(len(t.args))}", f=t.symbol.arrow.code, **env)


def _tuple_text(n):
    if n == 0:
        return "0"
    text = "(a0 g)"
    for i in range(1, n):
        text = f"(pair {text} (a{i} g))"
    return text


def term_arrow(t, ctx, cod):
    return Arrow(term_code(t, ctx), ctx.obj, cod)


def tuple_arrow(args, ctx, cod):
    """⟨‖t1‖, ..., ‖tn‖⟩ : ‖Γ‖ -> cod, left-nested."""
    env = {f"a{i}": term_code(a, ctx) for i, a in enumerate(args)}
    return Arrow(prog(rf"\g. {_tuple_text(len(args))}", **env), ctx.obj, cod)


def _value(code, x):
    r = kleene_apply(code, [x])
    return r.value if r.ok else None


def eq_literal(phi, ctx):
    """(t =_A s)[Γ] exactly as the reindexed ∃_Δ(⊤_A)."""
    A = phi.coll
    AA = Product(A, A)
    diag = Arrow(prog(r"\x. pair x x"), A, AA.obj)
    both = Arrow(prog(r"\g. pair (t g) (s g)", t=term_code(phi.left, ctx), s=term_code(phi.right, ctx)),
                 ctx.obj, AA.obj)
    return substitute(both, sigma_along(diag, top(A)))


def interpret_eq(phi, ctx):
    lit = eq_literal(phi, ctx)
    t, s = term_code(phi.left, ctx), term_code(phi.right, ctx)

    def cands(g):
        a, b = _value(t, g), _value(s, g)
        return [pair(a, 0)] if a is not None and a == b else []

    return Family(ctx.obj, lambda x, xp, fuel: lit.decide(x, xp, fuel), cands, show(phi),
                  recipe={"kind": "formula", "text": show(phi)})


def interpret_atom(phi, ctx):
    P = phi.pred.prop
    if not phi.args:
        return substitute(bang(ctx.obj), P)
    return substitute(tuple_arrow(phi.args, ctx, P.base), P)


def witness_term(body, var):
    """A term t with Eq(var, t) or Eq(t, var) as a conjunct of body, t not mentioning var."""
    stack = [body]
    while stack:
        phi = stack.pop()
        if isinstance(phi, And):
            stack += [phi.right, phi.left]
        elif isinstance(phi, Eq):
            for mine, other in ((phi.left, phi.right), (phi.right, phi.left)):
                if mine == Var(var) and var not in term_vars(other):
                    return other
    return None


def term_vars(t):
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, PointConst):
        return set()
    return set().union(*(term_vars(a) for a in t.args)) if t.args else set()


def interpret_exists(phi, ctx, body):
    A = phi.coll
    hint = witness_term(phi.body, phi.var)
    hint_code = term_code(hint, ctx) if hint is not None else None

    def inner(g, z, fuel):
        a, w = unpair(z)
        return tri_and(lambda: A.decide(a, fuel), lambda: body.decide(ctx.extension_point(g, a), w, fuel))

    def cands(g):
        seen, out = set(), []
        firsts = [] if hint_code is None else [_value(hint_code, g)]
        for a in [v for v in firsts if v is not None] + list(A.support):
            if a in seen:
                continue
            seen.add(a)
            out += [pair(a, w) for w in body.fibre(ctx.extension_point(g, a))]
        if out:
            return out
        # witness search a little past the listed support
        tried = 0
        for a in range(config.current().bound + 1):
            if tried >= EXTRA_WITNESSES:
                break
            if a in seen or A.decide(a) is not IN:
                continue
            tried += 1
            fib = body.fibre(ctx.extension_point(g, a))
            if fib:
                return [pair(a, w) for w in fib]
        return out

    return Family(ctx.obj, _guarded(ctx.obj, inner), cands, show(phi), exact=True,
                  recipe={"kind": "formula", "text": show(phi)})


def interpret_forall(phi, ctx, body):
    A = phi.coll

    def inner(g, c, fuel):
        return tri_all(A.support, lambda a: apply_tri(
            c, [a], fuel, lambda v: body.decide(ctx.extension_point(g, a), v, fuel)))

    def cands(g):
        out = [prog(r"\t. t"), prog(r"\t. 0")]
        firsts = {}
        for a in A.support:
            fib = body.fibre(ctx.extension_point(g, a))
            if not fib:
                return out
            firsts[a] = fib[0]
        if firsts:
            out.append(table_code(firsts, next(iter(firsts.values()))))
        return out

    return Family(ctx.obj, _guarded(ctx.obj, inner), cands, show(phi),
                  recipe={"kind": "formula", "text": show(phi)})


def _combine(phi, ctx, parts):
    """One clause of the interpretation, given the interpretations of the parts."""
    if isinstance(phi, Bot):
        return bottom(ctx.obj)
    if isinstance(phi, Eq):
        return interpret_eq(phi, ctx)
    if isinstance(phi, Atom):
        return interpret_atom(phi, ctx)
    if isinstance(phi, And):
        return meet(*parts)
    if isinstance(phi, Or):
        return join(*parts)
    if isinstance(phi, Imp):
        return imp(*parts)
    if isinstance(phi, Exists):
        return interpret_exists(phi, ctx, parts[0])
    return interpret_forall(phi, ctx, parts[0])


def _children(phi, ctx):
    if isinstance(phi, (And, Or, Imp)):
        return [(phi.left, ctx), (phi.right, ctx)]
    if isinstance(phi, (Exists, Forall)):
        return [(phi.body, ctx.extend(phi.var, phi.coll))]
    return []


def interpret(phi, ctx=None):
    """‖φ[Γ]‖, computed recursively from the top."""
    ctx = ctx or Context()
    check(phi, ctx)
    return _interpret(phi, ctx)


def _interpret(phi, ctx):
    return _combine(phi, ctx, [_interpret(c, cx) for c, cx in _children(phi, ctx)])


def assemble(phi, ctx=None):
    """‖φ[Γ]‖ assembled bottom-up, clause by clause, with an explicit work list."""
    ctx = ctx or Context()
    check(phi, ctx)
    order, stack = [], [(phi, ctx)]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(_children(*node))
    done = {}
    for node in reversed(order):
        f, cx = node
        parts = [done[id(c)] for c, _ in _children(f, cx)]
        done[id(f)] = _combine(f, cx, parts)
    return done[id(phi)]


def exists_literal(phi, ctx):
    """∃ along the context projection, without the last-component presentation."""
    ext = ctx.extend(phi.var, phi.coll)
    body = interpret(phi.body, ext)
    return sigma_along(_projection(ctx, ext), body)


def forall_literal(phi, ctx):
    ext = ctx.extend(phi.var, phi.coll)
    body = interpret(phi.body, ext)
    return WeakPi(_projection(ctx, ext), body).obj


def _projection(ctx, ext):
    if not ctx.entries:
        return bang(ext.obj)
    return Arrow(prog("p1"), ext.obj, ctx.obj)


# -- validity ------------------------------------------------------------------------

def _verified(code, P, points):
    fuel = config.current().fuel
    return all(_evaluate(code, [p], fuel)[0] is IN and P.decide(p, _evaluate(code, [p], fuel)[1]) is IN
               for p in points)


def _table(P, points):
    entries = {}
    for p in points:
        fib = P.fibre(p)
        if not fib:
            return None
        entries[p] = fib[0]
    if not entries:
        return prog(r"\g. 0")
    return table_code(entries, next(iter(entries.values())))


def synthesize(phi, ctx, points):
    """A code s with s(γ) realizing φ at every γ in points, or None.

    Formula-directed: pairing for ∧, a tagged injection for ∨, abstraction for
    → and ∀, an equation-supplied witness for ∃; tabulation of listed fibres is
    the fallback at every node.
    """
    points = list(dict.fromkeys(points))
    P = interpret(phi, ctx)
    s = _synth(phi, ctx, points, P)
    if s is not None and _verified(s, P, points):
        return s
    s = _table(P, points)
    return s if s is not None and _verified(s, P, points) else None


def _synth(phi, ctx, points, P):
    if isinstance(phi, Bot):
        return None
    if isinstance(phi, Eq):
        return prog(r"\g. pair (t g) 0", t=term_code(phi.left, ctx))
    if isinstance(phi, Atom):
        return None
    if isinstance(phi, And):
        left = synthesize(phi.left, ctx, points)
        right = synthesize(phi.right, ctx, points) if left is not None else None
        if left is None or right is None:
            return None
        return prog(r"\g. pair (l g) (r g)", l=left, r=right)
    if isinstance(phi, Or):
        left = synthesize(phi.left, ctx, points)
        if left is not None:
            return prog(r"\g. pair 0 (l g)", l=left)
        right = synthesize(phi.right, ctx, points)
        return None if right is None else prog(r"\g. pair 1 (r g)", r=right)
    if isinstance(phi, Imp):
        if phi.left == phi.right:
            return prog(r"\g. \w. w")
        right = synthesize(phi.right, ctx, points)
        if right is not None:
            return prog(r"\g. \w. r g", r=right)
        found = search_entailment(interpret(phi.left, ctx), interpret(phi.right, ctx))
        return None if found is None else prog(r"\g. \w. r g w", r=found.realizer)
    ext = ctx.extend(phi.var, phi.coll)
    step = prog(rf"\g a. {ctx.extension_text('g', 'a')}")
    if isinstance(phi, Forall):
        inner = [ctx.extension_point(g, a) for g in points for a in phi.coll.support]
        body = synthesize(phi.body, ext, inner)
        return None if body is None else prog(r"\g. \a. b (e g a)", b=body, e=step)
    hint = witness_term(phi.body, phi.var)
    if hint is None:
        return None
    t = term_code(hint, ctx)
    inner = [ctx.extension_point(g, _value(t, g)) for g in points]
    body = synthesize(phi.body, ext, inner)
    return None if body is None else prog(r"\g. pair (t g) (b (e g (t g)))", t=t, b=body, e=step)


def validity(phi, ctx=None, budget=64):
    """Witness of ⊤_‖Γ‖ ⊑ ‖φ[Γ]‖; raises NotFoundWithinBudget."""
    ctx = ctx or Context()
    P = interpret(phi, ctx)
    T = top(ctx.obj)
    s = synthesize(phi, ctx, ctx.obj.support)
    hints = [] if s is None else [prog(r"\g y. s g", s=s)]
    found = search_entailment(T, P, budget=budget, hints=hints)
    if found is None:
        raise NotFoundWithinBudget(f"no realizer of {show(phi)} within budget {budget}")
    return found


def is_valid(phi, ctx=None):
    try:
        validity(phi, ctx)
        return True
    except NotFoundWithinBudget:
        return False


def verify_validity(phi, ctx, realizer):
    return check_entailment(top((ctx or Context()).obj), interpret(phi, ctx), realizer)


__all__ = ["interpret", "assemble", "validity", "is_valid", "synthesize", "term_code", "term_arrow",
           "exists_literal", "forall_literal", "eq_literal", "verify_validity", "EntailmentWitness"]
