"""Acceptance criteria 1-12, one PASS/FAIL line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""
import functools
import random
import sys
import time

import pytest

from peff import config
from peff.suites import PASS, replay, run_suite

LINES = {}


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    LINES[n] = line
    return line


@functools.lru_cache(maxsize=None)
def timed_suite(name):
    start = time.perf_counter()
    with config.using(nat_size=8):
        d = run_suite(name).to_dict()
    return d, time.perf_counter() - start


def not_passing(d):
    return sorted(k for k, v in d["checks"].items() if v["verdict"] != PASS)


def criterion_1():
    d, t = timed_suite("pca.laws")
    return d["status"] == PASS and t < 5, f"pca.laws {d['summary']} in {t:.2f}s (limit 5s)"


def criterion_2():
    from peff.suites import arrow_catalog, collection_catalog
    colls = collection_catalog()
    arrows = arrow_catalog(random.Random(0), colls)
    sizes_ok = len(colls) >= 5 and all(len(c.support) <= 8 for c in colls.values()) and len(arrows) >= 20
    d, t = timed_suite("collections.universal")
    ok = sizes_ok and d["status"] == PASS and t < 30
    return ok, f"{len(colls)} collections, {len(arrows)} arrows, {d['summary']} in {t:.2f}s (limit 30s)"


def criterion_3():
    from peff.collections import Arrow, is_mono
    from peff.pca import kleene_apply, prog
    from peff.suites import arrow_catalog, collection_catalog
    colls = collection_catalog()
    arrows = arrow_catalog(random.Random(0), colls, count=40)
    arrows += [Arrow(prog(r"\x. 0"), colls["2x3"], colls["N8"]), Arrow(prog(r"\x. succ x"), colls["2"], colls["N8"])]

    def injective(f):
        images = [kleene_apply(f.code, [x]).value for x in f.dom.support]
        return len(set(images)) == len(images)

    wrong = [str(f) for f in arrows if bool(is_mono(f)) != injective(f)]
    return not wrong, f"{len(arrows)} arrows, {len(wrong)} disagreements with brute-force injectivity"


def criterion_4():
    d, _ = timed_suite("families.adjunction")
    return d["status"] == PASS, f"families.adjunction {d['summary']} {not_passing(d) or ''}".strip()


def criterion_5():
    from peff.tri import IN
    from peff.universe import check_coherence, check_member, check_nonmember, check_set
    from universe_oracle import generate
    start = time.perf_counter()
    codes, o = generate(4)
    mismatches, incoherent = 0, 0
    for c in codes:
        is_set = o.is_set(c)
        if (check_set(c) is IN) != is_set:
            mismatches += 1
            continue
        ext = o.ext(c) if is_set else None
        for n in set(range(24)) | set(ext or ()):
            m = o.member(n, c)
            if (check_member(n, c) is IN) != m or (check_nonmember(n, c) is IN) != (is_set and not m):
                mismatches += 1
        if is_set and check_coherence(c) is not IN:
            incoherent += 1
    t = time.perf_counter() - start
    ok = mismatches == 0 and incoherent == 0 and t < 60
    return ok, f"{len(codes)} codes, {mismatches} mismatches, {incoherent} incoherent, {t:.1f}s (limit 60s)"


def tau_instances():
    from peff.collections import finite, nat
    from peff.families import FamilyMap
    from peff.pca import prog
    from peff.universe import N0, N1, TauFamily, plus_code, sigma_code, const_fn
    two = plus_code(N1, N1)
    out = []
    for A in (finite([0, 1]), finite([0, 1, 2]), nat(4)):
        B = TauFamily(A, prog(r"\x. t", t=two))
        C = TauFamily(A, prog(r"\x. ite (eq0 x 1) (\u. n1) (\u. t) 0", n1=N1, t=two))
        out.append((A, B, C, FamilyMap(prog(r"\x y. y"), B, B), FamilyMap(prog(r"\x y. 0"), B, B)))
    A = finite([0, 1, 2])
    D = TauFamily(A, prog(r"\x. s", s=sigma_code(two, const_fn(N1))))
    E = TauFamily(A, prog(r"\x. ite (eq0 x 0) (\u. n0) (\u. n1) 0", n0=N0, n1=N1))
    out.append((A, D, E, FamilyMap(prog(r"\x y. y"), D, D), FamilyMap(prog(r"\x y. y"), D, D)))
    out.append((A, E, D, FamilyMap(prog(r"\x y. y"), D, D), FamilyMap(prog(r"\x y. pair 1 0"), D, D)))
    return out


def criterion_6():
    from peff.universe import iso_roundtrips, set_structure
    bad = {}
    instances = tau_instances()
    for i, (A, B, C, j, k) in enumerate(instances):
        S = set_structure(A)
        built = {"terminal": S.terminal(), "initial": S.initial(), "product": S.product(B, C),
                 "equalizer": S.equalizer(j, k), "coproduct": S.coproduct(B, C), "list": S.list(B),
                 "exponential": S.exponential(B, C)}
        for name, iso in built.items():
            failed = sorted(k for k, v in iso_roundtrips(*iso).items() if not v)
            if failed:
                bad.setdefault(name, []).append(f"#{i}:{','.join(failed)}")
    detail = f"{len(instances)} instances x 7 constructions"
    if bad:
        detail += "; not roundtripping: " + "; ".join(f"{k} {v}" for k, v in sorted(bad.items()))
    return not bad, detail


def criterion_7():
    from peff.collections import nat
    from peff.lang import Context, ac_realizer, arithmetic_signature, choice_extract, ct_realizer, relation
    from peff.pca import prog
    sig = arithmetic_signature()
    cases = {
        "succ": ("Eq(N, y, succ(x))", prog(r"\g u. \x. pair (succ x) (pair (succ x) 0)")),
        "id": ("Eq(N, y, x)", prog(r"\g u. \x. pair x (pair x 0)")),
        "pred": ("Eq(N, x, succ(y)) || Eq(N, x, 0)",
                 prog(r"\g u. \x. pair (pred x) (ite x (\v. pair 1 (pair x 0)) (\v. pair 0 (pair x 0)) 0)")),
    }
    results = {}
    with config.using(nat_size=8):
        N = nat()
        for key, (text, w) in cases.items():
            R = relation(text, N, N, signature=sig)
            f = choice_extract(Context(), N, N, R, w)
            results[key] = bool(ct_realizer(R, N).check()) and bool(ac_realizer(R, N, N).check()) and bool(f.check())
            if key == "succ":
                results["f(3)=4"] = f(3) == 4
    d, _ = timed_suite("lang.realizers")
    ok = all(results.values()) and d["status"] == PASS
    return ok, f"{results}, lang.realizers {d['summary']}"


def criterion_8():
    from peff.suites import qobject_catalog
    from peff.collections import nat
    objs = qobject_catalog(nat(8))
    d, _ = timed_suite("quotient.pretopos")
    audits = replay(d)
    ok = len(objs) >= 4 and "N/2" in objs and d["status"] == PASS and all(audits.values())
    return ok, f"{len(objs)} objects, quotient.pretopos {d['summary']}, {len(audits)} audits replayed"


def criterion_9():
    from peff.suites import small_prop_catalog
    from peff.collections import nat
    _, props = small_prop_catalog(nat(8))
    d, _ = timed_suite("quotient.omega")
    ok = len(props) >= 5 and d["status"] == PASS and all(replay(d).values())
    return ok, f"{len(props)} small props, quotient.omega {d['summary']}"


def criterion_10():
    from peff.collections import nat
    from peff.pca import prog
    from peff.quotient.families import delta_s
    from peff.suites import family_catalog
    from peff.universe import N1, TauFamily
    with config.using(nat_size=8):
        N = nat()
        _, fams, _ = family_catalog(N)
        fams = dict(fams, single=delta_s(TauFamily(N, prog(r"\x. n", n=N1), name="single")))
        validated = sorted(k for k, F in fams.items() if F.validate() is not None)
    d, _ = timed_suite("quotient.kfunctor")
    rejected = d["checks"].get("invalid-action-law-2", {}).get("verdict") == PASS
    ok = d["status"] == PASS and rejected and len(validated) >= 3
    return ok, (f"validated families {validated}, quotient.kfunctor {d['summary']}, "
                f"invalid action rejected naming law 2: {rejected}")


def criterion_11():
    d, _ = timed_suite("quotient.pretopos")
    entry = d["checks"]["unique-choice"]
    audited = sorted(entry.get("witnesses", {}))
    replayed = {k: v for k, v in replay({"checks": {"unique-choice": entry}}).items()}
    ok = entry["verdict"] == PASS and len(audited) >= 3 and "parity" in audited and all(replayed.values())
    return ok, f"instances {audited} (parity is over N/2), verdict {entry['verdict']}, replayed {len(replayed)}"


def criterion_12():
    from click.testing import CliRunner
    from peff.cli import main
    outs = [CliRunner().invoke(main, ["--seed", "0", "verify", "all"]) for _ in range(2)]
    same = outs[0].stdout_bytes == outs[1].stdout_bytes
    codes = [r.exit_code for r in outs]
    return same and codes == [0, 0], f"byte-identical: {same}, exit codes {codes}, {len(outs[0].stdout_bytes)} bytes"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 13)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    line = record(n, ok, detail)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for n, fn in sorted(CRITERIA.items()):
        ok, detail = fn()
        print(record(n, ok, detail), flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
