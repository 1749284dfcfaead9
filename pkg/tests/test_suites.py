import json

import pytest

from peff import config
from peff.errors import UnknownSuite
from peff.suites import FAIL, PASS, replay, run_suite, suite_names


@pytest.fixture(scope="module")
def reports():
    with config.using(nat_size=8):
        return {n: run_suite(n).to_dict() for n in suite_names()}


def test_registry():
    assert set(suite_names()) >= {"pca.laws", "collections.universal", "families.adjunction",
                                  "doctrine.heyting", "universe.fixpoint", "lang.realizers",
                                  "quotient.pretopos", "quotient.omega", "quotient.kfunctor"}


@pytest.mark.parametrize("name", suite_names())
def test_suite_passes(reports, name):
    d = reports[name]
    failing = {k: v for k, v in d["checks"].items() if v["verdict"] != PASS}
    assert d["status"] == PASS, failing


@pytest.mark.parametrize("name", suite_names())
def test_report_replays(reports, name):
    assert all(replay(reports[name]).values())


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no.such")


def test_alias():
    with config.using(nat_size=8):
        assert run_suite("quotient.omega-roundtrip").to_dict()["suite"] == "quotient.omega"


def test_same_seed_same_report():
    with config.using(nat_size=8, seed=3):
        a = json.dumps(run_suite("collections.universal").to_dict(), sort_keys=True)
        b = json.dumps(run_suite("collections.universal").to_dict(), sort_keys=True)
    assert a == b


def test_timing_excluded_by_default(reports):
    d = reports["pca.laws"]
    assert "timing" not in d
    with config.using(nat_size=8):
        assert "timing" in run_suite("pca.laws").to_dict(timing=True)


@pytest.mark.parametrize("fuel", [30, 300])
@pytest.mark.parametrize("name", ["pca.laws", "collections.universal", "universe.fixpoint", "quotient.omega"])
def test_starved_fuel_never_fails(name, fuel):
    with config.using(nat_size=8, fuel=fuel):
        d = run_suite(name).to_dict()
    assert d["summary"][FAIL] == 0, {k: v for k, v in d["checks"].items() if v["verdict"] == FAIL}
