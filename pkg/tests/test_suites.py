import pytest

from qmod.suites import SUITES, Suite, run_many, run_suite, select


def test_registry_names_are_unique_and_anchored():
    assert len(SUITES) == len({s.name for s in SUITES.values()})
    assert all(s.anchor for s in SUITES.values())


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_briefly(name):
    r = run_suite(SUITES[name], seed=1, cases=6, max_objects=3)
    assert r.ok, r.counterexample


def test_report_is_reproducible():
    s = SUITES["compose-assoc[chain:3]"]
    a, b = run_suite(s, seed=4, cases=10), run_suite(s, seed=4, cases=10)
    assert (a.cases, a.passed, a.counterexample) == (b.cases, b.passed, b.counterexample)


def test_failing_case_reports_counterexample():
    from qmod.errors import fail

    def broken(rng, param, size, ctx):
        return fail("always broken", (param,), "detail")

    r = run_suite(Suite("broken", "a law that never holds", "test", broken, "x"), seed=0, cases=5)
    assert not r.ok
    assert r.counterexample["law"] == "always broken" and r.counterexample["case"] == 0
    assert "FAIL" in r.line()


def test_select_by_prefix_and_family():
    picked = select(["star-"])
    assert {s.name for s in picked} == {"star-warshall[bool]", "star-floyd[minplus:6]"}
    assert all(s.family == "set" for s in select(family="set"))
    assert run_many(select(["quantale-laws[bool]"]), cases=1)[0].ok
