import random

import pytest
from hypothesis import settings

from qmod.enriched import QCategory
from qmod.quantale import builtin_quantale

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")

QUANTALE_NAMES = ("bool", "chain:3", "minplus:6", "diamond")


def rng_for(label: str, case: int = 0) -> random.Random:
    return random.Random(f"test:{label}:{case}")


def arrow(q_name: str = "bool") -> QCategory:
    """Two objects a -> b: hom(a,b) = top, hom(b,a) = bottom."""
    q = builtin_quantale(q_name)
    top, unit = q.elements[q.top], q.unit_id
    return QCategory.from_ids(q, ["a", "b"], {"a": {"a": unit, "b": top}, "b": {"b": unit}})


@pytest.fixture
def B():
    return builtin_quantale("bool")


# lines reported by test_acceptance.py, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
