import random

import pytest

from nomsupport.models import ExitStatus, worst_status
from nomsupport.nomset import ambient_support
from nomsupport.services.suites import SuiteRunner, random_perm, random_value

from .strategies import atom_pool


@pytest.fixture
def runner(builder) -> SuiteRunner:
    return SuiteRunner(seed=11, builder=builder)


@pytest.mark.parametrize(
    "name, cases",
    [
        ("decomposition", 500 + 120),
        ("nocc", 202 + 3),
        ("lset", 202 + 3),
        ("nointer", 3),
        ("roundtrip", 200),
    ],
)
def test_suites_pass(runner, name, cases):
    (result,) = runner.run(name)
    assert result.cases == cases
    assert result.failures == 0, result.first_failure
    assert result.exit_status is ExitStatus.OK


def test_unknown_suite(runner):
    with pytest.raises(ValueError):
        runner.run("everything")


def test_seeded_generation_is_reproducible():
    pool = atom_pool(5)
    first = [random_value(random.Random(3), pool) for _ in range(5)]
    second = [random_value(random.Random(3), pool) for _ in range(5)]
    assert first == second
    assert random_perm(random.Random(4), pool) == random_perm(random.Random(4), pool)
    assert all(ambient_support(v) <= set(pool) for v in first)


def test_worst_status():
    assert worst_status([]) is ExitStatus.OK
    assert worst_status([ExitStatus.OK, ExitStatus.REFUTED]) is ExitStatus.REFUTED
    assert worst_status([ExitStatus.REFUTED, ExitStatus.UNDECIDED]) is ExitStatus.UNDECIDED
