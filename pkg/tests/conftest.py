import pytest
from hypothesis import HealthCheck
from hypothesis import settings as hypothesis_settings

from nomsupport.atoms import Atom
from nomsupport.config import reset_settings
from nomsupport.services.counterexamples import CounterexampleBuilder
from nomsupport.services.oracle_registry import OracleRegistry, build_default_registry
from nomsupport.services.support_calculus import SupportCalculus

# shared fixtures hold no per-example state
hypothesis_settings.register_profile(
    "nomsupport",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
hypothesis_settings.load_profile("nomsupport")


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Every test starts from default settings"""
    for name in (
        "NOMSUPPORT_DEFAULT_BUDGET",
        "NOMSUPPORT_LOG_LEVEL",
        "NOMSUPPORT_MAX_UNIVERSE",
        "NOMSUPPORT_SUITE_SEED",
    ):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def calculus() -> SupportCalculus:
    return SupportCalculus(max_universe=7)


@pytest.fixture
def registry() -> OracleRegistry:
    return build_default_registry()


@pytest.fixture
def builder(calculus, registry) -> CounterexampleBuilder:
    return CounterexampleBuilder(calculus=calculus, registry=registry)


@pytest.fixture
def a0() -> Atom:
    return Atom(0)


@pytest.fixture
def a1() -> Atom:
    return Atom(1)


@pytest.fixture
def a2() -> Atom:
    return Atom(2)
