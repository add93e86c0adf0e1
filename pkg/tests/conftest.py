from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from plectic import CONFIGS
from plectic.groups import CyclicFactor, PlecticGroup, SchottkyFactor
from plectic.integration import PlecticCycle
from plectic.projective import PGL2Elem, ProjPoint

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

P = 5


def config_path(name: str) -> Path:
    return Path(str(CONFIGS / name))


def load_group(name: str) -> PlecticGroup:
    return PlecticGroup.load(config_path(name))


def pt(z) -> ProjPoint:
    return ProjPoint.of(P, Fraction(z))


def cycle(*pairs) -> PlecticCycle:
    return PlecticCycle.elementary(P, [(pt(x), pt(y)) for x, y in pairs])


@pytest.fixture(scope="session")
def tate():
    return load_group("tate.json")


@pytest.fixture(scope="session")
def rank2():
    return load_group("rank2.json")


@pytest.fixture(scope="session")
def cyclic_cyclic():
    return load_group("cyclic_cyclic.json")


@pytest.fixture(scope="session")
def cyclic_rank2():
    return load_group("cyclic_rank2.json")


@pytest.fixture(scope="session")
def rank2_factor(rank2) -> SchottkyFactor:
    return rank2.factors[0]


@pytest.fixture(scope="session")
def cyclic_factor() -> CyclicFactor:
    return CyclicFactor.from_generator(P, PGL2Elem.diag(5, 1))


@pytest.fixture(scope="session")
def rank2_lattice(rank2):
    from plectic.jacobian import period_lattice

    return period_lattice(rank2)
