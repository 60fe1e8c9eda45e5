from pathlib import Path

import pytest

from dqhopf.examples import MUTANTS, gauged_h4, main_instances
from dqhopf.scalars import FieldSpec

FIXTURES = Path(__file__).parent / "fixtures"

MAIN = ("kz2", "kz3", "kw2", "kw3", "h4")
# plus an instance whose φ has no symmetry to hide leg-order mistakes behind
EXTENDED = MAIN + ("h4-gauge",)


@pytest.fixture(scope="session")
def instances():
    found = main_instances()
    found["h4-gauge"] = gauged_h4(FieldSpec.rationals())
    return found


@pytest.fixture(scope="session")
def mutants():
    return {name: build() for name, build in MUTANTS.items()}


def fixture_path(name):
    return FIXTURES / name
