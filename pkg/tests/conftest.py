import json
from importlib import resources

import numpy as np
import pytest
from hypothesis import settings

from statepart import StateSpaceModel
from statepart._simplex import warm_up

settings.register_profile("package", deadline=None, max_examples=60)
settings.load_profile("package")


@pytest.fixture(scope="session", autouse=True)
def _compile_kernels():
    # Pay any JIT compilation cost once, before timed tests run.
    warm_up()


def _load(name: str) -> StateSpaceModel:
    with resources.files("statepart.data").joinpath(name).open() as fh:
        doc = json.load(fh)
    return StateSpaceModel(
        A=np.array(doc["A"], float), B=np.array(doc["B"], float), name=doc["name"]
    )


@pytest.fixture(scope="session")
def f100_model() -> StateSpaceModel:
    return _load("f100.json")


@pytest.fixture(scope="session")
def ex2_model() -> StateSpaceModel:
    return _load("ex2.json")
