import os

import pytest
from hypothesis import HealthCheck, settings

from braceforge import corpus

settings.register_profile(
    "repo",
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def small_corpus():
    return corpus.standard_corpus()


@pytest.fixture(scope="session")
def rc53():
    return corpus.radical_cyclic(5, 3)


@pytest.fixture(scope="session")
def tri53():
    return corpus.radical_triangular(5, 3)
