import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

EVEN_SIGNATURES = [(p, n - p) for n in (2, 4, 6, 8) for p in range(n + 1)]
RANDOM_SIGNATURES = [(1, 1), (1, 3), (2, 2), (2, 4), (3, 3)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
