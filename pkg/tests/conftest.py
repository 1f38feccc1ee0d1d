import numpy as np
import pytest

import holdscan as hs

GOLDEN_RAW = [[30.0, 10.0], [5.0, 25.0], [15.0, 15.0]]


@pytest.fixture
def golden() -> hs.OwnershipMatrix:
    """3x2 worked holdings book used across the suite."""
    return hs.normalize(GOLDEN_RAW, ["inv1", "inv2", "inv3"], ["stk1", "stk2"])


def random_active(rng: np.random.Generator, n: int, m: int) -> hs.OwnershipMatrix:
    """Strictly positive random share matrix (every row/column active)."""
    return hs.normalize(rng.random((n, m)) + 1e-3)


def philox(seed: int) -> np.random.Generator:
    """Counter-based stream for reproducible, splittable Monte Carlo."""
    return np.random.Generator(np.random.Philox(key=seed))
