import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from segrobust import BinaryMask


def random_mask(rng: np.random.Generator, height: int, width: int, density: float | None = None) -> BinaryMask:
    if density is None:
        density = rng.uniform(0.05, 0.95)
    return BinaryMask(rng.random((height, width)) < density)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
