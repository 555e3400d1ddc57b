import os
import random

import pytest

DEFAULT_SEED = 20260816


def seed() -> int:
    return int(os.environ.get("FAIRCHECK_SEED", str(DEFAULT_SEED)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(seed())
