import random

import pytest

SEED = 20240611


@pytest.fixture
def rng(request):
    # the seed is reported so a failing "generic" case can be replayed
    request.node.user_properties.append(("seed", SEED))
    return random.Random(SEED)
