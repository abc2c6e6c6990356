import numpy as np
import pytest

from ffdecomp.field import field


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pk: f"GF{pk[0]**pk[1]}")
def gf(request):
    return field(*request.param)
