import sys

import pytest
from hypothesis import settings

# deep WDVV chains recurse through many Python frames
sys.setrecursionlimit(200_000)

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")


@pytest.fixture
def store():
    from gwcalc import MemoStore

    return MemoStore()
