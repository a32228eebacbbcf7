import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from quasimap import cache


@pytest.fixture(autouse=True)
def fresh_cache(monkeypatch):
    """Keep test runs independent of any ambient on-disk cache."""
    monkeypatch.delenv("QUASIMAP_CACHE_DIR", raising=False)
    cache.clear_memory()
    yield
    cache.clear_memory()


def extended_runs():
    """True when the long (hour-plus) computations are requested."""
    return bool(os.environ.get("QUASIMAP_EXTENDED"))
