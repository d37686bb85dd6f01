import pytest

from services.corpus import example_graphs
from services.settings import Settings, configure
from utils.cache_helper import clear_all_caches


@pytest.fixture(autouse=True)
def default_settings(monkeypatch):
    for name in ("BIZON_THREADS", "BIZON_SEED", "BIZON_CONFIG"):
        monkeypatch.delenv(name, raising=False)
    configure(Settings())
    clear_all_caches()
    yield
    configure(Settings())


@pytest.fixture
def examples():
    return example_graphs()
