import pytest

from backend.core.cache import cache_manager


@pytest.fixture(autouse=True, scope="session")
def isolated_cache(tmp_path_factory):
    """Keep the branching cache out of the home directory during tests"""
    cache_manager.configure(cache_dir=str(tmp_path_factory.mktemp("cache")), enabled=True)
    yield cache_manager
    cache_manager.flush()
