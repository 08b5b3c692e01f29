import pytest


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    """Shared on-disk cache so expensive moments are computed once per run."""
    return str(tmp_path_factory.mktemp("moment-cache"))
