import pytest

from app.core.groups import build_group, parse_subgroup_spec


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: builds field windows with thousands of monomials")


@pytest.fixture(scope="session")
def s3():
    return build_group("S3")


@pytest.fixture(scope="session")
def a3(s3):
    return parse_subgroup_spec(s3, "(123)")


@pytest.fixture(scope="session")
def s3_all(s3):
    return parse_subgroup_spec(s3, "all")


@pytest.fixture(scope="session")
def z4():
    return build_group("Z4")


@pytest.fixture(scope="session")
def z4_half(z4):
    return parse_subgroup_spec(z4, "2")


@pytest.fixture(scope="session")
def z2():
    return build_group("Z2")


@pytest.fixture(scope="session")
def z2_all(z2):
    return parse_subgroup_spec(z2, "all")


@pytest.fixture(scope="session")
def q8():
    return build_group("Q8")


@pytest.fixture
def config_dir(tmp_path, monkeypatch):
    """Point the per-user config directory at a temporary folder."""
    path = tmp_path / "config"
    monkeypatch.setenv("QDV_CONFIG_DIR", str(path))
    monkeypatch.delenv("QDV_MAX_BASIS", raising=False)
    return path
