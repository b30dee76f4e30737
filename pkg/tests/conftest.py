import pytest
from hypothesis import settings

from truth_belief import make_distribution

# numpy kernels are slow on first call; timing is not under test
settings.register_profile("truth-belief", deadline=None)
settings.load_profile("truth-belief")


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run full-size verification sweeps"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="full-size sweep, use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def fair_coin():
    return make_distribution(["s0", "s1"], [0.5, 0.5])


@pytest.fixture
def skewed_coin():
    return make_distribution(["s0", "s1"], [0.3, 0.7])


@pytest.fixture
def belief_coin():
    return make_distribution(["s0", "s1"], [0.25, 0.75])
