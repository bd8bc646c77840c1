import pytest
from hypothesis import HealthCheck, settings

# Property tests are seeded: by default derandomize fixes the example stream per
# test.  Hypothesis ignores --hypothesis-seed while derandomize is on, so an
# explicit seed switches to a profile that honours it.
COMMON = dict(max_examples=100, deadline=None,
              suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.register_profile("seeded", derandomize=True, **COMMON)
settings.register_profile("explicit-seed", derandomize=False, database=None, **COMMON)
settings.load_profile("seeded")


def pytest_configure(config):
    if config.getoption("hypothesis_seed", default=None) is not None:
        settings.load_profile("explicit-seed")


@pytest.fixture(scope="session", autouse=True)
def legendre_gate():
    """The j normalisation must reproduce the Legendre Hauptmodul before anything else runs."""
    from diagcas.elliptic import hauptmodul
    from diagcas.jsonio import parse_curve, parse_unirat

    c = parse_curve("(1+y)^2 - x*(1-x)*(x-p)", ["x", "y"], "p")
    want = parse_unirat("27/4*p^2*(1-p)^2/(p^2-p+1)^3", "p")
    if hauptmodul(c, "y") != want:
        pytest.exit("Legendre gate failed: j normalisation is wrong", returncode=3)
