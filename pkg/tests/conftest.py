import pytest
from hypothesis import HealthCheck, settings, strategies as st

from satgame.setfam import Params, SetFamily, legal_moves

# derandomized so that repeated test runs are identical
settings.register_profile(
    "repo", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@st.composite
def intersecting_families(draw, max_n=8, max_k=3, max_len=8, min_n=None):
    """A random intersecting family built by legal moves from the empty board."""
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(min_n or k, max(max_n, k)))
    fam = SetFamily(Params(n, k))
    for _ in range(draw(st.integers(0, max_len))):
        options = list(legal_moves(fam))
        if not options:
            break
        fam = fam.add(draw(st.sampled_from(options)))
    return fam


@pytest.fixture
def p42():
    return Params(4, 2)
