import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sylab.matroid import BinaryMatroid
from sylab.multigraph import Multigraph

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def binary_matroids(draw, max_d=4, max_n=7, min_n=1):
    d = draw(st.integers(1, max_d))
    n = draw(st.integers(min_n, max_n))
    cols = draw(st.lists(st.integers(0, (1 << d) - 1), min_size=n, max_size=n))
    return BinaryMatroid(d, tuple(cols))


@st.composite
def subsets(draw, n):
    return draw(st.integers(0, (1 << n) - 1))


@st.composite
def multigraphs(draw, max_v=5, max_e=8, loops=False):
    v = draw(st.integers(1, max_v))
    m = draw(st.integers(0, max_e))
    pairs = []
    for _ in range(m):
        u = draw(st.integers(0, v - 1))
        w = draw(st.integers(0, v - 1))
        if u == w and not loops:
            continue
        pairs.append((u, w))
    return Multigraph.from_pairs(v, pairs)
