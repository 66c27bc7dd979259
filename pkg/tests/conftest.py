import random

import pytest
from hypothesis import settings, strategies as st

from ditile.digraph import build

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def digraphs(draw, min_n=1, max_n=7, loops=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    ls = draw(st.lists(st.integers(0, n - 1), unique=True)) if loops else []
    return build(n, chosen, ls)


def random_digraph(n: int, p: float, seed) -> "Digraph":
    rng = random.Random(seed)
    return build(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(12345)
