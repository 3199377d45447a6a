from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from qgje.linalg import AugmentedSystem


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def rationals(bound=6):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, 4))


@st.composite
def systems(draw, max_rows=6, max_cols=6, bound=6):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    # sparse-ish entries so rank deficiency and zero pivots show up often
    entry = st.one_of(st.just(Fraction(0)), rationals(bound))
    rows = draw(st.lists(st.lists(entry, min_size=n + 1, max_size=n + 1), min_size=m, max_size=m))
    return AugmentedSystem.from_rows(rows)
