"""Shared hypothesis strategies."""

import numpy as np
from hypothesis import strategies as st

from ismtopsis.core import TFN
from ismtopsis.ism import MarkedBinaryMatrix

# zero or comfortably above underflow, so squared differences stay representable
component = st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=50.0, allow_nan=False, allow_infinity=False))
positive = st.floats(min_value=0.05, max_value=50.0, allow_nan=False, allow_infinity=False, allow_subnormal=False)


@st.composite
def tfns(draw, elements=component):
    a, b, c = sorted(draw(st.lists(elements, min_size=3, max_size=3)))
    return TFN(a, b, c)


@st.composite
def binary_matrices(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    values = np.array(bits, dtype=bool).reshape(n, n)
    np.fill_diagonal(values, True)
    return MarkedBinaryMatrix(tuple(f"C{i + 1}" for i in range(n)), values)


@st.composite
def fuzzy_tables(draw, min_alts=2, max_alts=6, min_crit=1, max_crit=5, elements=positive):
    m = draw(st.integers(min_alts, max_alts))
    n = draw(st.integers(min_crit, max_crit))
    cells = [[draw(tfns(elements)) for _ in range(n)] for _ in range(m)]
    weights = [draw(tfns(elements)) for _ in range(n)]
    return cells, weights
