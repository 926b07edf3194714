from itertools import combinations

from hypothesis import strategies as st

from wellcover.graph import Graph


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    code = draw(st.integers(0, (1 << len(pairs)) - 1))
    return Graph.from_edges(n, [p for i, p in enumerate(pairs) if code >> i & 1])


@st.composite
def graphs_with_subset(draw, max_n=7):
    g = draw(graphs(max_n=max_n))
    return g, draw(st.integers(0, g.full))
