from hypothesis import strategies as st

from services.multigraph import MultiGraph


@st.composite
def multigraphs(draw, min_n=1, max_n=5, max_edges=7, loops=True):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    if n == 0:
        return MultiGraph(0, ())
    vertex = st.integers(min_value=0, max_value=n - 1)
    edge = st.tuples(vertex, vertex)
    if not loops:
        edge = edge.filter(lambda e: e[0] != e[1])
        if n == 1:
            return MultiGraph(1, ())
    edges = draw(st.lists(edge, max_size=max_edges))
    return MultiGraph(n, tuple(edges))
