import numpy as np

from hyperspec import Hypergraph


def make_random_graph(rng: np.random.Generator, n: int, r: int, m: int) -> Hypergraph:
    """Random r-graph with distinct-vertex edges and weights in [0.5, 2)."""
    edges = []
    for _ in range(m):
        verts = tuple(sorted(rng.choice(np.arange(1, n + 1), size=r, replace=False)))
        edges.append((verts, float(rng.uniform(0.5, 2.0))))
    return Hypergraph.from_edges(n=n, r=r, edges=edges)


def random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal(n)
    return x / np.linalg.norm(x)
