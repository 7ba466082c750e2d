"""Uniform weighted hypergraph data model, validation, incidence index and file I/O.

Vertices are numbered 1..n everywhere in the public API and in the edge-list
file format; the cached numpy arrays used by the numeric kernels are 0-based.
Edges are multisets: a vertex may appear several times inside one edge.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np


class ParseError(ValueError):
    """Raised when an edge-list file cannot be parsed."""


@dataclass(frozen=True)
class Edge:
    """One hyperedge: r vertex ids (1-based, sorted, repeats allowed) and a weight."""

    vertices: tuple[int, ...]
    weight: float = 1.0


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform weighted (multi-)hypergraph on vertices 1..n.

    Instances built through :meth:`from_edges` or :func:`parse_edge_list` are
    canonical: edge slots sorted nondecreasing, duplicate edges merged by
    summing weights, edge list in lexicographic order.  The raw constructor
    performs no checks so that :func:`validate` can report violations.
    """

    n: int
    r: int
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(
        cls,
        n: int,
        r: int,
        edges: Iterable[tuple[Iterable[int], float]] | Iterable[Edge],
    ) -> "Hypergraph":
        """Build a canonical hypergraph, merging duplicate edges by weight sum."""
        merged: dict[tuple[int, ...], float] = {}
        for item in edges:
            if isinstance(item, Edge):
                verts, w = item.vertices, item.weight
            else:
                verts, w = item
            key = tuple(sorted(int(v) for v in verts))
            merged[key] = merged.get(key, 0.0) + float(w)
        canon = tuple(Edge(v, w) for v, w in sorted(merged.items()))
        g = cls(n=int(n), r=int(r), edges=canon)
        problems = validate(g)
        if problems:
            raise ValueError("invalid hypergraph: " + "; ".join(problems))
        return g

    @property
    def m(self) -> int:
        """Number of (merged) edges."""
        return len(self.edges)

    @cached_property
    def vertex_array(self) -> np.ndarray:
        """(m, r) int64 array of 0-based vertex slots, one row per edge."""
        if not self.edges:
            return np.empty((0, self.r), dtype=np.int64)
        return np.asarray([e.vertices for e in self.edges], dtype=np.int64) - 1

    @cached_property
    def weight_array(self) -> np.ndarray:
        """(m,) float64 array of edge weights, same order as ``edges``."""
        return np.asarray([e.weight for e in self.edges], dtype=np.float64)


@dataclass(frozen=True)
class IncidenceIndex:
    """Per-vertex list of (edge position, multiplicity of the vertex in that edge).

    ``entries[i - 1]`` holds the incidences of vertex i.  The total multiplicity
    over all vertices equals r * m.
    """

    entries: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(mult for per_vertex in self.entries for _, mult in per_vertex)

    def incident(self, vertex: int) -> tuple[tuple[int, int], ...]:
        """Incidences of a 1-based vertex id."""
        return self.entries[vertex - 1]


def validate(g: Hypergraph) -> list[str]:
    """Check every hypergraph invariant; return one message per violation.

    An empty list means the instance is a valid canonical hypergraph.
    """
    problems: list[str] = []
    if g.n < 1:
        problems.append(f"vertex count must be positive, got {g.n}")
    if g.r < 2:
        problems.append(f"edge cardinality must be at least 2, got {g.r}")
    seen: set[tuple[int, ...]] = set()
    for pos, e in enumerate(g.edges):
        if len(e.vertices) != g.r:
            problems.append(f"edge {pos}: has {len(e.vertices)} slots, expected {g.r}")
        if any(v < 1 or v > g.n for v in e.vertices):
            problems.append(f"edge {pos}: vertex out of range [1, {g.n}]")
        if any(a > b for a, b in zip(e.vertices, e.vertices[1:])):
            problems.append(f"edge {pos}: vertex slots not in nondecreasing order")
        if not (e.weight > 0.0) or not np.isfinite(e.weight):
            problems.append(f"edge {pos}: nonpositive weight {e.weight}")
        if e.vertices in seen:
            problems.append(f"edge {pos}: duplicate of an earlier edge")
        seen.add(e.vertices)
    return problems


def degree(g: Hypergraph, vertex: int) -> float:
    """Sum of weights of edges containing ``vertex`` (once per edge, even for repeats)."""
    if not 1 <= vertex <= g.n:
        raise ValueError(f"vertex {vertex} out of range [1, {g.n}]")
    return float(sum(e.weight for e in g.edges if vertex in e.vertices))


def build_incidence(g: Hypergraph) -> IncidenceIndex:
    """Index edges by vertex, recording the multiplicity of each vertex per edge."""
    per_vertex: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for pos, e in enumerate(g.edges):
        counts: dict[int, int] = {}
        for v in e.vertices:
            counts[v] = counts.get(v, 0) + 1
        for v, mult in counts.items():
            per_vertex[v - 1].append((pos, mult))
    return IncidenceIndex(entries=tuple(tuple(lst) for lst in per_vertex))


def parse_edge_list(source: str | TextIO) -> Hypergraph:
    """Parse the edge-list text format into a canonical hypergraph.

    Format: '#' comment lines anywhere, first non-comment line "r n", then one
    edge per line as r whitespace-separated 1-based vertex ids followed by an
    optional positive weight (default 1.0).  Duplicate edges are merged by
    summing their weights.
    """
    if isinstance(source, str):
        source = io.StringIO(source)

    r = n = None
    raw_edges: list[tuple[tuple[int, ...], float]] = []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if r is None:
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: header must be 'r n', got {stripped!r}")
            try:
                r, n = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(f"line {lineno}: header must be two integers") from None
            if r < 2 or n < 1:
                raise ParseError(f"line {lineno}: need r >= 2 and n >= 1, got r={r} n={n}")
            continue
        if len(tokens) not in (r, r + 1):
            raise ParseError(
                f"line {lineno}: expected {r} vertex ids and an optional weight, "
                f"got {len(tokens)} tokens"
            )
        try:
            verts = tuple(int(t) for t in tokens[:r])
        except ValueError:
            raise ParseError(f"line {lineno}: vertex ids must be integers") from None
        if any(v < 1 or v > n for v in verts):
            raise ParseError(f"line {lineno}: vertex id out of range [1, {n}]")
        weight = 1.0
        if len(tokens) == r + 1:
            try:
                weight = float(tokens[r])
            except ValueError:
                raise ParseError(f"line {lineno}: weight must be a number") from None
        if not weight > 0.0 or not np.isfinite(weight):
            raise ParseError(f"line {lineno}: nonpositive weight {tokens[r]}")
        raw_edges.append((verts, weight))

    if r is None:
        raise ParseError("empty input: missing 'r n' header line")
    return Hypergraph.from_edges(n=n, r=r, edges=raw_edges)


def serialize_edge_list(g: Hypergraph) -> str:
    """Emit the edge-list format with explicit weights; inverse of parse_edge_list."""
    lines = [f"{g.r} {g.n}"]
    for e in g.edges:
        lines.append(" ".join(str(v) for v in e.vertices) + f" {e.weight!r}")
    return "\n".join(lines) + "\n"
