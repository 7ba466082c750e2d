"""Vertex ranking by impact factor: the entries of the best p-optimal weighting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph
from .solver import SolverConfig, solve_multistart


@dataclass(frozen=True)
class RankingReport:
    """Vertices sorted by impact factor (nonincreasing, ties by ascending id)."""

    entries: tuple[tuple[int, float], ...]  # (1-based vertex id, impact factor)
    p: float
    lam: float
    runs: int


def ranked_order(impact: np.ndarray) -> np.ndarray:
    """0-based indices sorted by descending impact, ties by ascending index."""
    return np.lexsort((np.arange(len(impact)), -np.asarray(impact)))


def rank_vertices(
    g: Hypergraph,
    cfg: SolverConfig,
    top_k: int | None = None,
    threads: int = 1,
) -> RankingReport:
    """Rank vertices by the weighting of the best multistart run.

    Small p concentrates the weighting on the strongest group of vertices;
    large p spreads it and scores vertices individually.
    """
    if top_k is not None and not 1 <= top_k <= g.n:
        raise ValueError(f"top_k must be in [1, {g.n}], got {top_k}")
    res = solve_multistart(g, cfg, threads=threads)
    impact = res.best.weighting
    order = ranked_order(impact)
    if top_k is not None:
        order = order[:top_k]
    entries = tuple((int(i) + 1, float(impact[i])) for i in order)
    return RankingReport(entries=entries, p=cfg.p, lam=res.best.lam, runs=cfg.runs)
