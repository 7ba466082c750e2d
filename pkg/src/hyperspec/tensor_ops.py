"""Matrix-free evaluation of the weight polynomial, adjacency-tensor products,
the spherically constrained objective and its gradient.

All operations are pure functions of (hypergraph, vector, p) and cost
O(sum of edge sizes) arithmetic: per edge, the partial products of the other
slot entries are formed with prefix/suffix cumulative products, so no division
by possibly-zero entries ever occurs and no order-r tensor is materialized.
Accumulation order is fixed (edge order, then numpy's pairwise summation), so
repeated evaluations are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph


@dataclass(frozen=True)
class ObjectiveValue:
    """Objective f(x) = r! * w(G, x) / ||x||_p^r together with its two factors."""

    f: float
    w: float
    pnorm: float


@dataclass(frozen=True)
class GradientValue:
    """Gradient of f at x plus the tensor products it is assembled from.

    ``axr`` is the scalar adjacency-tensor form A x^r and ``axr1`` the vector
    A x^{r-1}; they satisfy x . axr1 == axr exactly as computed.
    """

    g: np.ndarray
    axr: float
    axr1: np.ndarray


def _check_vector(g: Hypergraph, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({g.n},)")
    return x


def _edge_products(g: Hypergraph, x: np.ndarray) -> tuple[float, np.ndarray]:
    """Return (w, dw): the weight polynomial and its gradient dw_i = dw/dx_i.

    For an edge with repeated vertices the slot-wise sum automatically yields
    the multiplicity factor of the partial derivative.
    """
    m, r = g.m, g.r
    if m == 0:
        return 0.0, np.zeros(g.n)
    slots = g.vertex_array                     # (m, r), 0-based
    weights = g.weight_array                   # (m,)
    entries = x[slots]                         # (m, r)

    prefix = np.ones((m, r + 1))
    np.cumprod(entries, axis=1, out=prefix[:, 1:])
    suffix = np.ones((m, r + 1))
    suffix[:, :-1] = np.cumprod(entries[:, ::-1], axis=1)[:, ::-1]

    w = float(weights @ prefix[:, r])
    partials = weights[:, None] * prefix[:, :r] * suffix[:, 1:]
    dw = np.bincount(slots.ravel(), weights=partials.ravel(), minlength=g.n)
    return w, dw


def weight_poly(g: Hypergraph, x: np.ndarray) -> float:
    """Weight polynomial w(G, x) = sum_e s(e) * prod of the r slot entries."""
    x = _check_vector(g, x)
    w, _ = _edge_products(g, x)
    return w


def tensor_apply(g: Hypergraph, x: np.ndarray) -> tuple[float, np.ndarray]:
    """Adjacency-tensor products (A x^r, A x^{r-1}) without forming the tensor.

    ``axr1[i]`` is the partial derivative of the weight polynomial at x_i
    (multiplicity factors included for multiset edges) and ``axr`` is defined
    as x . axr1, which keeps the scalar/vector identity exact and equals
    r * w(G, x) up to round-off.
    """
    x = _check_vector(g, x)
    _, axr1 = _edge_products(g, x)
    axr = float(x @ axr1)
    return axr, axr1


def signed_power(x: np.ndarray, q: float) -> np.ndarray:
    """Componentwise |x_i|^q * sgn(x_i)."""
    if q <= 0:
        raise ValueError(f"exponent must be positive, got {q}")
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.abs(x) ** q


def objective(g: Hypergraph, x: np.ndarray, p: float) -> ObjectiveValue:
    """Evaluate f(x) = r! * w(G, x) / ||x||_p^r; zero-order homogeneous in x."""
    x = _check_vector(g, x)
    pnorm_p = float(np.sum(np.abs(x) ** p))
    if pnorm_p == 0.0:
        raise ValueError("objective is undefined at the zero vector")
    pnorm = pnorm_p ** (1.0 / p)
    w, _ = _edge_products(g, x)
    f = math.factorial(g.r) * w / pnorm**g.r
    return ObjectiveValue(f=f, w=w, pnorm=pnorm)


def objective_grad(g: Hypergraph, x: np.ndarray, p: float) -> GradientValue:
    """Gradient of the objective,
    (r! / ||x||_p^r) * (A x^{r-1} - A x^r * ||x||_p^{-p} * x^<p-1>).

    The signed power x^<p-1> is evaluated exactly as written for every p > 1;
    it is continuous (though not Lipschitz for p < 2) at zero components.
    """
    x = _check_vector(g, x)
    pnorm_p = float(np.sum(np.abs(x) ** p))
    if pnorm_p == 0.0:
        raise ValueError("gradient is undefined at the zero vector")
    pnorm = pnorm_p ** (1.0 / p)
    _, axr1 = _edge_products(g, x)
    axr = float(x @ axr1)
    scale = math.factorial(g.r) / pnorm**g.r
    grad = scale * (axr1 - (axr / pnorm_p) * signed_power(x, p - 1.0))
    return GradientValue(g=grad, axr=axr, axr1=axr1)


def value_and_grad(g: Hypergraph, x: np.ndarray, p: float) -> tuple[float, np.ndarray]:
    """Objective value and gradient in one kernel pass (the solver's hot loop)."""
    x = _check_vector(g, x)
    pnorm_p = float(np.sum(np.abs(x) ** p))
    if pnorm_p == 0.0:
        raise ValueError("objective is undefined at the zero vector")
    pnorm = pnorm_p ** (1.0 / p)
    w, axr1 = _edge_products(g, x)
    axr = float(x @ axr1)
    rfact = math.factorial(g.r)
    f = rfact * w / pnorm**g.r
    grad = (rfact / pnorm**g.r) * (axr1 - (axr / pnorm_p) * signed_power(x, p - 1.0))
    return f, grad
