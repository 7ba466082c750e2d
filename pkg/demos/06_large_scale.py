#!/usr/bin/env python3
"""A single run on a beta-star with 20001 vertices: the edge-based kernels keep
each iteration at O(n + m*r) time and memory, so large instances converge in
seconds.

Also demonstrates the two stopping modes.  On large instances the objective
value reaches its double-precision resolution long before the gradient norm
reaches a tight tolerance, so the run either stops when no further ascent is
representable or, when a reference value is supplied, as soon as the value
matches it to 1e-12.
"""

import time

import numpy as np

from hyperspec import SolverConfig, beta_star_value, gen_beta_star, solve_single
from hyperspec.solver import random_unit_sphere

g = gen_beta_star(3, 10_000)
ref = beta_star_value(3, 10_000, 3.0).value
print(f"beta-star: n = {g.n}, m = {g.m}, closed form lambda = {ref:.12f}")

x0 = random_unit_sphere(g.n, np.random.default_rng(42))

t0 = time.perf_counter()
res = solve_single(g, SolverConfig(p=3.0), x0)
dt = time.perf_counter() - t0
print(f"\nplain run:     {res.iterations} iterations in {dt:.2f} s")
print(f"  lambda = {res.lam:.12f}  (rel err {abs(res.lam - ref) / ref:.1e})")
print(f"  stop: {res.stop_reason}, final ||grad|| = {res.grad_norm:.1e}")

t0 = time.perf_counter()
res = solve_single(g, SolverConfig(p=3.0), x0, reference=ref)
dt = time.perf_counter() - t0
print(f"\nreference run: {res.iterations} iterations in {dt:.2f} s")
print(f"  lambda = {res.lam:.12f}  (rel err {abs(res.lam - ref) / ref:.1e})")
print(f"  stop: {res.stop_reason}, converged = {res.converged}")
