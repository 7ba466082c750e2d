import math
from dataclasses import replace

import numpy as np
import pytest

from hyperspec import (
    Hypergraph,
    SolverConfig,
    SolverError,
    beta_star_value,
    cayley_step,
    cg_direction,
    gen_beta_star,
    gen_complete,
    gen_loose_path,
    lagrangian_approx,
    lagrangian_schedule,
    line_search_wolfe,
    loose_path_value,
    random_unit_sphere,
    solve_multistart,
    solve_single,
)
from hyperspec.solver import cayley_step_length
from hyperspec.tensor_ops import value_and_grad

from conftest import make_random_graph


class TestConfig:
    def test_defaults_valid(self):
        cfg = SolverConfig(p=3.0)
        assert cfg.c1 < cfg.c2 < 1.0
        assert 0.25 < cfg.tau < 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"p": 1.0},
            {"p": 0.5},
            {"p": 2.0, "c1": 0.6, "c2": 0.5},
            {"p": 2.0, "c1": 0.0},
            {"p": 2.0, "tau": 0.25},
            {"p": 2.0, "tau": 1.0},
            {"p": 2.0, "eps": 0.0},
            {"p": 2.0, "grad_tol": 0.0},
            {"p": 2.0, "max_iter": 0},
            {"p": 2.0, "runs": 0},
        ],
    )
    def test_invalid_configs_rejected(self, kwargs):
        with pytest.raises(ValueError):
            SolverConfig(**kwargs)


class TestRandomUnitSphere:
    def test_unit_norm(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 5, 50):
            x = random_unit_sphere(n, rng)
            assert abs(np.linalg.norm(x) - 1.0) <= 1e-14

    def test_one_dimensional(self):
        rng = np.random.default_rng(3)
        assert random_unit_sphere(1, rng)[0] in (1.0, -1.0)

    def test_seeded_determinism(self):
        a = random_unit_sphere(8, np.random.default_rng(7))
        b = random_unit_sphere(8, np.random.default_rng(7))
        assert np.array_equal(a, b)

    def test_zero_dimension_rejected(self):
        with pytest.raises(ValueError):
            random_unit_sphere(0, np.random.default_rng(0))


class TestCgDirection:
    def test_no_history_returns_gradient(self):
        cfg = SolverConfig(p=2.0)
        g = np.array([1.0, 2.0])
        assert np.array_equal(cg_direction(g, None, None, cfg), g)

    def test_degenerate_overlap_returns_gradient(self):
        cfg = SolverConfig(p=2.0, eps=1e-6)
        g = np.array([1.0, 0.0])
        d = np.array([1.0, 0.0])
        y = np.array([1e-8, 1.0])  # |d.y| = 1e-8 < eps * ||d|| * ||y||
        assert np.array_equal(cg_direction(g, d, y, cfg), g)

    def test_hand_computed_case(self):
        # tau * d * ||y||^2 / (d.y) - y = (0, -1/2); dotted with g = (1, 0) gives 0
        cfg = SolverConfig(p=2.0, tau=0.5, eps=1e-6)
        g = np.array([1.0, 0.0])
        d = np.array([0.0, 1.0])
        y = np.array([0.0, 1.0])
        assert np.array_equal(cg_direction(g, d, y, cfg), g)

    def test_guaranteed_bounds_on_random_inputs(self):
        cfg = SolverConfig(p=2.0, tau=0.5, eps=1e-6)
        rng = np.random.default_rng(1)
        floor = cfg.ascent_coeff
        cap = cfg.direction_bound
        for _ in range(200):
            n = int(rng.integers(2, 8))
            g = rng.standard_normal(n)
            d = rng.standard_normal(n)
            y = rng.standard_normal(n)
            p = cg_direction(g, d, y, cfg)
            gnorm_sq = float(g @ g)
            assert float(p @ g) >= floor * gnorm_sq * (1.0 - 1e-12)
            assert np.linalg.norm(p) <= cap * math.sqrt(gnorm_sq) * (1.0 + 1e-12)


class TestCayleyStep:
    def test_zero_alpha_is_identity(self):
        x = np.array([0.6, 0.8])
        out = cayley_step(x, np.array([1.0, -2.0]), 0.0)
        assert out == pytest.approx(x, abs=1e-15)

    def test_direction_parallel_to_x_is_fixed_point(self):
        x = np.array([0.6, 0.8])
        for alpha in (0.1, 1.0, 10.0):
            out = cayley_step(x, x.copy(), alpha)
            assert out == pytest.approx(x, abs=1e-14)

    def test_quarter_turn(self):
        x = np.array([1.0, 0.0])
        d = np.array([0.0, 1.0])
        out = cayley_step(x, d, 2.0)
        assert out == pytest.approx([0.0, 1.0], abs=1e-15)
        assert cayley_step_length(x, d, 2.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_degenerate_denominator_rejected(self):
        # only reachable through misuse: the curve is defined for unit x
        with pytest.raises(ArithmeticError):
            cayley_step(np.array([3.0, 0.0]), np.array([1.0, 0.0]), 1.0)

    def test_stays_on_sphere_and_length_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = int(rng.integers(2, 10))
            x = rng.standard_normal(n)
            x /= np.linalg.norm(x)
            d = rng.standard_normal(n) * rng.uniform(0.1, 5.0)
            alpha = float(rng.uniform(0.0, 3.0))
            out = cayley_step(x, d, alpha)
            assert abs(np.linalg.norm(out) - 1.0) <= 1e-14
            assert abs(np.linalg.norm(out - x) - cayley_step_length(x, d, alpha)) <= 1e-10


class TestLineSearch:
    def test_wolfe_conditions_hold_on_single_edge(self):
        g = Hypergraph.from_edges(n=2, r=2, edges=[((1, 2), 1.0)])
        cfg = SolverConfig(p=2.0, c1=1e-4, c2=0.5)
        x = np.array([0.6, 0.8])
        f0, grad0 = value_and_grad(g, x, 2.0)
        res = line_search_wolfe(g, cfg, x, f0, grad0, grad0.copy())
        assert res.ok and res.alpha > 0
        slope0 = float(grad0 @ grad0)
        assert res.f >= f0 + cfg.c1 * res.alpha * slope0
        assert float(res.grad @ grad0) <= cfg.c2 * slope0
        # returned iterate/gradient are consistent with the accepted point
        f_check, g_check = value_and_grad(g, res.x, 2.0)
        assert res.f == f_check
        assert np.array_equal(res.grad, g_check)

    def test_accepts_initial_trial_in_one_evaluation(self):
        g = gen_beta_star(3, 10)
        cfg = SolverConfig(p=3.0)
        rng = np.random.default_rng(0)
        x = random_unit_sphere(g.n, rng)
        f0, grad0 = value_and_grad(g, x, 3.0)
        res = line_search_wolfe(g, cfg, x, f0, grad0, grad0.copy())
        assert res.ok and res.evals == 1

    def test_rejects_non_ascent_direction(self):
        g = gen_complete(4, 3)
        cfg = SolverConfig(p=2.0)
        x = np.array([0.9, 0.3, 0.3, 0.1])
        x /= np.linalg.norm(x)
        f0, grad0 = value_and_grad(g, x, 2.0)
        res = line_search_wolfe(g, cfg, x, f0, grad0, -grad0)
        assert not res.ok


class TestSolveSingle:
    def test_beta_star_from_good_start(self):
        g = gen_beta_star(3, 10)
        ref = beta_star_value(3, 10, 3).value
        cfg = SolverConfig(p=3.0)
        # start biased toward the optimum's sign pattern
        x0 = np.ones(g.n) / math.sqrt(g.n)
        res = solve_single(g, cfg, x0)
        assert abs(res.lam - ref) / ref <= 1e-8

    def test_stationary_start_returns_immediately(self):
        g = gen_complete(4, 3)
        res = solve_single(g, SolverConfig(p=2.0), np.full(4, 0.5))
        assert res.iterations == 0
        assert res.converged
        assert res.lam == pytest.approx(3.0, abs=1e-15)

    def test_loose_path_value(self):
        g = gen_loose_path(4, 4)
        ref = loose_path_value(4, 4).value
        best = -np.inf
        for seed in range(5):
            rng = np.random.default_rng(seed)
            res = solve_single(g, SolverConfig(p=4.0), random_unit_sphere(g.n, rng))
            best = max(best, res.lam)
        assert abs(best - ref) / ref <= 1e-8

    def test_reference_stop(self):
        g = gen_beta_star(3, 10)
        ref = beta_star_value(3, 10, 3).value
        rng = np.random.default_rng(0)
        res = solve_single(g, SolverConfig(p=3.0), random_unit_sphere(g.n, rng), reference=ref)
        assert res.converged and res.stop_reason == "reference"

    def test_line_search_failure_reported(self):
        # this seed stalls against the float resolution of f before grad_tol
        g = gen_beta_star(3, 10)
        rng = np.random.default_rng(2)
        res = solve_single(g, SolverConfig(p=3.0), random_unit_sphere(g.n, rng))
        assert res.stop_reason == "line_search_failure"
        assert not res.converged
        # the value is still at the optimum to float resolution
        ref = beta_star_value(3, 10, 3).value
        assert abs(res.lam - ref) / ref <= 1e-12

    def test_numerical_failure_on_overflow(self):
        edges = [(c, 1e308) for c in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]]
        g = Hypergraph.from_edges(n=4, r=3, edges=edges)
        with np.errstate(over="ignore", invalid="ignore"):
            res = solve_single(g, SolverConfig(p=2.0), np.full(4, 0.5))
        assert res.stop_reason == "numerical_failure"
        assert not res.converged
        assert math.isnan(res.lam)

    def test_zero_start_rejected(self):
        with pytest.raises(ValueError):
            solve_single(gen_complete(4, 3), SolverConfig(p=2.0), np.zeros(4))

    def test_trace_shapes(self):
        g = gen_beta_star(3, 5)
        rng = np.random.default_rng(1)
        res = solve_single(g, SolverConfig(p=3.0), random_unit_sphere(g.n, rng), track=True)
        assert res.trace is not None and len(res.trace) == res.iterations
        assert [r.k for r in res.trace] == list(range(res.iterations))

    def test_determinism(self):
        g = gen_loose_path(4, 3)
        cfg = SolverConfig(p=4.0)
        rng1, rng2 = np.random.default_rng(9), np.random.default_rng(9)
        a = solve_single(g, cfg, random_unit_sphere(g.n, rng1))
        b = solve_single(g, cfg, random_unit_sphere(g.n, rng2))
        assert a.lam == b.lam
        assert a.iterations == b.iterations
        assert np.array_equal(a.weighting, b.weighting)


class TestSolveMultistart:
    def test_tetrahedron(self):
        res = solve_multistart(gen_complete(4, 3), SolverConfig(p=2.0, runs=100, seed=0))
        assert res.best.lam == pytest.approx(3.0, abs=3e-8)

    def test_single_run_equals_solo(self):
        g = gen_beta_star(3, 4)
        cfg = SolverConfig(p=3.0, runs=1, seed=5)
        multi = solve_multistart(g, cfg)
        assert multi.best_run == 0
        assert multi.best.lam == multi.all_lambdas[0]

    def test_best_is_max(self):
        g = gen_complete(4, 3)
        res = solve_multistart(g, SolverConfig(p=2.0, runs=20, seed=1))
        assert res.best.lam == max(res.all_lambdas)
        assert len(res.run_summaries) == 20
        assert res.run_summaries[res.best_run].lam == res.best.lam
        assert all(s.iterations >= 0 for s in res.run_summaries)

    def test_weighting_is_nonnegative_and_consistent(self):
        g = gen_loose_path(4, 3)
        res = solve_multistart(g, SolverConfig(p=4.0, runs=10, seed=0))
        assert np.all(res.best.weighting >= 0.0)
        from hyperspec import objective

        assert res.best.lam == objective(g, res.best.weighting, 4.0).f

    def test_sign_flip_never_loses_value(self):
        # nonnegative edge weights: f(|x|) >= f(x), so the reported value
        # dominates every traced objective value
        g = gen_loose_path(4, 3)
        res = solve_multistart(g, SolverConfig(p=4.0, runs=10, seed=7), track=True)
        for run in res.results:
            assert run.lam >= run.trace[-1].f_next - 1e-12 * abs(run.lam)

    def test_weighting_rescaling(self):
        g = gen_complete(4, 3)
        res = solve_multistart(g, SolverConfig(p=2.0, runs=30, seed=0))
        w1 = res.best.weighting_scaled(1.0)
        wp = res.best.weighting_scaled(2.0)
        assert np.sum(w1) == pytest.approx(1.0, rel=1e-12)
        assert np.linalg.norm(wp) == pytest.approx(1.0, rel=1e-12)

    def test_accuracy_rate(self):
        res = solve_multistart(
            gen_complete(4, 3), SolverConfig(p=2.0, runs=50, seed=3), reference=3.0
        )
        assert res.accuracy_rate is not None
        expected = np.mean(np.abs(np.array(res.all_lambdas) - 3.0) / 3.0 <= 1e-8)
        assert res.accuracy_rate == pytest.approx(expected)
        assert 0.0 < res.accuracy_rate < 1.0

    def test_determinism_across_calls(self):
        g = gen_beta_star(3, 6)
        cfg = SolverConfig(p=3.0, runs=8, seed=123, deterministic=True)
        a = solve_multistart(g, cfg)
        b = solve_multistart(g, cfg)
        assert a.all_lambdas == b.all_lambdas
        assert np.array_equal(a.best.weighting, b.best.weighting)

    def test_threads_match_sequential(self):
        g = gen_beta_star(3, 6)
        cfg = SolverConfig(p=3.0, runs=8, seed=4)
        seq = solve_multistart(g, cfg, threads=1)
        par = solve_multistart(g, cfg, threads=4)
        assert seq.all_lambdas == par.all_lambdas
        assert seq.best_run == par.best_run

    def test_success_frequency_nondecreasing_in_run_count(self):
        # empirical multistart success over prefixes of a run sequence
        g = gen_complete(4, 3)
        res = solve_multistart(g, SolverConfig(p=2.0, runs=60, seed=11), reference=3.0)
        lams = np.array(res.all_lambdas)
        hits = np.abs(lams - 3.0) / 3.0 <= 1e-8
        prefix_success = np.maximum.accumulate(hits)
        assert np.all(np.diff(prefix_success.astype(int)) >= 0)
        assert prefix_success[-1]

    def test_multiset_graph_matches_brute_force(self):
        from hyperspec import brute_force_radius

        g = Hypergraph.from_edges(
            n=3, r=3, edges=[((1, 1, 2), 1.0), ((1, 2, 3), 2.0), ((3, 3, 3), 0.5)]
        )
        res = solve_multistart(g, SolverConfig(p=2.0, runs=30, seed=0))
        oracle = brute_force_radius(g, 2.0, budget=500, seed=0)
        assert abs(res.best.lam - oracle) <= 1e-8

    def test_isolated_vertices_get_zero_weight(self):
        g = Hypergraph.from_edges(n=6, r=2, edges=[((1, 2), 1.0)])
        res = solve_multistart(g, SolverConfig(p=2.0, runs=10, seed=2))
        assert res.best.lam == pytest.approx(1.0, abs=1e-9)
        assert np.all(res.best.weighting[2:] <= 1e-6)

    def test_constant_objective_self_loop(self):
        # a multiset self-loop on one vertex makes f constant: zero gradient
        g = Hypergraph.from_edges(n=1, r=2, edges=[((1, 1), 1.5)])
        res = solve_multistart(g, SolverConfig(p=2.0, runs=3, seed=3))
        assert res.best.lam == pytest.approx(3.0)
        assert res.best.iterations == 0

    def test_edgeless_graph(self):
        g = Hypergraph.from_edges(n=5, r=3, edges=[])
        res = solve_multistart(g, SolverConfig(p=2.0, runs=2, seed=0))
        assert res.best.lam == 0.0
        assert res.best.iterations == 0

    def test_aggregate_failure(self, monkeypatch):
        from hyperspec import solver as solver_mod

        def always_fails(g, cfg, x0, reference=None, track=False):
            return solver_mod.SolveResult(
                lam=math.nan,
                weighting=np.zeros(g.n),
                iterations=0,
                converged=False,
                stop_reason="numerical_failure",
                grad_norm=math.nan,
            )

        monkeypatch.setattr(solver_mod, "solve_single", always_fails)
        with pytest.raises(SolverError):
            solver_mod.solve_multistart(gen_complete(4, 3), SolverConfig(p=2.0, runs=3))


class TestLagrangianApprox:
    def test_schedule_values(self):
        assert lagrangian_schedule(3) == [1.0 + 1.0 / 3.0, 1.2, 1.0 + 1.0 / 7.0]
        with pytest.raises(ValueError):
            lagrangian_schedule(0)

    def test_single_edge_matches_closed_form(self):
        # a single pair edge is the one-edge star: lambda^(p) = 2 * 2^(-2/p)
        g = Hypergraph.from_edges(n=2, r=2, edges=[((1, 2), 1.0)])
        cfg = SolverConfig(p=2.0, runs=5, seed=0, grad_tol=1e-10)
        approx = lagrangian_approx(g, cfg, steps=5)
        for row in approx.rows:
            ref = beta_star_value(2, 1, row.p).value
            assert abs(row.lam - ref) / ref <= 1e-9
        assert approx.estimate == approx.rows[-1].normalized

    def test_estimate_approaches_simplex_value(self):
        g = Hypergraph.from_edges(n=2, r=2, edges=[((1, 2), 1.0)])
        cfg = SolverConfig(p=2.0, runs=5, seed=0)
        errs = [
            abs(lagrangian_approx(g, cfg, steps=v).estimate - 0.25) for v in (1, 4, 10)
        ]
        assert errs[0] > errs[1] > errs[2]
