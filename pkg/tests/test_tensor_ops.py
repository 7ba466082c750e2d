import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperspec import (
    Hypergraph,
    gen_complete,
    objective,
    objective_grad,
    signed_power,
    tensor_apply,
    weight_poly,
)

from conftest import make_random_graph, random_unit


def single_edge(verts, weight=1.0, n=None):
    n = n or max(verts)
    return Hypergraph.from_edges(n=n, r=len(verts), edges=[(verts, weight)])


class TestWeightPoly:
    def test_complete_graph_uniform(self):
        g = gen_complete(4, 3)
        x = np.full(4, 0.25)
        assert weight_poly(g, x) == pytest.approx(1.0 / 16.0, rel=1e-15)

    def test_zero_vector(self):
        assert weight_poly(gen_complete(4, 3), np.zeros(4)) == 0.0

    def test_single_weighted_edge(self):
        g = single_edge((1, 2, 3), weight=1.5)
        assert weight_poly(g, np.array([1.0, 2.0, 3.0])) == pytest.approx(9.0)

    def test_multiset_edge_repeats_multiply(self):
        g = single_edge((1, 1, 2), n=2)
        assert weight_poly(g, np.array([3.0, 2.0])) == pytest.approx(18.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            weight_poly(gen_complete(4, 3), np.ones(5))


class TestTensorApply:
    def test_single_pair_edge(self):
        g = single_edge((1, 2))
        axr, axr1 = tensor_apply(g, np.array([1.0, 1.0]))
        assert axr == pytest.approx(2.0)
        assert axr1 == pytest.approx([1.0, 1.0])

    def test_complete_graph_uniform(self):
        g = gen_complete(4, 3)
        axr, _ = tensor_apply(g, np.full(4, 0.25))
        assert axr == pytest.approx(3.0 / 16.0, rel=1e-15)

    def test_partial_products(self):
        g = single_edge((1, 2, 3))
        _, axr1 = tensor_apply(g, np.array([1.0, 2.0, 3.0]))
        assert axr1 == pytest.approx([6.0, 3.0, 2.0])

    def test_multiset_multiplicity_factor(self):
        # edge {1,1,2}: w = x1^2 x2, dw = (2 x1 x2, x1^2)
        g = single_edge((1, 1, 2), n=2)
        x = np.array([3.0, 5.0])
        axr, axr1 = tensor_apply(g, x)
        assert axr1 == pytest.approx([30.0, 9.0])
        assert axr == pytest.approx(float(x @ axr1))

    def test_zero_entries_no_division(self):
        g = single_edge((1, 2, 3))
        _, axr1 = tensor_apply(g, np.array([0.0, 2.0, 5.0]))
        assert axr1 == pytest.approx([10.0, 0.0, 0.0])


class TestSignedPower:
    def test_identity_at_one(self):
        x = np.array([-2.0, 3.0])
        assert signed_power(x, 1.0) == pytest.approx([-2.0, 3.0])

    def test_square_keeps_sign(self):
        assert signed_power(np.array([-2.0, 0.0, 2.0]), 2.0) == pytest.approx([-4.0, 0.0, 4.0])

    def test_square_root(self):
        assert signed_power(np.array([4.0]), 0.5) == pytest.approx([2.0])

    def test_nonpositive_exponent(self):
        with pytest.raises(ValueError):
            signed_power(np.ones(2), 0.0)


class TestObjective:
    def test_single_edge_p2(self):
        g = single_edge((1, 2))
        x = np.array([1.0, 1.0]) / math.sqrt(2.0)
        assert objective(g, x, 2.0).f == pytest.approx(1.0, rel=1e-14)

    def test_scale_invariance(self):
        g = gen_complete(5, 3)
        rng = np.random.default_rng(0)
        x = rng.standard_normal(5)
        f1 = objective(g, x, 3.0).f
        f2 = objective(g, 7.0 * x, 3.0).f
        assert f2 == pytest.approx(f1, rel=1e-12)

    def test_factors_consistent_near_p_one(self):
        g = gen_complete(4, 3)
        x = np.full(4, 0.5)
        ov = objective(g, x, 1.05)
        assert ov.f * ov.pnorm**3 == pytest.approx(6.0 * weight_poly(g, x), rel=1e-13)
        assert ov.w == pytest.approx(weight_poly(g, x))

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            objective(gen_complete(4, 3), np.zeros(4), 2.0)


class TestObjectiveGrad:
    def test_symmetric_point_is_stationary(self):
        g = gen_complete(4, 3)
        gv = objective_grad(g, np.full(4, 0.5), 2.0)
        assert np.all(gv.g == 0.0)

    def test_matches_central_differences(self):
        rng = np.random.default_rng(42)
        h = 1e-6
        for _ in range(25):
            n = int(rng.integers(3, 9))
            r = int(rng.integers(2, min(n, 4) + 1))
            g = make_random_graph(rng, n, r, int(rng.integers(1, 5)))
            p = float(rng.choice([1.5, 2.0, 3.0, 8.0]))
            x = rng.uniform(0.2, 1.0, size=n) * rng.choice([-1.0, 1.0], size=n)
            x /= np.linalg.norm(x)
            grad = objective_grad(g, x, p).g
            fd = np.zeros(n)
            for i in range(n):
                xp, xm = x.copy(), x.copy()
                xp[i] += h
                xm[i] -= h
                fd[i] = (objective(g, xp, p).f - objective(g, xm, p).f) / (2 * h)
            assert np.linalg.norm(grad - fd) <= 1e-6 * np.linalg.norm(grad)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            objective_grad(gen_complete(4, 3), np.zeros(4), 2.0)


# --- property tests -----------------------------------------------------------

ps = st.sampled_from([1.5, 2.0, 3.0, 4.0, 8.0])


@st.composite
def graph_and_vector(draw):
    seed = draw(st.integers(0, 2**31 - 1))
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    r = int(rng.integers(2, min(n, 4) + 1))
    g = make_random_graph(rng, n, r, int(rng.integers(1, 6)))
    x = random_unit(rng, n)
    return g, x


@given(graph_and_vector(), ps, st.floats(min_value=0.1, max_value=10.0))
@settings(max_examples=60, deadline=None)
def test_zero_order_homogeneity(gx, p, t):
    g, x = gx
    assert objective(g, t * x, p).f == pytest.approx(objective(g, x, p).f, rel=1e-10)


@given(graph_and_vector(), ps)
@settings(max_examples=60, deadline=None)
def test_gradient_orthogonal_to_x(gx, p):
    g, x = gx
    gv = objective_grad(g, x, p)
    assert abs(float(x @ gv.g)) <= 1e-12 * (1.0 + np.linalg.norm(gv.g)) * np.linalg.norm(x)


@given(graph_and_vector())
@settings(max_examples=60, deadline=None)
def test_scalar_vector_identity_exact(gx):
    g, x = gx
    axr, axr1 = tensor_apply(g, x)
    assert axr == float(x @ axr1)


@given(graph_and_vector())
@settings(max_examples=60, deadline=None)
def test_axr_is_r_times_weight_poly(gx):
    # distinct-vertex edges only (make_random_graph never repeats a vertex)
    g, x = gx
    axr, _ = tensor_apply(g, x)
    assert axr == pytest.approx(g.r * weight_poly(g, x), rel=1e-12, abs=1e-300)
