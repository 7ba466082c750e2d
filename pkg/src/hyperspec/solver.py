"""First-order spherically constrained maximization of the p-spectral objective.

One iteration: build a conjugate-gradient ascent direction from the previous
step and gradient difference, move along the Cayley-transform curve that stays
on the unit sphere, and pick the curve parameter by a Wolfe line search whose
derivative comes from the closed-form identity alpha * f'(alpha) =
-grad(x(alpha)) . x.  Multistart repeats this from uniformly random starting
points and keeps the largest value found.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .hypergraph import Hypergraph
from .tensor_ops import objective, value_and_grad


class SolverError(RuntimeError):
    """Raised when every run of a multistart solve fails numerically."""


@dataclass(frozen=True)
class SolverConfig:
    """All solver parameters.

    c1 < c2 are the Wolfe constants, tau in (1/4, 1) and eps > 0 control the
    conjugate-gradient beta formula, grad_tol is the stationarity stop, and
    runs/seed drive the multistart.  Every field is validated on construction.
    """

    p: float
    c1: float = 1e-4
    c2: float = 0.5
    tau: float = 0.5
    eps: float = 1e-6
    grad_tol: float = 1e-8
    max_iter: int = 1000
    runs: int = 100
    seed: int = 0
    deterministic: bool = True
    max_linesearch_steps: int = 40

    def __post_init__(self):
        if not self.p > 1.0:
            raise ValueError(f"need p > 1, got p={self.p}")
        if not 0.0 < self.c1 < self.c2 < 1.0:
            raise ValueError(f"need 0 < c1 < c2 < 1, got c1={self.c1} c2={self.c2}")
        if not 0.25 < self.tau < 1.0:
            raise ValueError(f"need 1/4 < tau < 1, got tau={self.tau}")
        if not self.eps > 0.0:
            raise ValueError(f"need eps > 0, got eps={self.eps}")
        if not self.grad_tol > 0.0:
            raise ValueError(f"need grad_tol > 0, got grad_tol={self.grad_tol}")
        if self.max_iter < 1 or self.runs < 1 or self.max_linesearch_steps < 1:
            raise ValueError("max_iter, runs and max_linesearch_steps must be >= 1")

    @property
    def direction_bound(self) -> float:
        """M0 = 1 + 1/eps + tau/eps^2, the guaranteed ||direction||/||grad|| cap."""
        return 1.0 + 1.0 / self.eps + self.tau / self.eps**2

    @property
    def ascent_coeff(self) -> float:
        """1 - 1/(4 tau), the guaranteed direction . grad / ||grad||^2 floor."""
        return 1.0 - 1.0 / (4.0 * self.tau)


@dataclass(frozen=True)
class IterationRecord:
    """Per-iteration diagnostics; enough to re-check every runtime inequality."""

    k: int
    f: float
    gnorm: float
    ascent: float          # direction . grad at the start of the iteration
    dir_norm: float
    alpha: float
    f_next: float
    curv_next: float       # grad(x_next) . direction
    step_norm: float       # ||x_next - x||
    step_pred: float       # closed-form step length for the accepted alpha
    drift: float           # | ||x_next||_2 - 1 |
    evals: int


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one solver run: estimate, weighting and optional trace.

    ``weighting`` is the entrywise-nonnegative final iterate with unit 2-norm;
    :meth:`weighting_scaled` rescales it to any other norm (the weighting with
    unit p-norm is the p-optimal weighting proper).
    """

    lam: float
    weighting: np.ndarray
    iterations: int
    converged: bool
    stop_reason: str
    grad_norm: float
    trace: tuple[IterationRecord, ...] | None = None

    def weighting_scaled(self, ord: float) -> np.ndarray:
        """The weighting rescaled to unit norm of the given order (e.g. 1 or p)."""
        scale = float(np.sum(self.weighting**ord) ** (1.0 / ord))
        return self.weighting / scale


@dataclass(frozen=True)
class RunSummary:
    """Scalar facts about one multistart run (no vectors, cheap to keep)."""

    lam: float
    iterations: int
    converged: bool
    stop_reason: str
    grad_norm: float


@dataclass(frozen=True)
class MultistartResult:
    best: SolveResult
    best_run: int
    all_lambdas: tuple[float, ...]
    run_summaries: tuple[RunSummary, ...]
    accuracy_rate: float | None = None
    results: tuple[SolveResult, ...] | None = None


@dataclass(frozen=True)
class LineSearchResult:
    ok: bool
    alpha: float
    x: np.ndarray | None
    f: float
    grad: np.ndarray | None
    evals: int


@dataclass(frozen=True)
class ScheduleRow:
    theta: int
    p: float
    lam: float
    normalized: float      # lam / r!


@dataclass(frozen=True)
class LagrangianApproximation:
    estimate: float
    rows: tuple[ScheduleRow, ...]


def random_unit_sphere(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the unit 2-sphere in R^n (normalized standard normals)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    while True:
        x = rng.standard_normal(n)
        norm = float(np.linalg.norm(x))
        if norm > 0.0:
            return x / norm


def cg_direction(
    grad: np.ndarray,
    step_prev: np.ndarray | None,
    grad_diff_prev: np.ndarray | None,
    cfg: SolverConfig,
) -> np.ndarray:
    """Conjugate-gradient ascent direction grad + beta * previous step.

    beta = max(0, beta_tilde), with beta_tilde zeroed whenever the overlap
    |step . grad_diff| falls below eps * ||step|| * ||grad_diff||.  The result
    always satisfies direction . grad >= (1 - 1/(4 tau)) ||grad||^2 and
    ||direction|| <= (1 + 1/eps + tau/eps^2) ||grad||.
    """
    if step_prev is None or grad_diff_prev is None:
        return grad.copy()
    dty = float(step_prev @ grad_diff_prev)
    dnorm = float(np.linalg.norm(step_prev))
    ynorm = float(np.linalg.norm(grad_diff_prev))
    if abs(dty) < cfg.eps * dnorm * ynorm or dty == 0.0:
        return grad.copy()
    y_sq = float(grad_diff_prev @ grad_diff_prev)
    beta_tilde = (
        cfg.tau * y_sq / dty * float(step_prev @ grad) - float(grad_diff_prev @ grad)
    ) / dty
    if not math.isfinite(beta_tilde) or beta_tilde <= 0.0:
        return grad.copy()
    return grad + beta_tilde * step_prev


def cayley_step(x: np.ndarray, direction: np.ndarray, alpha: float) -> np.ndarray:
    """Point reached from unit x after a Cayley-transform move of size alpha.

    x(alpha) = ([(2 - a xd)^2 - ||a d||^2] x + 4 a d) / (4 + ||a d||^2 - (a xd)^2)
    with xd = x . d; the sphere is preserved exactly in real arithmetic and the
    result is renormalized to keep round-off from accumulating.
    """
    scaled = alpha * direction
    overlap = float(x @ scaled)
    sq = float(scaled @ scaled)
    denom = 4.0 + sq - overlap * overlap
    if not denom > 0.0:
        raise ArithmeticError(f"degenerate curve denominator {denom}")
    x_next = (((2.0 - overlap) ** 2 - sq) * x + 4.0 * scaled) / denom
    return x_next / float(np.linalg.norm(x_next))


def cayley_step_length(x: np.ndarray, direction: np.ndarray, alpha: float) -> float:
    """Closed-form ||x(alpha) - x|| for the Cayley move (no evaluation of x(alpha))."""
    scaled = alpha * direction
    overlap = float(x @ scaled)
    sq = float(scaled @ scaled)
    denom = 4.0 + sq - overlap * overlap
    return 2.0 * math.sqrt(max(sq - overlap * overlap, 0.0) / denom)


def _interpolate(lo: float, f_lo: float, d_lo: float, hi: float, f_hi: float) -> float:
    """Quadratic-interpolation trial inside (lo, hi), safeguarded to the bracket."""
    h = hi - lo
    trial = None
    if math.isfinite(f_hi) and h > 0.0:
        curvature = (f_hi - f_lo - d_lo * h) / (h * h)
        if curvature < 0.0:
            trial = lo - d_lo / (2.0 * curvature)
    if trial is None or not math.isfinite(trial):
        trial = lo + 0.5 * h
    return min(max(trial, lo + 0.1 * h), hi - 0.1 * h)


# deterministic placement ratios for re-trials whose value comparison is pure
# rounding noise; varying the ratio varies the rounding draw at each retry
_NOISE_RATIOS = (0.5, 0.38, 0.62, 0.3, 0.7, 0.45, 0.55, 0.25, 0.75, 0.41)


def line_search_wolfe(
    g: Hypergraph,
    cfg: SolverConfig,
    x: np.ndarray,
    f0: float,
    grad0: np.ndarray,
    direction: np.ndarray,
) -> LineSearchResult:
    """Find alpha > 0 on the Cayley curve satisfying both Wolfe conditions:

        f(x(alpha)) >= f0 + c1 * alpha * grad0 . direction
        grad(x(alpha)) . direction <= c2 * grad0 . direction

    Expansion by factor 2 until the peak of the curve section is bracketed
    (sufficient increase fails, the value drops below the bracket floor, or the
    curve slope turns nonpositive), then safeguarded quadratic interpolation
    inside the bracket.  The slope phi'(alpha) comes from the closed-form
    identity phi'(alpha) = -grad(x(alpha)) . x / alpha, so every trial costs a
    single objective/gradient evaluation.

    Near stationarity the true increase of f falls below the resolution of
    floating-point evaluation and value comparisons become rounding noise; the
    regime is detected by the increase threshold being absorbed
    (f0 + c1*alpha*slope == f0).  There the bracket is steered by slopes alone
    and in-window trials are re-placed until the value noise lands nonnegative.
    Accepted steps always satisfy both inequalities above exactly as written.
    """
    slope0 = float(grad0 @ direction)
    if not slope0 > 0.0:
        return LineSearchResult(False, 0.0, None, f0, None, 0)

    lo, f_lo, d_lo = 0.0, f0, slope0
    hi, f_hi = math.inf, math.inf
    trial = 2.0 / (1.0 + float(np.linalg.norm(direction)))
    evals = 0
    retries = 0
    for _ in range(cfg.max_linesearch_steps):
        x_t = cayley_step(x, direction, trial)
        f_t, grad_t = value_and_grad(g, x_t, cfg.p)
        evals += 1
        finite = math.isfinite(f_t) and bool(np.all(np.isfinite(grad_t)))
        threshold = f0 + cfg.c1 * trial * slope0
        increase_ok = finite and f_t >= threshold
        curvature_ok = finite and float(grad_t @ direction) <= cfg.c2 * slope0
        if increase_ok and curvature_ok:
            return LineSearchResult(True, trial, x_t, f_t, grad_t, evals)

        sub_resolution = finite and threshold == f0
        slope_t = -float(grad_t @ x) / trial if finite else -math.inf
        # in the noise regime a slope reading flickers around zero near the
        # peak; only a slope below the mean-slope boundary of the increase
        # condition proves the trial overshot
        peak_passed = slope_t <= ((2.0 * cfg.c1 - 1.0) * slope0 if sub_resolution else 0.0)

        if sub_resolution and curvature_ok and not peak_passed:
            # inside the acceptable window but the value comparison lost to
            # rounding noise: keep the bracket, re-place the trial, draw again
            ratio = _NOISE_RATIOS[retries % len(_NOISE_RATIOS)]
            retries += 1
            trial = lo + ratio * (hi - lo) if math.isfinite(hi) else trial * (1.0 + ratio)
        elif (
            not increase_ok
            or (not sub_resolution and f_t < f_lo)
            or peak_passed
        ):
            # peak bracketed: trial overshot the rising section
            hi, f_hi = trial, (f_t if finite else -math.inf)
            trial = _interpolate(lo, f_lo, d_lo, hi, f_hi)
        else:
            # still rising with curvature unsatisfied: move the floor up
            lo, f_lo, d_lo = trial, f_t, slope_t
            trial = trial * 2.0 if math.isinf(hi) else _interpolate(lo, f_lo, d_lo, hi, f_hi)

        if math.isfinite(hi) and hi - lo <= 1e-16 * max(1.0, hi):
            break
    return LineSearchResult(False, 0.0, None, f0, None, evals)


def solve_single(
    g: Hypergraph,
    cfg: SolverConfig,
    x0: np.ndarray,
    reference: float | None = None,
    track: bool = False,
) -> SolveResult:
    """Run the iteration from one unit starting point.

    Stops when ||grad|| <= grad_tol, when the value matches an optional
    reference to 1e-12, at max_iter, or on line-search/numerical failure
    (after one steepest-ascent restart).  The reported weighting is the
    entrywise absolute value of the final iterate, which can only increase
    the objective because edge weights are nonnegative.
    """
    x = np.asarray(x0, dtype=np.float64).copy()
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise ValueError("starting point must be nonzero")
    x /= norm

    f, grad = value_and_grad(g, x, cfg.p)
    trace: list[IterationRecord] = []
    step_prev: np.ndarray | None = None
    grad_diff_prev: np.ndarray | None = None
    k = 0
    while True:
        if not math.isfinite(f) or not np.all(np.isfinite(grad)):
            stop = "numerical_failure"
            break
        gnorm = float(np.linalg.norm(grad))
        if gnorm <= cfg.grad_tol:
            stop = "grad_tol"
            break
        if reference is not None and abs(f - reference) <= 1e-12:
            stop = "reference"
            break
        if k >= cfg.max_iter:
            stop = "max_iter"
            break

        direction = cg_direction(grad, step_prev, grad_diff_prev, cfg)
        ascent = float(direction @ grad)
        required = cfg.ascent_coeff * gnorm * gnorm
        if not math.isfinite(ascent) or ascent < required * (1.0 - 1e-12):
            direction = grad.copy()
            ascent = gnorm * gnorm
        search = line_search_wolfe(g, cfg, x, f, grad, direction)
        if not search.ok and not np.array_equal(direction, grad):
            # restart policy: retry the iteration with plain steepest ascent
            direction = grad.copy()
            ascent = gnorm * gnorm
            search = line_search_wolfe(g, cfg, x, f, grad, direction)
        if not search.ok:
            stop = "line_search_failure"
            break

        if track:
            trace.append(
                IterationRecord(
                    k=k,
                    f=f,
                    gnorm=gnorm,
                    ascent=ascent,
                    dir_norm=float(np.linalg.norm(direction)),
                    alpha=search.alpha,
                    f_next=search.f,
                    curv_next=float(search.grad @ direction),
                    step_norm=float(np.linalg.norm(search.x - x)),
                    step_pred=cayley_step_length(x, direction, search.alpha),
                    drift=abs(float(np.linalg.norm(search.x)) - 1.0),
                    evals=search.evals,
                )
            )
        step_prev = search.x - x
        grad_diff_prev = search.grad - grad
        x, f, grad = search.x, search.f, search.grad
        k += 1

    converged = stop in ("grad_tol", "reference")
    weighting = np.abs(x)
    if math.isfinite(f):
        lam = objective(g, weighting, cfg.p).f
    else:
        lam = math.nan
    return SolveResult(
        lam=lam,
        weighting=weighting,
        iterations=k,
        converged=converged,
        stop_reason=stop,
        grad_norm=float(np.linalg.norm(grad)),
        trace=tuple(trace) if track else None,
    )


def _start_point(g: Hypergraph, cfg: SolverConfig, rng: np.random.Generator) -> np.ndarray:
    """Random start, redrawn up to 5 times if it happens to be stationary."""
    x0 = random_unit_sphere(g.n, rng)
    for _ in range(5):
        _, grad = value_and_grad(g, x0, cfg.p)
        if float(np.linalg.norm(grad)) > cfg.grad_tol:
            break
        x0 = random_unit_sphere(g.n, rng)
    return x0


def solve_multistart(
    g: Hypergraph,
    cfg: SolverConfig,
    reference: float | None = None,
    track: bool = False,
    threads: int = 1,
) -> MultistartResult:
    """cfg.runs independent runs from seeds cfg.seed + run index; keep the max.

    Runs share only the immutable hypergraph and write disjoint result slots,
    so they may execute on a thread pool; the reduction (argmax by run order)
    does not depend on completion order.  Ties keep the earliest run.
    """

    def one_run(i: int) -> SolveResult:
        rng = np.random.default_rng(cfg.seed + i)
        return solve_single(g, cfg, _start_point(g, cfg, rng), reference, track)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_run, range(cfg.runs)))
    else:
        results = [one_run(i) for i in range(cfg.runs)]

    lams = np.array([res.lam for res in results])
    if not np.any(np.isfinite(lams)):
        raise SolverError(f"all {cfg.runs} runs failed numerically")
    best_run = int(np.nanargmax(lams))
    accuracy = None
    if reference is not None:
        rel = np.abs(lams - reference) / abs(reference)
        accuracy = float(np.mean(rel <= 1e-8))
    summaries = tuple(
        RunSummary(
            lam=res.lam,
            iterations=res.iterations,
            converged=res.converged,
            stop_reason=res.stop_reason,
            grad_norm=res.grad_norm,
        )
        for res in results
    )
    return MultistartResult(
        best=results[best_run],
        best_run=best_run,
        all_lambdas=tuple(float(v) for v in lams),
        run_summaries=summaries,
        accuracy_rate=accuracy,
        results=tuple(results) if track else None,
    )


def lagrangian_schedule(steps: int) -> list[float]:
    """The p values 1 + 1/(2 theta + 1) for theta = 1..steps."""
    if steps < 1:
        raise ValueError(f"need steps >= 1, got {steps}")
    return [1.0 + 1.0 / (2 * theta + 1) for theta in range(1, steps + 1)]


def lagrangian_approx(
    g: Hypergraph,
    cfg: SolverConfig,
    steps: int,
    threads: int = 1,
) -> LagrangianApproximation:
    """Approximate the hypergraph Lagrangian by driving p down the schedule
    p_theta = 1 + 1/(2 theta + 1) and normalizing each p-spectral radius by r!.

    The estimate is the normalized value at the last schedule point.
    """
    rfact = math.factorial(g.r)
    rows = []
    for theta, p_theta in enumerate(lagrangian_schedule(steps), start=1):
        res = solve_multistart(g, replace(cfg, p=p_theta), threads=threads)
        rows.append(
            ScheduleRow(theta=theta, p=p_theta, lam=res.best.lam, normalized=res.best.lam / rfact)
        )
    return LagrangianApproximation(estimate=rows[-1].normalized, rows=tuple(rows))
