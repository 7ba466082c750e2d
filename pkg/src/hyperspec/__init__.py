"""hyperspec: p-spectral radii and p-optimal weightings of uniform hypergraphs."""

from .families import (
    ClosedForm,
    beta_star_value,
    brute_force_radius,
    complete_lagrangian,
    gen_beta_star,
    gen_complete,
    gen_loose_path,
    loose_path_value,
)
from .hypergraph import (
    Edge,
    Hypergraph,
    IncidenceIndex,
    ParseError,
    build_incidence,
    degree,
    parse_edge_list,
    serialize_edge_list,
    validate,
)
from .ranking import RankingReport, rank_vertices
from .solver import (
    LagrangianApproximation,
    MultistartResult,
    SolveResult,
    SolverConfig,
    SolverError,
    cayley_step,
    cg_direction,
    lagrangian_approx,
    lagrangian_schedule,
    line_search_wolfe,
    random_unit_sphere,
    solve_multistart,
    solve_single,
)
from .tensor_ops import (
    GradientValue,
    ObjectiveValue,
    objective,
    objective_grad,
    signed_power,
    tensor_apply,
    weight_poly,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedForm",
    "Edge",
    "GradientValue",
    "Hypergraph",
    "IncidenceIndex",
    "LagrangianApproximation",
    "MultistartResult",
    "ObjectiveValue",
    "ParseError",
    "RankingReport",
    "SolveResult",
    "SolverConfig",
    "SolverError",
    "beta_star_value",
    "brute_force_radius",
    "build_incidence",
    "cayley_step",
    "cg_direction",
    "complete_lagrangian",
    "degree",
    "gen_beta_star",
    "gen_complete",
    "gen_loose_path",
    "lagrangian_approx",
    "lagrangian_schedule",
    "line_search_wolfe",
    "loose_path_value",
    "objective",
    "objective_grad",
    "parse_edge_list",
    "rank_vertices",
    "random_unit_sphere",
    "serialize_edge_list",
    "signed_power",
    "solve_multistart",
    "solve_single",
    "tensor_apply",
    "validate",
    "weight_poly",
]
