from polar_roadmap.zerodim.algebra import QuotientAlgebra, TraceForm
from polar_roadmap.zerodim.solve import (
    BoxStatus,
    SolutionBox,
    SolutionSet,
    ZeroDimensionalSystem,
    count_real_solutions,
    count_real_solutions_with_sign,
    count_solutions,
    isolate_univariate_roots,
    krawczyk_certify,
    multiplication_matrix,
    solve_real,
    trace_form,
)

__all__ = [
    "BoxStatus",
    "QuotientAlgebra",
    "SolutionBox",
    "SolutionSet",
    "TraceForm",
    "ZeroDimensionalSystem",
    "count_real_solutions",
    "count_real_solutions_with_sign",
    "count_solutions",
    "isolate_univariate_roots",
    "krawczyk_certify",
    "multiplication_matrix",
    "solve_real",
    "trace_form",
]
