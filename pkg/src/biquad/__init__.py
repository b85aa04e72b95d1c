"""Equal sums of fourth powers from rational points on E(h)."""

from .compose import Decomposition, Identity, Term, decompose, expand_identity, expand_weighted, verify_identity
from .curve import INFINITY, CurveContext, CurvePoint, add, build_curve, negate, on_curve, scalar_mul
from .derive import (
    PMQTriple,
    ScalePlan,
    SolutionQuadruple,
    as_weighted,
    find_solution,
    iter_solutions,
    pmq_to_quadruple,
    point_to_pmq,
    solve_with_scaling,
)
from .errors import (
    BiquadError,
    DataIntegrityError,
    DegenerateParameter,
    DegeneratePoint,
    DomainError,
    InconsistentWeights,
    PointNotFound,
    TrivialIdentity,
    TrivialQuadruple,
)
from .pointsearch import GeneratorRegistry, SearchBounds, known_generators, load_registry, search_points

__version__ = "0.1.0"
