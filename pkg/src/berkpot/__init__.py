"""Exact potential theory on the Berkovich projective line over a p-adic field,
with a floating-point companion for Leja points in the complex plane."""

from .equilibrium import (
    CompactSetDescription,
    EquilibriumResult,
    PreconditionError,
    energy,
    equilibrium,
    is_capacity_zero,
    normalize_set,
    potential,
)
from .green import (
    GreenFunction,
    LCandidate,
    Report,
    ball_green_closed_form,
    brelot_cartan_family_check,
    extremal_envelope,
    green_eval,
    green_function,
    green_properties_report,
    nested_limit_check,
    verify_main_theorem,
)
from .plane import PlaneCompact, classical_green, fekete_points, leja_extremal
from .tree import (
    CPAFunction,
    DiscreteMeasure,
    FiniteSubgraph,
    convex_hull,
    dirichlet_harmonic,
    laplacian,
    restrict_kernel,
    riesz_decompose,
)
from .ultrametric import (
    GAUSS,
    INF,
    INFINITY,
    BerkPoint,
    PrimeContext,
    diameter_log,
    format_point,
    hsia_kernel_log,
    parse_point,
    spherical_kernel_log,
    type_i,
    type_ii,
)

__version__ = "0.1.0"
