"""Graphical calculus on ribbon and ordinary graphs with exact Feynman expansions."""

from .algebra import (
    Metric, SymAlgebra, Tensor, casimir, check_invariance, gaussian_moment, lower_tensor, metric_inverse,
    rotate_tensor,
)
from .canonical import automorphism_count, canonical_form
from .enumerate import (
    Pairing, ValenceProfile, alpha_coefficient, graphs_up_to_order, graphs_with_profile, pairings,
)
from .errors import (
    CompositionError, ConfigurationError, DegeneracyError, DomainError, FeynGraphError, InvariantViolation,
    ParseError,
)
from .evaluate import evaluate_closed, evaluate_open, wdvv_residual
from .expansion import (
    ExpansionRequest, avg_product, free_energy, modular_expansion, partition_function,
    partition_function_oracle, special_vertex_expectation,
)
from .graphs import (
    ORDINARY, SPECIAL, Decoration, GraphType, OrdinaryGraph, RibbonGraph, b0, compose, connected_components,
    forget_cyclic, genus, holes, modular_genus, tensor,
)
from .kontsevich import (
    KontsevichSpectrum, euler_series, hermitian_algebra, standard_model_series, z_gamma_coloring,
    z_gamma_contraction,
)
from .series import MultiSeries

__version__ = "0.1.0"
