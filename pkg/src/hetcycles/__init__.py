"""Heteroclinic cycles in network dynamics on directed hypergraphs.

Decide whether prescribed heteroclinic cycles can be realized by
coupled dynamics on a given hypergraph, construct explicit coupling
functions when they can, name the structural obstruction when they
cannot, and verify the resulting dynamics numerically.
"""

from .coupling import (CouplingScheme, SlotPolynomial, SymmetricPolynomial,
                       internal_poly, odd_even_symmetry_check, random_generic_scheme)
from .hypergraph import (Hyperedge, Hypergraph, InputProfile, edge,
                         enumerate_hyperedges, input_profile_3uniform, quotient_restrict)
from .synchrony import (Partition, SubspaceCensus, full_sync_balance, is_balanced,
                        local_obstruction_field, robust_subspace_census, sync_linearization)
from .system import NetworkSystem, PolyVectorField, restrict, restrict_zero_section
from .gh_realizer import (AlphaInterval, GHParams, RealizationResult, check_gh_conditions,
                          construct_config_hypergraph, equivariance_check, gh_equilibria,
                          gh_reference_field, realize_gh, uniform3_admissible_configs,
                          uniform3_alpha_interval, uniform3_sweep)
from .simulator import (Itinerary, Trajectory, dwell_growth, extract_itinerary,
                        integrate, refine_equilibrium, saddle_ratio_prediction)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
