"""Certified checks of spectral bounds for graphs of bounded diameter.

Eigenvalue enclosures come from exact eigenvalue counting, so every
``Holds-certified`` or ``Fails-certified`` verdict is a proof rather than a
floating-point estimate.
"""

from .bounds import (BoundVerdict, HypothesisFailure, TolerancePolicy, Verdict,
                     check_diameter_power, check_eigenvector_ratio, check_nonbipartite_gap,
                     check_regular_variants, check_sachs, check_subgraph_gap, check_theorem4,
                     edge_deletion_distance_lemma, min_bipartization, sign_cut_subgraph)
from .constructions import build_theorem2_construction, build_theorem3_construction
from .eig import (SpectralOracle, SpectralSummary, Undecided, eigenvalue_count_below,
                  eigenvector_estimate, extreme_eigenvalues, perron_vector_estimate,
                  rayleigh_quotient)
from .graph import Graph, GraphError, build_graph, distances, enumerate_connected
from .interval import Interval

__all__ = [
    "BoundVerdict", "Graph", "GraphError", "HypothesisFailure", "Interval", "SpectralOracle",
    "SpectralSummary", "TolerancePolicy", "Undecided", "Verdict", "build_graph",
    "build_theorem2_construction", "build_theorem3_construction", "check_diameter_power",
    "check_eigenvector_ratio", "check_nonbipartite_gap", "check_regular_variants",
    "check_sachs", "check_subgraph_gap", "check_theorem4", "distances",
    "edge_deletion_distance_lemma", "eigenvalue_count_below", "eigenvector_estimate",
    "enumerate_connected", "extreme_eigenvalues", "min_bipartization",
    "perron_vector_estimate", "rayleigh_quotient", "sign_cut_subgraph",
]
