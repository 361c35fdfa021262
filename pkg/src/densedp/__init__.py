"""Differentially private densest subgraph approximation."""

from .densest import (
    PrivacyBudget,
    PrivateDensityReport,
    dp_densest_linear,
    dp_densest_quasilinear,
    release_density,
)
from .graph import (
    DensityReport,
    Graph,
    density,
    density_fraction,
    from_edges,
    induced_edge_count,
    parse_edge_list,
    read_edge_list,
)
from .noise import NOISELESS, geometric_mechanism, sample_crossing_time, sample_geom
from .oracles import charikar_peel, exact_densest_bruteforce, randomized_response_densest
from .prefix_sum import PrefixSumMechanism

__version__ = "0.1.0"
