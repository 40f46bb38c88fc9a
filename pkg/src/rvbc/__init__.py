"""Betweenness centrality of selected vertices in directed graphs.

Only sources that can reach a vertex contribute to its betweenness, so the
exact and sampled estimators first collect those sources by a traversal of
the reverse graph and then work on them alone.
"""

from .dependency import (
    DependencyVector, accumulate, betweenness_all, dependency_on_target, source_dependency,
)
from .estimators import (
    BcEstimate, SamplingPlan, abcd, bcd, ebcd, empirical_error, hoeffding_bound,
    required_samples, uniform_source_baseline,
)
from .graph import (
    DirectedGraph, EdgeListSource, GraphFormatError, UnknownVertexError, load_edge_list,
    load_edge_text, out_degree, reverse_view, write_edge_list,
)
from .reachability import ReachSet, compute_rv, rv_ratio
from .spd import ShortestPathDag, build_spd, build_spd_unweighted, build_spd_weighted

__version__ = "0.1.0"
