"""Combinatorial rigidity in the plane: rigidity matroid, global rigidity and weak global linkedness."""

__version__ = "0.1.0"

from .errors import GraphError, ParseError, PreconditionError, RigidlinkError
from .graph import (
    Graph,
    clique_graph,
    clique_sum,
    complete_bipartite,
    complete_graph,
    components,
    con_graph,
    contract_edge,
    contract_set,
    cycle_graph,
    induced,
    neighbors_of_set,
    parse_graph,
    path_graph,
    read_graph,
    serialize_graph,
    wheel_graph,
    write_graph,
)
from .connectivity import (
    SeparatingPairOutcome,
    SeparatorPair,
    ThreeBlock,
    augmented_graph,
    cleave,
    is_k_connected,
    kappa_pair,
    three_block,
    two_separators,
)
from .sparsity import (
    Circuit,
    MatroidSummary,
    fundamental_circuit,
    is_linked2,
    is_redundantly_rigid2,
    is_rigid2,
    matroid_summary,
    maximal_rigid_subgraphs,
    r2_bridges,
    r2_components,
    rank2,
)
from .linkedness import (
    GlobalRigidityVerdict,
    PairClassification,
    Reason,
    Verdict,
    audit_minimally_globally_rigid,
    classify_all_pairs,
    classify_pair,
    is_globally_rigid2,
    sufficient_condition_wgl,
    weakly_linked_pairs,
)
from .oracle import RankOracleReport, Realization, equivalence_sampler, generic_rank, rigidity_matrix
