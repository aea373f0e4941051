"""Distance-preserving minors of weighted graphs with terminals."""
from .graph import (APPROX, EXACT, ContractEdge, DeleteEdge, DeleteVertex, Graph,
                    GraphError, MinorOpError, Witness, WitnessError, apply_minor_op,
                    apply_ops, build_graph, replay_witness, union_graphs)
from .paths import PathResult, apsp, canonical_shortest_path, shortest_path_tree
from .naive import (ReductionResult, contract_degree2, reduce_naive,
                    restrict_to_shortest_paths)
from .treedec import (DecompositionError, SeparatorTriple, TreeDecomposition,
                      balanced_separator, heuristic_tree_decomposition, validate_td)
from .twreduce import RecursionStats, check_invariants, reduce_tw
from .search import SearchBudget, minimize_exact
from .verify import (size_bound_report, verify_distance_preserving, verify_domination,
                     verify_reduction, verify_witness_replay)

__version__ = "0.1.0"
