//! Exact 3-list colouring of permutation graphs.
//!
//! The pipeline layers the graph by breadth-first search from a chosen
//! root, assigns a pair of colours to every layer, prunes the possible pairs
//! on each layer boundary to a fixpoint, and then colours the vertices with
//! a greedy sweep that is guaranteed to succeed once the layer pairs have
//! been repaired.

pub mod allowable;
pub mod assignment;
pub mod colour;
pub mod engine;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod multichain;
pub mod oracle;
pub mod solver;

pub use allowable::{
    build_allowable_array, fixed_pass, forces_quasi_bad, generate_allowable_array, has_empty_entry, init_full_array,
    AllowableArray, ArrayBuild, Removal, RemovalReason,
};
pub use assignment::{
    adjustable_layer, check_quasi_bad_chain, collect_quasi_bad_chains, eliminate_all_chains,
    eliminate_all_chains_traced, extract_assignment, find_quasi_bad_chain, fix_quasi_bad_chain,
    highest_quasi_bad_chains, propagate_colour_change, repair_candidates, ChainDefect, Direction, QuasiBadChain,
    Repair,
};
pub use colour::{AllowablePair, Colour, ColourPair, ColourSet, ListMapping, PairSet};
pub use engine::{
    almost_adjacent, compute_quasi_precolouring, conservative_colouring, ColourAssignment, ConservativeRun, Failure,
    QuasiConflict, QuasiPrecolouring,
};
pub use error::{Error, Result};
pub use format::{parse_colouring, parse_instance, write_colouring, write_dot, write_instance, write_verdict};
pub use gen::{gen_instance, random_obeying_assignment, GenConfig};
pub use graph::{
    bipartite_components, graph_from_permutation, validate_proper_list_colouring, BipartiteComponent, Colouring, Graph,
    Permutation, Side, VertexId,
};
pub use multichain::{
    bfs_layers, build_multichain_ordering, check_orientation_lemmas, choose_root, is_multichain,
    max_neighbourhood_vertex, multichain_violation, ChainViolation, Layering, MultiChainOrdering, Toward,
};
pub use oracle::{oracle_boundary_pairs, oracle_enumerate, oracle_solve, oracle_solve_capped};
pub use solver::{solve, solve_components, solve_with_trace, Instance, Source, Trace, Verdict, Witness};
