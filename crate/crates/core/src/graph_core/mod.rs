//! Graph-state machinery: lattices and stabilizer generators, the σ_z-pattern
//! noise calculus, two-qubit reductions and the resulting lifetime bounds.

mod graph;
mod pair;
mod zpattern;

pub use graph::{correlation_operator, make_lattice, Graph, Lattice};
pub use pair::{
    convolve_restricted, degree_bound, disjoint_pair_coefficient, pair_entangled, pair_inputs, pair_threshold,
    reduced_pair_state, reduced_pair_state_from_maps, separability_bound, PairCoefficients, PAIR_TOL,
};
pub use zpattern::{
    channel_to_zmap, depolarizing_zmap, global_depolarizing_zmap, pauli_to_zpattern, GraphBasisIndex, ZPattern,
    ZPatternMap,
};
