//! An exact, desk-scale workbench for consensus rankings.
//!
//! The crate computes Kemeny, Slater, and Borda consensuses by exhaustive
//! and subset-DP methods, decides the associated recognition problems
//! (consensus membership, minimum feedback arc sets, minimum vertex covers,
//! generalized node deletion), decides coalition-manipulation and
//! election-control questions, and builds the classical gadget
//! constructions linking those problems, together with a seeded harness
//! that checks each construction empirically on random instances.
//!
//! Everything is exact integer arithmetic; nothing is sampled or
//! approximated except where a function explicitly takes a seed. All
//! enumeration orders are deterministic (lexicographic over canonical
//! sorted forms), so equal inputs give byte-equal outputs.

pub mod cli;
mod error;
pub mod formats;
mod graph;
mod limits;
pub mod logic;
mod model;
mod ordering;
pub mod recognition;
pub mod reductions;
pub mod sampling;
pub mod solvers;
pub mod strategic;

pub use error::{Error, Result};
pub use graph::{Digraph, UndirectedGraph};
pub use limits::Limits;
pub use model::{
    distance_to_election, kendall_tau, majority_graph, pairwise_tally, weighted_majority_graph,
    Candidate, Election, PairwiseTally, Ranking, VoteGroup, WeakOrder, WeightedMajorityGraph,
};
