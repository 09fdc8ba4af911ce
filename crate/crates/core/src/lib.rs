//! Permutation groups and the non-two-primes graph.
//!
//! For a finite group `G`, two elements `x`, `y` are adjacent when the order
//! of `⟨x, y⟩` has at least three distinct prime divisors. Removing isolated
//! vertices gives a graph that is always connected with diameter at most 5;
//! this crate builds the graph for concrete permutation groups and checks
//! that bound together with the distance properties behind it.
//!
//! Permutations compose left to right: `p.then(&q)` applies `p` first.

pub mod analysis;
pub mod catalog;
pub mod chain;
pub mod error;
pub mod export;
pub mod graph;
pub mod group;
pub mod group_file;
pub mod perm;
pub mod primes;
pub mod table;

pub use analysis::{
    check_fpf, check_higman, check_rdivides, fpf_sweep, is_path_on_three, normal_prime_power_subgroups, omega_set,
    prime_graph, rdivides_sweep, sigma_set, verify_graph, verify_theorem, verify_theorem_with, LemmaResult, Outcome,
    PathLabeling, PrimeGraph, SuiteTally, VerificationReport, Witness,
};
pub use chain::StabilizerChain;
pub use error::{AnalysisError, GraphError, GroupError, PermError};
pub use export::ExportFormat;
pub use graph::{
    adjacent, BuildMode, BuildOptions, BuildStats, Diameter, DiameterMode, DistanceReport, NonFGraph, DEFAULT_THRESHOLD,
};
pub use group::{two_generated_order, PermutationGroup, DEFAULT_ELEMENT_CAP};
pub use group_file::parse_group_file;
pub use perm::Permutation;
pub use primes::{prime_factors, PrimeSet};
pub use table::ElementTable;
