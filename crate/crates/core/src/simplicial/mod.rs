//! Simplicial complexes, exact homology, rooted balls and local profiles.

pub(crate) mod canon;
mod complex;
pub mod generators;
mod glue;
mod homology;
mod profile;
mod rooted;

pub use complex::{vertex_set, SimplicialComplex, Vertex, DEFAULT_MAX_DIM};
pub use glue::{glue_weighted, WeightedFamily};
pub use homology::{
    alternating_betti_sum, betti_numbers, boundary_columns, boundary_rank, euler_characteristic, rank_of_columns,
};
pub use profile::{local_profile, profile_distance, Profile};
pub use rooted::{all_balls, canonical_code, closed_ball, root_isomorphic, RootedComplex};
