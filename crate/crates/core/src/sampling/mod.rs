//! Poisson sampling, staged thinning into separated nets, and random
//! forests on semidirect products of free groups with the integers.

mod forest;
mod poisson;
pub mod rng;
mod thin;

pub use forest::{
    forest_sample, invert, is_reduced, multiply, reduce, sample_with_offset, words_up_to, Automorphism, ForestParams,
    ForestSample, Letter, SemidirectElement,
};
pub use poisson::{poisson_sample, PoissonDraw};
pub use thin::{
    kernel_phi, pair_uniform, separated_covering_check, thin, CoverCheck, PointConfig, ThinningParams,
};
