//! Exact local statistics and Betti numbers for bounded-degree simplicial
//! complexes, randomized nets and nerves on finite metric measure spaces,
//! radius-r Cheeger constants, and the experiment runners built on them.
//!
//! The crate is organised bottom-up:
//!
//! * [`simplicial`]: complexes, exact rational homology, rooted balls,
//!   canonical codes, weighted gluing and local profiles.
//! * [`mmspace`]: finite metric measure spaces, their generators,
//!   `(eps, R)`-relatedness, amalgamation, Cheeger constants and the
//!   unimodularity check.
//! * [`sampling`]: Poisson sampling, staged thinning into separated nets and
//!   the random forest sampler on truncated `F_r x Z`.
//! * [`nerve`]: random radii, witness nerves and the net-to-nerve pipeline.
//! * [`lab`]: voltage covers, experiment runners, reports and the CLI.
//!
//! Everything is deterministic given its inputs and an explicit seed.

pub mod error;
pub mod lab;
pub mod mmspace;
pub mod nerve;
pub mod numeric;
pub mod sampling;
pub mod simplicial;

pub use error::{Error, Result};
pub use mmspace::FiniteMMSpace;
pub use simplicial::{Profile, RootedComplex, SimplicialComplex};
