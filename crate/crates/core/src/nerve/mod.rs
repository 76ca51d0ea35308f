//! Random radii, witness nerves of ball covers, and the net-to-nerve pipeline.

mod collapse;
mod pipeline;
mod radii;
mod witness;

pub use collapse::{link_collapse, maximal_facets, strong_collapse, Core};
pub use pipeline::{net_to_nerve, NerveDiagnostics, NerveParams, NerveRun};
pub use radii::{sample_radii, RadiiAssignment};
pub use witness::{nerve_adjacency, nerve_complex, nerve_from_facets, nerve_from_sets, witness_sets};
