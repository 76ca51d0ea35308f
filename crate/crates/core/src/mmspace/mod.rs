//! Finite metric measure spaces and the operations on them.

mod amalgam;
mod cheeger;
mod io;
mod relate;
mod space;
mod unimodular;

pub use amalgam::{amalgamate, Amalgam, AmalgamSpec, LinkTable};
pub use cheeger::{boundary_and_collar, cheeger_radius_r, haircut, CheegerMode, CheegerOptions, CheegerResult, Collar};
pub use io::{parse_space, write_space};
pub use relate::{deficiency, related_measures, related_subsets, PointedMeasurePair};
pub(crate) use space::SpatialIndex;
pub use space::{circle_space, metric_graph_space, torus_space, FiniteMMSpace, Geometry};
pub use unimodular::{doubly_pointed_code, unimodular_check, volume_law, PointedCoder};

/// A space with a distinguished point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedSpace {
    space: FiniteMMSpace,
    basepoint: usize,
}

impl PointedSpace {
    pub fn new(space: FiniteMMSpace, basepoint: usize) -> crate::Result<Self> {
        if basepoint >= space.len() {
            return Err(crate::Error::Malformed(format!("basepoint {basepoint} out of range")));
        }
        Ok(PointedSpace { space, basepoint })
    }

    pub fn space(&self) -> &FiniteMMSpace {
        &self.space
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }
}
