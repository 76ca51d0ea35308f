use crate::sampling::rng::{uniform, TAG_RADIUS};
use crate::sampling::PointConfig;

/// Radius per configuration point, independent uniform on `[5 eps, 6 eps]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiiAssignment {
    pub eps: f64,
    /// `rho[i]` belongs to `config.points[i]`.
    pub rho: Vec<f64>,
}

impl RadiiAssignment {
    pub fn in_range(&self) -> bool {
        self.rho.iter().all(|&r| (5.0 * self.eps..=6.0 * self.eps).contains(&r))
    }

    pub fn max(&self) -> f64 {
        self.rho.iter().copied().fold(0.0, f64::max)
    }
}

/// Each radius depends only on the seed and the space index of its point.
pub fn sample_radii(config: &PointConfig, eps: f64, seed: u64) -> RadiiAssignment {
    let rho = config.points.iter().map(|&p| eps * (5.0 + uniform(seed, TAG_RADIUS, p as u64, 0))).collect();
    RadiiAssignment { eps, rho }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radii_in_range_and_reproducible() {
        let config = PointConfig::new((0..500).collect(), vec![0.5; 500], vec![1; 500], 500).unwrap();
        let a = sample_radii(&config, 0.25, 3);
        assert!(a.in_range());
        assert_eq!(a, sample_radii(&config, 0.25, 3));
        assert_ne!(a, sample_radii(&config, 0.25, 4));
    }
}
