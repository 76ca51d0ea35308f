use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use super::rng::{mix64, uniform, TAG_MARK, TAG_POISSON};
use crate::mmspace::FiniteMMSpace;
use crate::numeric::{to_f64, Rational};

/// One Poisson draw on the atoms of a space.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonDraw {
    /// Atoms hit at least once, increasing.
    pub points: Vec<usize>,
    /// Arrival count per entry of `points`.
    pub counts: Vec<u32>,
    /// Largest mark among the arrivals at each atom.
    pub marks: Vec<f64>,
}

impl PoissonDraw {
    /// Arrivals before collapsing repeats at one atom.
    pub fn arrivals(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// Independent `Poisson(intensity * weight)` arrivals at every atom. Repeated
/// arrivals at an atom collapse to the occurrence with the largest mark.
/// `stream` separates independent draws sharing a seed.
pub fn poisson_sample(space: &FiniteMMSpace, intensity: Rational, seed: u64, stream: u64) -> PoissonDraw {
    let mut draw = PoissonDraw { points: Vec::new(), counts: Vec::new(), marks: Vec::new() };
    if intensity <= Rational::from_integer(0) {
        return draw;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed, TAG_POISSON, stream, 0));
    let rate = to_f64(&intensity);
    for p in 0..space.len() {
        let mean = rate * to_f64(&space.weight(p));
        let Ok(law) = Poisson::new(mean) else { continue };
        let count = law.sample(&mut rng) as u32;
        if count == 0 {
            continue;
        }
        let id = (stream << 32) | p as u64;
        let mark = (0..count).map(|k| uniform(seed, TAG_MARK, id, k as u64)).fold(0.0, f64::max);
        draw.points.push(p);
        draw.counts.push(count);
        draw.marks.push(mark);
    }
    draw
}
