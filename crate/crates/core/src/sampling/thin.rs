//! Staged thinning of Poisson candidates into an `eps`-separated net.
//!
//! Stage `j` draws fresh marked candidates. A candidate `s` is removed when
//! some earlier survivor `y`, or some stage-`j` candidate `t` with a larger
//! `(mark, id)`, is close enough that `phi(dist) > 0` and `phi(dist) >= X`,
//! where `X` is a symmetric uniform attached to the unordered pair.
//! Survivors of stage `j` are appended and never revisited.

use std::fmt::Write as _;

use super::poisson::poisson_sample;
use super::rng::{uniform, TAG_PAIR};
use crate::error::{Error, Result};
use crate::mmspace::{FiniteMMSpace, SpatialIndex};
use crate::numeric::Rational;

/// 1 on `[0, eps]`, 0 on `[2 eps, inf)`, linear between.
pub fn kernel_phi(t: f64, eps: f64) -> f64 {
    if t <= eps {
        1.0
    } else if t >= 2.0 * eps {
        0.0
    } else {
        2.0 - t / eps
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThinningParams {
    pub eps: f64,
    pub stages: u32,
    pub intensity: Rational,
    pub seed: u64,
}

impl ThinningParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::contract("eps must be positive"));
        }
        if self.stages == 0 {
            return Err(Error::contract("at least one stage is needed"));
        }
        if self.intensity <= Rational::from_integer(0) {
            return Err(Error::contract("intensity must be positive"));
        }
        Ok(())
    }
}

/// Marked points of a space, each tagged with the stage that produced it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointConfig {
    pub points: Vec<usize>,
    pub marks: Vec<f64>,
    pub stages: Vec<u32>,
}

impl PointConfig {
    pub fn new(points: Vec<usize>, marks: Vec<f64>, stages: Vec<u32>, space_len: usize) -> Result<Self> {
        if marks.len() != points.len() || stages.len() != points.len() {
            return Err(Error::malformed("points, marks and stages must have equal length"));
        }
        let mut seen = vec![false; space_len];
        for &p in &points {
            if p >= space_len {
                return Err(Error::malformed(format!("point {p} out of range")));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::malformed(format!("point {p} appears twice")));
            }
        }
        if marks.iter().any(|m| !(0.0..=1.0).contains(m)) {
            return Err(Error::malformed("marks must lie in [0, 1]"));
        }
        if stages.contains(&0) {
            return Err(Error::malformed("stages are numbered from 1"));
        }
        Ok(PointConfig { points, marks, stages })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One `point mark stage` line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            let _ = writeln!(out, "{} {:?} {}", self.points[i], self.marks[i], self.stages[i]);
        }
        out
    }

    pub fn parse(text: &str, space_len: usize) -> Result<Self> {
        let (mut points, mut marks, mut stages) = (Vec::new(), Vec::new(), Vec::new());
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::parse(i + 1, "expected `point mark stage`");
            if fields.len() != 3 {
                return Err(bad());
            }
            points.push(fields[0].parse().map_err(|_| bad())?);
            marks.push(fields[1].parse().map_err(|_| bad())?);
            stages.push(fields[2].parse().map_err(|_| bad())?);
        }
        PointConfig::new(points, marks, stages, space_len)
    }
}

fn pair_id(stage: u32, point: usize) -> u64 {
    ((stage as u64) << 32) | point as u64
}

/// The symmetric pair variable `X(s, t)` of two staged candidates.
pub fn pair_uniform(seed: u64, a: (u32, usize), b: (u32, usize)) -> f64 {
    let (x, y) = (pair_id(a.0, a.1), pair_id(b.0, b.1));
    uniform(seed, TAG_PAIR, x.min(y), x.max(y))
}

fn kills(phi: f64, x: f64) -> bool {
    phi > 0.0 && phi >= x
}

pub fn thin(space: &FiniteMMSpace, params: &ThinningParams) -> Result<PointConfig> {
    params.validate()?;
    let eps = params.eps;
    let reach = 2.0 * eps;
    let mut out = PointConfig::default();
    for stage in 1..=params.stages {
        let draw = poisson_sample(space, params.intensity, params.seed, stage as u64);
        if draw.points.is_empty() {
            continue;
        }
        let prior = SpatialIndex::over(space, out.points.clone(), reach);
        let peers = SpatialIndex::over(space, draw.points.clone(), reach);
        let mut kept = Vec::new();
        for (c, &s) in draw.points.iter().enumerate() {
            let me = (stage, s);
            let by_prior = prior.within(s, reach, false).into_iter().any(|q| {
                let y = out.points[q];
                kills(kernel_phi(space.dist(s, y), eps), pair_uniform(params.seed, me, (out.stages[q], y)))
            });
            if by_prior {
                continue;
            }
            let by_peer = peers.within(s, reach, false).into_iter().any(|q| {
                if q == c {
                    return false;
                }
                let t = draw.points[q];
                let higher = (draw.marks[q], t) > (draw.marks[c], s);
                higher && kills(kernel_phi(space.dist(s, t), eps), pair_uniform(params.seed, me, (stage, t)))
            });
            if !by_peer {
                kept.push(c);
            }
        }
        for c in kept {
            out.points.push(draw.points[c]);
            out.marks.push(draw.marks[c]);
            out.stages.push(stage);
        }
    }
    Ok(out)
}

/// Separation and covering of a configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverCheck {
    /// All pairwise distances exceed `eps`.
    pub separated: bool,
    /// Largest distance from a space point to the configuration; infinite when empty.
    pub covering_radius: f64,
}

pub fn separated_covering_check(space: &FiniteMMSpace, config: &PointConfig, eps: f64) -> CoverCheck {
    if config.is_empty() {
        return CoverCheck { separated: true, covering_radius: f64::INFINITY };
    }
    let index = SpatialIndex::over(space, config.points.clone(), eps.max(space.resolution()));
    let separated = config.points.iter().all(|&p| index.within(p, eps, true).len() == 1);
    let start = eps.max(space.resolution());
    let covering_radius = (0..space.len())
        .map(|x| index.nearest(x, start).map_or(f64::INFINITY, |(_, d)| d))
        .fold(0.0, f64::max);
    CoverCheck { separated, covering_radius }
}
