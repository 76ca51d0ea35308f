use num_traits::Zero;

use super::collapse::{link_collapse, maximal_facets};
use super::radii::{sample_radii, RadiiAssignment};
use super::witness::{nerve_adjacency, nerve_from_sets, witness_sets};
use crate::error::{Error, Result};
use crate::mmspace::{FiniteMMSpace, SpatialIndex};
use crate::numeric::Rational;
use crate::sampling::{separated_covering_check, thin, PointConfig, ThinningParams};
use crate::simplicial::{betti_numbers, SimplicialComplex, DEFAULT_MAX_DIM};

/// Recursion depth used to certify contractible links during reduction.
const LINK_DEPTH: usize = 1;

#[derive(Clone, Debug)]
pub struct NerveParams {
    pub eps: f64,
    pub intensity: Rational,
    pub stages: u32,
    pub seed: u64,
    pub max_dim: usize,
    /// Witness points; all points of the space when `None`.
    pub witnesses: Option<Vec<usize>>,
    /// Delete vertices with contractible links before building simplices;
    /// the result is homotopy equivalent to the nerve but much smaller.
    pub collapse: bool,
}

impl NerveParams {
    /// Defaults: intensity `4 / eps`, five stages, dimension cap 3, all witnesses, collapsed.
    pub fn new(eps: f64, seed: u64) -> Self {
        let intensity = Rational::approximate_float(4.0 / eps).unwrap_or_else(|| Rational::from_integer(4));
        NerveParams { eps, intensity, stages: 5, seed, max_dim: DEFAULT_MAX_DIM, witnesses: None, collapse: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NerveDiagnostics {
    pub net_size: usize,
    pub separated: bool,
    pub covering_radius: f64,
    /// Largest vertex degree of the full nerve.
    pub max_degree: usize,
    /// Least volume of a closed `eps/2` ball about a net point.
    pub v0: Rational,
    /// Largest volume of an open `20 eps` ball about a net point.
    pub v1: Rational,
    /// `max_degree <= v1 / v0`.
    pub degree_bound_holds: bool,
    /// Distinct maximal witness sets of the full nerve.
    pub facets: usize,
    /// Vertices of the complex handed to homology.
    pub core_vertices: usize,
}

#[derive(Clone, Debug)]
pub struct NerveRun {
    pub config: PointConfig,
    pub radii: RadiiAssignment,
    /// The nerve (or its reduced core), truncated at `max_dim`.
    pub complex: SimplicialComplex,
    pub betti: Vec<usize>,
    pub diagnostics: NerveDiagnostics,
}

/// Thin to a separated net, draw radii, build the nerve of the ball cover and
/// compute its Betti numbers below the dimension cap.
pub fn net_to_nerve(space: &FiniteMMSpace, params: &NerveParams) -> Result<NerveRun> {
    if params.max_dim == 0 {
        return Err(Error::contract("nerve dimension cap must be at least 1"));
    }
    let eps = params.eps;
    let thinning = ThinningParams { eps, stages: params.stages, intensity: params.intensity, seed: params.seed };
    let config = thin(space, &thinning)?;
    let radii = sample_radii(&config, eps, params.seed);
    let all: Vec<usize>;
    let witnesses: &[usize] = match &params.witnesses {
        Some(w) => {
            if let Some(&bad) = w.iter().find(|&&x| x >= space.len()) {
                return Err(Error::contract(format!("witness {bad} out of range")));
            }
            w
        }
        None => {
            all = (0..space.len()).collect();
            &all
        }
    };
    let sets = witness_sets(space, &config, &radii, witnesses);
    let n = config.len();
    let max_degree = nerve_adjacency(n, &sets).iter().map(Vec::len).max().unwrap_or(0);
    let check = separated_covering_check(space, &config, eps);
    let (v0, v1) = ball_volumes(space, &config, eps);
    let degree_bound_holds = v0.is_zero() || Rational::from_integer(max_degree as i64) <= v1 / v0;

    let (complex, facets, core_vertices) = if params.collapse {
        let core = link_collapse(n, &sets, LINK_DEPTH);
        let k = core.kept.len();
        let facet_count = maximal_facets(n, &sets).len();
        (SimplicialComplex::close(k, core.facets, params.max_dim), facet_count, k)
    } else {
        let facet_count = maximal_facets(n, &sets).len();
        (nerve_from_sets(n, &sets, params.max_dim), facet_count, n)
    };
    let top = (params.max_dim - 1).min(2);
    let betti = betti_numbers(&complex, top)?;
    let diagnostics = NerveDiagnostics {
        net_size: n,
        separated: check.separated,
        covering_radius: check.covering_radius,
        max_degree,
        v0,
        v1,
        degree_bound_holds,
        facets,
        core_vertices,
    };
    Ok(NerveRun { config, radii, complex, betti, diagnostics })
}

fn ball_volumes(space: &FiniteMMSpace, config: &PointConfig, eps: f64) -> (Rational, Rational) {
    if config.is_empty() {
        return (Rational::zero(), Rational::zero());
    }
    let index = SpatialIndex::over(space, (0..space.len()).collect(), 2.0 * eps);
    let mut v0: Option<Rational> = None;
    let mut v1 = Rational::zero();
    let mut buf = Vec::new();
    let mut volume = |s: usize, r: f64, closed: bool| {
        buf.clear();
        index.for_each_within(s, r, closed, |p| buf.push(p));
        space.volume_of(buf.iter().copied())
    };
    for &s in &config.points {
        let small = volume(s, eps / 2.0, true);
        let big = volume(s, 20.0 * eps, false);
        v0 = Some(v0.map_or(small, |v| v.min(small)));
        v1 = v1.max(big);
    }
    (v0.unwrap_or_else(Rational::zero), v1)
}
