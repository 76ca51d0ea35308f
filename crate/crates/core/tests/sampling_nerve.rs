//! Thinning, radii, witness nerves and their reductions.

use std::collections::BTreeSet;

use nervelab::mmspace::{circle_space, torus_space, FiniteMMSpace};
use nervelab::nerve::{
    link_collapse, maximal_facets, net_to_nerve, nerve_complex, nerve_from_facets, nerve_from_sets, sample_radii,
    strong_collapse, witness_sets, NerveParams,
};
use nervelab::numeric::Rational;
use nervelab::sampling::{
    forest_sample, poisson_sample, separated_covering_check, thin, Automorphism, ForestParams, PointConfig,
    ThinningParams,
};
use nervelab::simplicial::{betti_numbers, SimplicialComplex};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn params(eps: f64, seed: u64) -> ThinningParams {
    ThinningParams { eps, stages: 5, intensity: Rational::approximate_float(4.0 / eps).unwrap(), seed }
}

/// Every subset of every witness set, up to `max_dim`.
fn nerve_oracle(space: &FiniteMMSpace, config: &PointConfig, rho: &[f64], max_dim: usize) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for v in 0..config.len() as u32 {
        out.insert(vec![v]);
    }
    for w in 0..space.len() {
        let set: Vec<u32> =
            (0..config.len()).filter(|&c| space.dist(w, config.points[c]) < rho[c]).map(|c| c as u32).collect();
        for mask in 1u64..(1 << set.len()) {
            if (mask.count_ones() as usize) <= max_dim + 1 {
                out.insert((0..set.len()).filter(|&i| mask >> i & 1 == 1).map(|i| set[i]).collect());
            }
        }
    }
    out
}

fn simplex_set(k: &SimplicialComplex) -> BTreeSet<Vec<u32>> {
    (0..=k.dim().unwrap_or(0)).flat_map(|d| k.simplices(d).map(<[u32]>::to_vec).collect::<Vec<_>>()).collect()
}

#[test]
fn nerve_matches_the_definition() {
    let space = circle_space(q(20, 1), q(1, 4)).unwrap();
    for seed in 0..10 {
        let config = thin(&space, &params(1.0, seed)).unwrap();
        let radii = sample_radii(&config, 1.0, seed);
        assert!(radii.in_range());
        let all: Vec<usize> = (0..space.len()).collect();
        let k = nerve_complex(&space, &config, &radii, &all, 3);
        assert_eq!(simplex_set(&k), nerve_oracle(&space, &config, &radii.rho, 3), "seed {seed}");
        let sets = witness_sets(&space, &config, &radii, &all);
        assert_eq!(nerve_from_facets(config.len(), &sets, 3), k);
    }
}

#[test]
fn reductions_keep_betti_numbers() {
    let space = circle_space(q(40, 1), q(1, 4)).unwrap();
    for seed in 0..10 {
        let config = thin(&space, &params(1.0, seed)).unwrap();
        let radii = sample_radii(&config, 1.0, seed);
        let all: Vec<usize> = (0..space.len()).collect();
        let sets = witness_sets(&space, &config, &radii, &all);
        let n = config.len();
        let full = betti_numbers(&nerve_from_sets(n, &sets, 3), 2).unwrap();
        for core in [strong_collapse(n, &sets), link_collapse(n, &sets, 1)] {
            let k = SimplicialComplex::from_maximal(&core.facets, 3).unwrap();
            assert_eq!(betti_numbers(&k, 2).unwrap(), full, "seed {seed}");
        }
        assert_eq!(full, vec![1, 1, 0]);
    }
}

#[test]
fn pipeline_on_a_small_torus() {
    let space = torus_space(q(16, 1), q(1, 4)).unwrap();
    let mut hits = 0;
    for seed in 0..5 {
        let run = net_to_nerve(&space, &NerveParams::new(0.25, seed)).unwrap();
        assert!(run.diagnostics.separated);
        assert!(run.diagnostics.degree_bound_holds);
        assert!(run.diagnostics.core_vertices <= run.diagnostics.net_size);
        hits += (run.betti == vec![1, 2, 1]) as usize;
    }
    assert!(hits >= 4, "{hits} of 5 seeds recovered the torus");
}

#[test]
fn collapsed_and_direct_pipelines_agree_on_circles() {
    let space = circle_space(q(30, 1), q(1, 4)).unwrap();
    for seed in 0..5 {
        let run = net_to_nerve(&space, &NerveParams::new(1.0, seed)).unwrap();
        let mut direct = NerveParams::new(1.0, seed);
        direct.collapse = false;
        let full = net_to_nerve(&space, &direct).unwrap();
        assert_eq!(full.betti, run.betti, "seed {seed}");
        assert_eq!(full.complex.vertex_count(), run.diagnostics.net_size);
    }
}

#[test]
fn non_maximal_witness_sets_do_not_matter() {
    let sets = vec![vec![0, 1, 2], vec![0, 1], vec![2], vec![1, 2, 3], vec![3]];
    assert_eq!(maximal_facets(4, &sets), vec![vec![0, 1, 2], vec![1, 2, 3]]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn thinned_configurations_are_separated_and_reproducible(seed in any::<u64>(), eps in prop::sample::select(vec![0.5f64, 1.0, 2.0])) {
        let space = circle_space(q(30, 1), q(1, 4)).unwrap();
        let p = params(eps, seed);
        let config = thin(&space, &p).unwrap();
        prop_assert!(separated_covering_check(&space, &config, eps).separated);
        prop_assert!(config.marks.iter().all(|m| (0.0..=1.0).contains(m)));
        prop_assert!(config.stages.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(&config, &thin(&space, &p).unwrap());
        prop_assert_eq!(PointConfig::parse(&config.to_text(), space.len()).unwrap(), config);
    }

    #[test]
    fn poisson_draws_are_reproducible(seed in any::<u64>(), stream in 0u64..8) {
        let space = circle_space(q(10, 1), q(1, 2)).unwrap();
        let a = poisson_sample(&space, q(3, 1), seed, stream);
        prop_assert_eq!(&a.points, &poisson_sample(&space, q(3, 1), seed, stream).points);
        prop_assert!(a.points.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn forests_are_acyclic(seed in any::<u64>(), p in 1u64..9) {
        let f = forest_sample(&Automorphism::identity(2), &ForestParams { word_cutoff: 2, levels: (0, 6), p, seed }).unwrap();
        prop_assert!(f.is_acyclic());
        prop_assert!(f.offset < p);
    }
}
