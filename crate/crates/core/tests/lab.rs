//! Covers, girth and the experiment runners against direct computations.

use nervelab::lab::{elek_experiment, essential_girth, mayer_vietoris_check, voltage_cover, MultiGraph, VoltageGraph};
use nervelab::simplicial::{betti_numbers, generators};
use proptest::prelude::*;
use std::collections::VecDeque;

/// Shortest cycle as the least `1 + dist(u, v)` in the graph with edge `(u, v)` removed.
fn girth_oracle(g: &MultiGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (skip, &(u, v)) in g.edges.iter().enumerate() {
        if u == v {
            return Some(1);
        }
        let mut dist = vec![usize::MAX; g.vertex_count];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for (k, &(a, b)) in g.edges.iter().enumerate() {
                if k == skip {
                    continue;
                }
                let y = if a == x { b } else if b == x { a } else { continue };
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[v] != usize::MAX {
            best = Some(best.map_or(dist[v] + 1, |b| b.min(dist[v] + 1)));
        }
    }
    best
}

fn components(g: &MultiGraph) -> usize {
    let mut parent: Vec<usize> = (0..g.vertex_count).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut count = g.vertex_count;
    for &(a, b) in &g.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        p.swap(i, (s >> 33) as usize % (i + 1));
    }
    p
}

fn voltage_graph() -> impl Strategy<Value = VoltageGraph> {
    (1usize..5, 1usize..6).prop_flat_map(|(v, n)| {
        prop::collection::vec((0..v, 0..v, any::<u64>()), 0..7).prop_map(move |edges| {
            let edges = edges.into_iter().map(|(a, b, s)| (a, b, shuffled(n, s))).collect();
            VoltageGraph::new(v, n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn girth_matches_edge_deletion(vg in voltage_graph()) {
        let g = voltage_cover(&vg);
        prop_assert_eq!(essential_girth(&g), girth_oracle(&g));
    }

    #[test]
    fn covers_multiply_counts(vg in voltage_graph()) {
        let (base, cover) = (vg.base(), voltage_cover(&vg));
        prop_assert_eq!(cover.vertex_count, vg.degree * base.vertex_count);
        prop_assert_eq!(cover.edges.len(), vg.degree * base.edges.len());
        let degree = |g: &MultiGraph, x: usize| g.edges.iter().map(|&(a, b)| (a == x) as usize + (b == x) as usize).sum::<usize>();
        for x in 0..cover.vertex_count {
            prop_assert_eq!(degree(&cover, x), degree(&base, x / vg.degree));
        }
        // first Betti number of a graph is E - V + components
        let b = betti_numbers(&cover.subdivided(), 1).unwrap();
        prop_assert_eq!(b[0], components(&cover));
        prop_assert_eq!(b[1] + cover.vertex_count, cover.edges.len() + components(&cover));
        prop_assert_eq!(cover.component_count(), components(&cover));
    }
}

#[test]
fn cycle_girth_grows_with_the_cover() {
    for n in 1..=12 {
        let g = voltage_cover(&VoltageGraph::cyclic_wedge(1, n).unwrap());
        assert_eq!(essential_girth(&g), Some(n));
    }
    let tree = MultiGraph::new(4, vec![(0, 1), (1, 2), (1, 3)]).unwrap();
    assert_eq!(essential_girth(&tree), None);
}

#[test]
fn mayer_vietoris_on_torus_halves() {
    let k = generators::triangulated_torus(6);
    // two overlapping bands of rows cover every triangle
    let band = |rows: std::ops::Range<usize>| rows.flat_map(|i| (0..6).map(move |j| (i % 6) * 6 + j)).collect::<Vec<_>>();
    let (u, v) = (band(0..4), band(3..7));
    for d in 0..=2 {
        let mv = mayer_vietoris_check(&k, &u, &v, d).unwrap();
        assert!(mv.holds, "degree {d}: {mv:?}");
    }
    assert!(mayer_vietoris_check(&k, &band(0..3), &band(3..6), 1).is_err());
}

#[test]
fn elek_rows_on_tori() {
    let fam: Vec<_> = (6..=9).map(generators::triangulated_torus).collect();
    let rep = elek_experiment(&fam, 1, &[1, 2]).unwrap();
    assert_eq!(rep.rows.len(), 4);
    for (row, n) in rep.rows.iter().zip(6i64..) {
        assert_eq!(row[3].exact(), Some(2.into()));
        assert_eq!(row[4].exact(), Some(nervelab::numeric::Rational::new(2, n * n)));
        assert_eq!(row[2].exact(), Some(6.into()));
    }
}
