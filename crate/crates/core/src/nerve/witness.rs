//! Nerves of open-ball covers, tested at witness points: a set of centres
//! spans a simplex when one witness lies strictly inside all of their balls.

use super::radii::RadiiAssignment;
use crate::mmspace::{FiniteMMSpace, SpatialIndex};
use crate::sampling::PointConfig;
use crate::simplicial::{SimplicialComplex, Vertex};

/// For each witness, the sorted configuration indices whose open ball contains it.
pub fn witness_sets(space: &FiniteMMSpace, config: &PointConfig, radii: &RadiiAssignment, witnesses: &[usize]) -> Vec<Vec<Vertex>> {
    let reach = radii.max();
    let index = SpatialIndex::over(space, config.points.clone(), reach.max(space.resolution()));
    witnesses
        .iter()
        .map(|&w| {
            index
                .within(w, reach, false)
                .into_iter()
                .filter(|&c| space.dist(w, config.points[c]) < radii.rho[c])
                .map(|c| c as Vertex)
                .collect()
        })
        .collect()
}

/// Per-vertex sorted lists of witness positions.
fn witness_lists(vertex_count: usize, sets: &[Vec<Vertex>]) -> Vec<Vec<u32>> {
    let mut lists = vec![Vec::new(); vertex_count];
    for (w, set) in sets.iter().enumerate() {
        for &v in set {
            lists[v as usize].push(w as u32);
        }
    }
    lists
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Sorted neighbour lists of the nerve's 1-skeleton.
pub fn nerve_adjacency(vertex_count: usize, sets: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let mut adj = vec![Vec::new(); vertex_count];
    for set in sets {
        for &a in set {
            adj[a as usize].extend(set.iter().copied().filter(|&b| b != a));
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Nerve up to `max_dim`, one vertex per configuration point, grown clique by
/// clique from the edge graph with a witness check for every simplex.
pub fn nerve_complex(
    space: &FiniteMMSpace,
    config: &PointConfig,
    radii: &RadiiAssignment,
    witnesses: &[usize],
    max_dim: usize,
) -> SimplicialComplex {
    let n = config.len();
    let sets = witness_sets(space, config, radii, witnesses);
    nerve_from_sets(n, &sets, max_dim)
}

/// Nerve on `vertex_count` vertices given the witness sets.
pub fn nerve_from_sets(vertex_count: usize, sets: &[Vec<Vertex>], max_dim: usize) -> SimplicialComplex {
    let lists = witness_lists(vertex_count, sets);
    let adj = nerve_adjacency(vertex_count, sets);
    let mut simplices: Vec<Vec<Vertex>> = (0..vertex_count as Vertex).map(|v| vec![v]).collect();

    fn expand(
        simplex: &mut Vec<Vertex>,
        common: &[u32],
        candidates: &[Vertex],
        lists: &[Vec<u32>],
        adj: &[Vec<Vertex>],
        max_dim: usize,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if simplex.len() > max_dim {
            return;
        }
        for (k, &v) in candidates.iter().enumerate() {
            let shared = intersect(common, &lists[v as usize]);
            if shared.is_empty() {
                continue;
            }
            simplex.push(v);
            out.push(simplex.clone());
            let next: Vec<Vertex> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|u| adj[v as usize].binary_search(u).is_ok())
                .collect();
            expand(simplex, &shared, &next, lists, adj, max_dim, out);
            simplex.pop();
        }
    }

    for v in 0..vertex_count as Vertex {
        let higher: Vec<Vertex> = adj[v as usize].iter().copied().filter(|&u| u > v).collect();
        let mut simplex = vec![v];
        expand(&mut simplex, &lists[v as usize], &higher, &lists, &adj, max_dim, &mut simplices);
    }
    SimplicialComplex::close(vertex_count, simplices, max_dim)
}

/// The complex generated by the witness sets as simplices (all dimensions
/// up to `max_dim`); it equals [`nerve_from_sets`] and serves as a second route.
pub fn nerve_from_facets(vertex_count: usize, sets: &[Vec<Vertex>], max_dim: usize) -> SimplicialComplex {
    let facets: Vec<Vec<Vertex>> = sets.iter().filter(|s| !s.is_empty()).cloned().collect();
    let mut with_vertices = facets;
    with_vertices.extend((0..vertex_count as Vertex).map(|v| vec![v]));
    SimplicialComplex::close(vertex_count, with_vertices, max_dim)
}
