//! Multigraphs, permutation voltage graphs and their covers.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::simplicial::{SimplicialComplex, Vertex};

/// Undirected multigraph; loops and parallel edges are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertex_count || v >= vertex_count) {
            return Err(Error::malformed(format!("edge ({u}, {v}) leaves the vertex range")));
        }
        Ok(MultiGraph { vertex_count, edges })
    }

    /// The 1-skeleton of a complex.
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        let edges = if k.max_dim() >= 1 {
            k.simplices(1).map(|e| (e[0] as usize, e[1] as usize)).collect()
        } else {
            Vec::new()
        };
        MultiGraph { vertex_count: k.vertex_count(), edges }
    }

    /// Incident `(neighbour, edge id)` pairs; a loop is listed twice.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push((v, e));
            inc[v].push((u, e));
        }
        inc
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = self.vertex_count;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// `E - V + c`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    /// A simplicial complex with the same homotopy type: each edge is
    /// subdivided twice, so loops and parallel edges become honest cycles.
    /// Original vertices keep their ids.
    pub fn subdivided(&self) -> SimplicialComplex {
        let n = self.vertex_count;
        let mut segments: Vec<Vec<Vertex>> = (0..n as Vertex).map(|v| vec![v]).collect();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let a = (n + 2 * e) as Vertex;
            let b = a + 1;
            segments.push(vec![u as Vertex, a]);
            segments.push(vec![a, b]);
            segments.push(vec![b, v as Vertex]);
        }
        SimplicialComplex::from_maximal(&segments, 1).expect("subdivided edges are simplices")
    }
}

/// Base multigraph with a permutation of `0..degree` on every edge.
///
/// Permutations are stored 0-based; `perm[i]` is the sheet reached from sheet
/// `i` at the tail when the edge is traversed tail to head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageGraph {
    pub base_vertices: usize,
    pub degree: usize,
    pub edges: Vec<(usize, usize, Vec<usize>)>,
}

impl VoltageGraph {
    pub fn new(base_vertices: usize, degree: usize, edges: Vec<(usize, usize, Vec<usize>)>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::contract("cover degree must be positive"));
        }
        for (k, (u, v, perm)) in edges.iter().enumerate() {
            if *u >= base_vertices || *v >= base_vertices {
                return Err(Error::malformed(format!("edge {k} leaves the base vertex range")));
            }
            if perm.len() != degree {
                return Err(Error::contract(format!(
                    "edge {k} carries a permutation of size {}, cover degree is {degree}",
                    perm.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in perm {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::malformed(format!("edge {k} does not carry a permutation")));
                }
            }
        }
        Ok(VoltageGraph { base_vertices, degree, edges })
    }

    /// One vertex with `r` loops; the first loop shifts sheets cyclically,
    /// the others carry the identity.
    pub fn cyclic_wedge(r: usize, n: usize) -> Result<Self> {
        let edges = (0..r)
            .map(|j| {
                let perm = if j == 0 { (0..n).map(|i| (i + 1) % n).collect() } else { (0..n).collect() };
                (0, 0, perm)
            })
            .collect();
        VoltageGraph::new(1, n, edges)
    }

    pub fn base(&self) -> MultiGraph {
        MultiGraph { vertex_count: self.base_vertices, edges: self.edges.iter().map(|(u, v, _)| (*u, *v)).collect() }
    }
}

/// The degree-`n` cover: vertex `(u, i)` is `u * n + i`, and base edge
/// `(u, v, s)` lifts to `((u, i), (v, s(i)))` for every sheet `i`.
pub fn voltage_cover(vg: &VoltageGraph) -> MultiGraph {
    let n = vg.degree;
    let mut edges = Vec::with_capacity(vg.edges.len() * n);
    for (u, v, perm) in &vg.edges {
        for (i, &j) in perm.iter().enumerate() {
            edges.push((u * n + i, v * n + j));
        }
    }
    MultiGraph { vertex_count: vg.base_vertices * n, edges }
}

/// Length of a shortest cycle, `None` for a forest. Loops count as length 1
/// and a pair of parallel edges as length 2.
pub fn essential_girth(g: &MultiGraph) -> Option<usize> {
    let inc = g.incidence();
    let mut best = usize::MAX;
    if g.edges.iter().any(|&(u, v)| u == v) {
        return Some(1);
    }
    let mut dist = vec![usize::MAX; g.vertex_count];
    let mut via = vec![usize::MAX; g.vertex_count];
    for root in 0..g.vertex_count {
        dist.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &(y, e) in &inc[x] {
                if e == via[x] && x != root {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    via[y] = e;
                    queue.push_back(y);
                } else {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{betti_numbers, generators};

    #[test]
    fn trivial_cover_is_the_base() {
        let vg = VoltageGraph::new(2, 1, vec![(0, 1, vec![0]), (1, 1, vec![0])]).unwrap();
        assert_eq!(voltage_cover(&vg), vg.base());
    }

    #[test]
    fn wedge_of_two_loops_ten_sheets() {
        let g = voltage_cover(&VoltageGraph::cyclic_wedge(2, 10).unwrap());
        assert_eq!((g.vertex_count, g.edges.len()), (10, 20));
        assert!(g.is_connected());
        assert_eq!(g.cycle_rank(), 11);
        assert_eq!(betti_numbers(&g.subdivided(), 1).unwrap(), vec![1, 11]);
    }

    #[test]
    fn identity_voltages_give_disjoint_copies() {
        let id = |n: usize| (0..n).collect::<Vec<_>>();
        let vg = VoltageGraph::new(3, 4, vec![(0, 1, id(4)), (1, 2, id(4)), (2, 0, id(4))]).unwrap();
        let g = voltage_cover(&vg);
        assert_eq!(g.component_count(), 4);
        assert_eq!(g.cycle_rank(), 4);
    }

    #[test]
    fn bad_permutations_are_rejected() {
        assert!(VoltageGraph::new(1, 3, vec![(0, 0, vec![0, 1])]).is_err());
        assert!(VoltageGraph::new(1, 3, vec![(0, 0, vec![0, 1, 1])]).is_err());
    }

    #[test]
    fn girths() {
        assert_eq!(essential_girth(&MultiGraph::from_complex(&generators::cycle(6))), Some(6));
        assert_eq!(essential_girth(&MultiGraph::from_complex(&generators::path(7))), None);
        assert_eq!(essential_girth(&MultiGraph::from_complex(&generators::quadrangulated_torus(5))), Some(4));
        assert_eq!(essential_girth(&MultiGraph::new(2, vec![(0, 1), (1, 0)]).unwrap()), Some(2));
        assert_eq!(essential_girth(&MultiGraph::new(1, vec![(0, 0)]).unwrap()), Some(1));
    }
}
