//! Small fixture complexes used by tests, experiments and the CLI.

use super::complex::{SimplicialComplex, Vertex};

fn build(simplices: Vec<Vec<Vertex>>, max_dim: usize) -> SimplicialComplex {
    SimplicialComplex::from_maximal(&simplices, max_dim).expect("generator output is well formed")
}

/// Boundary of a triangle.
pub fn hollow_triangle() -> SimplicialComplex {
    cycle(3)
}

/// Cycle graph `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let n32 = n as Vertex;
    build((0..n32).map(|i| vec![i, (i + 1) % n32]).collect(), 2)
}

/// Path graph on `n` vertices, `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> SimplicialComplex {
    let n32 = n as Vertex;
    if n == 1 {
        return build(vec![vec![0]], 2);
    }
    build((0..n32.saturating_sub(1)).map(|i| vec![i, i + 1]).collect(), 2)
}

/// Star `K_{1,k}` with centre 0.
pub fn star(k: usize) -> SimplicialComplex {
    build((1..=k as Vertex).map(|i| vec![0, i]).collect(), 2)
}

/// Boundary of the tetrahedron, a 2-sphere.
pub fn tetrahedron_boundary() -> SimplicialComplex {
    build(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 2)
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7u32 {
        tris.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        tris.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    build(tris, 2)
}

/// `n x n` grid on the torus, each square split along its main diagonal.
pub fn triangulated_torus(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "torus grid needs n >= 3");
    let id = |i: usize, j: usize| ((i % n) * n + (j % n)) as Vertex;
    let mut tris = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            tris.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            tris.push(vec![id(i, j), id(i, j + 1), id(i + 1, j + 1)]);
        }
    }
    build(tris, 2)
}

/// `n x n` grid of unit squares on the torus (1-dimensional).
pub fn quadrangulated_torus(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "torus grid needs n >= 3");
    let id = |i: usize, j: usize| ((i % n) * n + (j % n)) as Vertex;
    let mut edges = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            edges.push(vec![id(i, j), id(i + 1, j)]);
            edges.push(vec![id(i, j), id(i, j + 1)]);
        }
    }
    build(edges, 2)
}

/// `r` cycles of length `len >= 3` sharing vertex 0.
pub fn wedge_of_cycles(r: usize, len: usize) -> SimplicialComplex {
    assert!(len >= 3);
    let mut edges = Vec::new();
    let mut next: Vertex = 1;
    for _ in 0..r {
        let mut prev: Vertex = 0;
        for _ in 0..len - 1 {
            edges.push(vec![prev, next]);
            prev = next;
            next += 1;
        }
        edges.push(vec![prev, 0]);
    }
    if edges.is_empty() {
        return build(vec![vec![0]], 2);
    }
    build(edges, 2)
}
