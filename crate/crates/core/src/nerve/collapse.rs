//! Homotopy-preserving vertex deletions on a complex presented by facets.
//!
//! A vertex `v` is dominated by `u` when every facet through `v` also
//! contains `u`; deleting a dominated vertex does not change the homotopy
//! type (a strong collapse). More generally `K` is `K - v` with a cone glued
//! along the link of `v`, so deleting `v` is harmless whenever its link is
//! contractible. [`link_collapse`] certifies contractible links by reducing
//! them, recursively, to a single vertex.

use crate::simplicial::Vertex;

/// Facets with duplicates and proper subsets of other facets removed.
pub fn maximal_facets(vertex_count: usize, facets: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let mut sorted: Vec<Vec<Vertex>> = facets.iter().filter(|f| !f.is_empty()).cloned().collect();
    for f in &mut sorted {
        f.sort_unstable();
        f.dedup();
    }
    sorted.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut kept: Vec<Vec<Vertex>> = Vec::new();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for f in sorted {
        let least = f
            .iter()
            .min_by_key(|&&v| through[v as usize].len())
            .copied()
            .expect("nonempty facet");
        let covered = through[least as usize].iter().any(|&k| is_subset(&f, &kept[k]));
        if !covered {
            for &v in &f {
                through[v as usize].push(kept.len());
            }
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// The strong-collapse core.
#[derive(Clone, Debug, PartialEq)]
pub struct Core {
    /// Surviving original vertices, increasing; new label `i` is `kept[i]`.
    pub kept: Vec<Vertex>,
    /// Maximal facets over the new labels.
    pub facets: Vec<Vec<Vertex>>,
}

pub fn strong_collapse(vertex_count: usize, facets: &[Vec<Vertex>]) -> Core {
    let mut all: Vec<Vec<Vertex>> = facets.to_vec();
    all.extend((0..vertex_count as Vertex).map(|v| vec![v]));
    let mut facets = maximal_facets(vertex_count, &all);
    let mut alive = vec![true; vertex_count];
    loop {
        let mut through: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (k, f) in facets.iter().enumerate() {
            for &v in f {
                through[v as usize].push(k);
            }
        }
        let mut changed = false;
        for v in 0..vertex_count {
            if !alive[v] || through[v].is_empty() {
                continue;
            }
            // facets may have shrunk earlier in this pass; the test stays sound
            let mut common: Vec<Vertex> = facets[through[v][0]].clone();
            for &k in &through[v][1..] {
                common.retain(|x| facets[k].binary_search(x).is_ok());
                if common.len() <= 1 {
                    break;
                }
            }
            if common.iter().any(|&u| u as usize != v) {
                for &k in &through[v] {
                    facets[k].retain(|&x| x as usize != v);
                }
                alive[v] = false;
                through[v].clear();
                changed = true;
            }
        }
        facets = maximal_facets(vertex_count, &facets);
        if !changed {
            break;
        }
    }
    let kept: Vec<Vertex> = (0..vertex_count as Vertex).filter(|&v| alive[v as usize]).collect();
    let mut label = vec![Vertex::MAX; vertex_count];
    for (i, &v) in kept.iter().enumerate() {
        label[v as usize] = i as Vertex;
    }
    let facets = facets
        .into_iter()
        .map(|f| f.into_iter().map(|v| label[v as usize]).collect())
        .collect();
    Core { kept, facets }
}

/// Deletes vertices with contractible links until none is found. `depth`
/// bounds the recursion used to certify a link: at depth 0 only cones
/// (dominated vertices) are recognised.
pub fn link_collapse(vertex_count: usize, facets: &[Vec<Vertex>], depth: usize) -> Core {
    let mut all: Vec<Vec<Vertex>> = facets.to_vec();
    all.extend((0..vertex_count as Vertex).map(|v| vec![v]));
    let (alive, facets) = reduce(vertex_count, maximal_facets(vertex_count, &all), depth);
    relabel(alive, facets)
}

fn relabel(alive: Vec<bool>, facets: Vec<Vec<Vertex>>) -> Core {
    let kept: Vec<Vertex> = (0..alive.len() as Vertex).filter(|&v| alive[v as usize]).collect();
    let mut label = vec![Vertex::MAX; alive.len()];
    for (i, &v) in kept.iter().enumerate() {
        label[v as usize] = i as Vertex;
    }
    let facets = facets
        .into_iter()
        .map(|f| f.into_iter().map(|v| label[v as usize]).collect())
        .collect();
    Core { kept, facets }
}

/// `facets` must list every vertex in at least one facet.
fn reduce(vertex_count: usize, mut facets: Vec<Vec<Vertex>>, depth: usize) -> (Vec<bool>, Vec<Vec<Vertex>>) {
    let mut alive = vec![true; vertex_count];
    let mut remaining = vertex_count;
    loop {
        let mut through: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (k, f) in facets.iter().enumerate() {
            for &v in f {
                through[v as usize].push(k);
            }
        }
        let mut changed = false;
        for v in 0..vertex_count {
            if !alive[v] || remaining == 1 {
                continue;
            }
            // listed facets may have shrunk earlier in this pass; they still
            // span the same complex, so the tests below stay sound
            if contractible_link(v as Vertex, &through[v], &facets, depth) {
                for &k in &through[v] {
                    facets[k].retain(|&x| x as usize != v);
                }
                alive[v] = false;
                remaining -= 1;
                changed = true;
            }
        }
        facets.retain(|f| !f.is_empty());
        facets = maximal_facets(vertex_count, &facets);
        if !changed {
            return (alive, facets);
        }
    }
}

fn contractible_link(v: Vertex, through: &[usize], facets: &[Vec<Vertex>], depth: usize) -> bool {
    let mut link: Vec<Vec<Vertex>> = Vec::with_capacity(through.len());
    for &k in through {
        let rest: Vec<Vertex> = facets[k].iter().copied().filter(|&x| x != v).collect();
        if rest.is_empty() {
            // v spans a facet by itself: the link is empty
            return false;
        }
        link.push(rest);
    }
    // cone test
    let mut common = link[0].clone();
    for f in &link[1..] {
        common.retain(|x| f.binary_search(x).is_ok());
        if common.is_empty() {
            break;
        }
    }
    if !common.is_empty() {
        return true;
    }
    if depth == 0 {
        return false;
    }
    let mut local: Vec<Vertex> = link.iter().flatten().copied().collect();
    local.sort_unstable();
    local.dedup();
    let relabelled: Vec<Vec<Vertex>> = link
        .iter()
        .map(|f| f.iter().map(|x| local.binary_search(x).expect("link vertex") as Vertex).collect())
        .collect();
    let (alive, _) = reduce(local.len(), maximal_facets(local.len(), &relabelled), depth - 1);
    alive.iter().filter(|&&a| a).count() == 1
}
