use std::collections::HashMap;

use super::canon::{canonical_form, CanonInput};
use super::complex::{bfs_distances, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A complex with a distinguished vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedComplex {
    complex: SimplicialComplex,
    root: Vertex,
}

impl RootedComplex {
    pub fn new(complex: SimplicialComplex, root: Vertex) -> Result<Self> {
        if (root as usize) >= complex.vertex_count() {
            return Err(Error::malformed(format!("root {root} is not a vertex")));
        }
        Ok(RootedComplex { complex, root })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    /// The same rooted complex under `perm[old] = new`.
    pub fn relabel(&self, perm: &[Vertex]) -> RootedComplex {
        RootedComplex { complex: self.complex.relabel(perm), root: perm[self.root as usize] }
    }
}

/// Closed ball of radius `r` about the root: the simplices all of whose
/// vertices are within graph distance `r` of the root in the 1-skeleton.
pub fn closed_ball(k: &RootedComplex, r: usize) -> RootedComplex {
    let dist = k.complex.distances_from(k.root);
    ball_from_distances(&k.complex, k.root, &dist, r)
}

fn ball_from_distances(k: &SimplicialComplex, root: Vertex, dist: &[usize], r: usize) -> RootedComplex {
    let keep: Vec<bool> = dist.iter().map(|&d| d <= r).collect();
    let (ball, old_of) = k.induced(&keep);
    let root = old_of.binary_search(&root).expect("root lies in its own ball") as Vertex;
    RootedComplex { complex: ball, root }
}

/// Closed `r`-balls about every vertex, in vertex order.
pub fn all_balls(k: &SimplicialComplex, r: usize) -> Vec<RootedComplex> {
    let adj = k.adjacency();
    let by_least = k.by_least_vertex();
    (0..k.vertex_count() as Vertex)
        .map(|v| {
            let dist = bfs_distances(&adj, v, r);
            let mut members: Vec<Vertex> =
                (0..k.vertex_count()).filter(|&u| dist[u] <= r).map(|u| u as Vertex).collect();
            members.sort_unstable();
            let mut new_id: HashMap<Vertex, Vertex> = HashMap::with_capacity(members.len());
            for (i, &u) in members.iter().enumerate() {
                new_id.insert(u, i as Vertex);
            }
            let mut generators: Vec<Vec<Vertex>> = members.iter().map(|&u| vec![new_id[&u]]).collect();
            for &u in &members {
                for &(d, idx) in &by_least[u as usize] {
                    let s = k.simplex(d, idx);
                    if s.iter().all(|w| dist[*w as usize] <= r) {
                        generators.push(s.iter().map(|w| new_id[w]).collect());
                    }
                }
            }
            let ball = SimplicialComplex::close(members.len(), generators, k.max_dim());
            RootedComplex { complex: ball, root: new_id[&v] }
        })
        .collect()
}

/// Per-vertex invariant: root flag plus the number of simplices of each
/// dimension containing the vertex.
fn vertex_profile(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    let top = k.dim().unwrap_or(0);
    let mut prof = vec![vec![0usize; top + 1]; k.vertex_count()];
    for d in 1..=top {
        for s in k.simplices(d) {
            for &v in s {
                prof[v as usize][d] += 1;
            }
        }
    }
    prof
}

/// Decides whether a simplicial isomorphism carries `a` to `b` and root to root,
/// by backtracking from the roots outward.
pub fn root_isomorphic(a: &RootedComplex, b: &RootedComplex) -> bool {
    let (ka, kb) = (&a.complex, &b.complex);
    let n = ka.vertex_count();
    if n != kb.vertex_count() {
        return false;
    }
    let top = ka.dim().unwrap_or(0).max(kb.dim().unwrap_or(0));
    if (0..=top).any(|d| ka.count(d) != kb.count(d)) {
        return false;
    }
    let (pa, pb) = (vertex_profile(ka), vertex_profile(kb));
    let (da, db) = (ka.distances_from(a.root), kb.distances_from(b.root));
    let key = |p: &Vec<usize>, d: usize| (d, p.clone());
    let mut ka_keys: Vec<_> = (0..n).map(|v| key(&pa[v], da[v])).collect();
    let mut kb_keys: Vec<_> = (0..n).map(|v| key(&pb[v], db[v])).collect();
    if ka_keys[a.root as usize] != kb_keys[b.root as usize] {
        return false;
    }
    let candidates_a = ka_keys.clone();
    ka_keys.sort();
    kb_keys.sort();
    if ka_keys != kb_keys {
        return false;
    }

    // search order: root first, then by distance from root, then id
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (v != a.root as usize, da[v], v));
    let adj_a = ka.adjacency();
    let adj_b = kb.adjacency();
    let has_edge = |adj: &Vec<Vec<Vertex>>, u: usize, v: usize| adj[u].binary_search(&(v as Vertex)).is_ok();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    struct Ctx<'a> {
        order: &'a [usize],
        cand_a: &'a [(usize, Vec<usize>)],
        pb: &'a [Vec<usize>],
        db: &'a [usize],
        root_b: usize,
    }
    let ctx = Ctx { order: &order, cand_a: &candidates_a, pb: &pb, db: &db, root_b: b.root as usize };

    fn rec(
        depth: usize,
        ctx: &Ctx<'_>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        consistent: &dyn Fn(&[usize], usize, usize) -> bool,
        full_check: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if depth == ctx.order.len() {
            return full_check(map);
        }
        let u = ctx.order[depth];
        let (du, ref pu) = ctx.cand_a[u];
        for w in 0..map.len() {
            if used[w] || ctx.db[w] != du || ctx.pb[w] != *pu {
                continue;
            }
            if depth == 0 && w != ctx.root_b {
                continue;
            }
            if !consistent(map, u, w) {
                continue;
            }
            map[u] = w;
            used[w] = true;
            if rec(depth + 1, ctx, map, used, consistent, full_check) {
                return true;
            }
            map[u] = usize::MAX;
            used[w] = false;
        }
        false
    }

    let consistent = |map: &[usize], u: usize, w: usize| {
        // every already-mapped vertex must agree on adjacency with u
        adj_a[u].iter().all(|&x| map[x as usize] == usize::MAX || has_edge(&adj_b, w, map[x as usize]))
            && adj_b[w].iter().filter(|&&y| used_target(map, y as usize)).count()
                == adj_a[u].iter().filter(|&&x| map[x as usize] != usize::MAX).count()
    };
    let full_check = |map: &[usize]| {
        (1..=top).all(|d| {
            ka.simplices(d).all(|s| {
                let mut t: Vec<Vertex> = s.iter().map(|&v| map[v as usize] as Vertex).collect();
                t.sort_unstable();
                kb.contains(&t)
            })
        })
    };
    rec(0, &ctx, &mut map, &mut used, &consistent, &full_check)
}

fn used_target(map: &[usize], y: usize) -> bool {
    map.contains(&y)
}

/// Canonical byte code of a rooted complex: equal codes exactly for
/// root-isomorphic inputs.
pub fn canonical_code(a: &RootedComplex) -> Vec<u8> {
    let k = &a.complex;
    let n = k.vertex_count();
    let prof = vertex_profile(k);
    let colors: Vec<u64> = prof
        .iter()
        .map(|p| {
            // fold the per-dimension counts into one ordered key
            p.iter().fold(p.len() as u64, |acc, &c| acc.wrapping_mul(1_000_003).wrapping_add(c as u64))
        })
        .collect();
    let mut pair = vec![0u32; n * n];
    for e in k.simplices(1) {
        let (u, v) = (e[0] as usize, e[1] as usize);
        pair[u * n + v] = 1;
        pair[v * n + u] = 1;
    }
    for t in k.simplices(2) {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (u, v) = (t[i] as usize, t[j] as usize);
            pair[u * n + v] += 1;
            pair[v * n + u] += 1;
        }
    }
    let fixed = [a.root as usize];
    let input = CanonInput { n, colors: &colors, pair: &pair, fixed: &fixed };
    let top = k.dim().unwrap_or(0);
    canonical_form(&input, &|order: &[usize]| serialize_complex(k, order, top))
}

/// Length-prefixed listing of every simplex under the vertex order `order`
/// (`order[new] = old`).
fn serialize_complex(k: &SimplicialComplex, order: &[usize], top: usize) -> Vec<u8> {
    let mut new_id = vec![0u32; k.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i as u32;
    }
    let mut out = Vec::new();
    out.extend_from_slice(&(k.vertex_count() as u32).to_be_bytes());
    for d in 1..=top {
        let mut list: Vec<Vec<u32>> = k
            .simplices(d)
            .map(|s| {
                let mut t: Vec<u32> = s.iter().map(|&v| new_id[v as usize]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        list.sort_unstable();
        out.extend_from_slice(&(list.len() as u32).to_be_bytes());
        for s in list {
            for v in s {
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::generators;

    fn rooted(k: SimplicialComplex, root: Vertex) -> RootedComplex {
        RootedComplex::new(k, root).unwrap()
    }

    #[test]
    fn ball_radius_one_of_triangle_is_everything() {
        let k = rooted(generators::hollow_triangle(), 0);
        assert_eq!(closed_ball(&k, 1).complex(), k.complex());
    }

    #[test]
    fn ball_radius_zero_is_root() {
        let k = rooted(generators::hollow_triangle(), 0);
        let b = closed_ball(&k, 0);
        assert_eq!(b.complex().vertex_count(), 1);
        assert_eq!(b.complex().count(1), 0);
    }

    #[test]
    fn ball_on_path() {
        let k = rooted(generators::path(5), 0);
        let b = closed_ball(&k, 2);
        assert_eq!(b.complex(), &generators::path(3));
        assert_eq!(b.root(), 0);
    }

    #[test]
    fn ball_excludes_simplices_touching_outside() {
        // triangle 0-1-2 with 2 at distance 1; edge 2-3 reaches distance 2
        let k = rooted(SimplicialComplex::from_maximal(&[vec![0, 1, 2], vec![2, 3]], 2).unwrap(), 0);
        let b = closed_ball(&k, 1);
        assert_eq!(b.complex().vertex_count(), 3);
        assert_eq!(b.complex().count(2), 1);
    }

    #[test]
    fn all_balls_match_closed_ball() {
        let k = generators::triangulated_torus(5);
        let balls = all_balls(&k, 2);
        for v in [0u32, 7, 24] {
            let direct = closed_ball(&rooted(k.clone(), v), 2);
            assert_eq!(balls[v as usize], direct);
        }
    }

    #[test]
    fn isomorphism_examples() {
        let c3 = generators::cycle(3);
        assert!(root_isomorphic(&rooted(c3.clone(), 0), &rooted(c3.clone(), 2)));
        assert!(!root_isomorphic(&rooted(c3, 0), &rooted(generators::path(3), 0)));
        let star = generators::star(3);
        assert!(!root_isomorphic(&rooted(star.clone(), 0), &rooted(star, 1)));
    }

    #[test]
    fn filled_and_hollow_triangles_differ() {
        let hollow = rooted(generators::hollow_triangle(), 0);
        let filled = rooted(SimplicialComplex::from_maximal(&[vec![0, 1, 2]], 2).unwrap(), 0);
        assert!(!root_isomorphic(&hollow, &filled));
        assert_ne!(canonical_code(&hollow), canonical_code(&filled));
    }

    #[test]
    fn code_examples() {
        let c3 = generators::cycle(3);
        assert_eq!(canonical_code(&rooted(c3.clone(), 0)), canonical_code(&rooted(c3, 1)));
        let p5 = generators::path(5);
        assert_ne!(canonical_code(&rooted(p5.clone(), 0)), canonical_code(&rooted(p5, 2)));
        let t = rooted(generators::torus7(), 3);
        let perm: Vec<Vertex> = vec![4, 0, 6, 2, 1, 5, 3];
        assert_eq!(canonical_code(&t), canonical_code(&t.relabel(&perm)));
    }
}
