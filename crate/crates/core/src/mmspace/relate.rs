//! `(eps, R)`-relatedness of pointed measures and pointed subsets inside a
//! common ambient space.

use std::collections::VecDeque;

use num_traits::Zero;

use super::space::FiniteMMSpace;
use crate::error::{Error, Result};
use crate::numeric::{rational_lt_f64, Rational};

/// Two atomic measures on the points of `ambient`, each with a basepoint.
#[derive(Clone, Debug)]
pub struct PointedMeasurePair<'a> {
    pub ambient: &'a FiniteMMSpace,
    pub mu1: Vec<Rational>,
    pub mu2: Vec<Rational>,
    pub p1: usize,
    pub p2: usize,
}

impl<'a> PointedMeasurePair<'a> {
    pub fn new(ambient: &'a FiniteMMSpace, mu1: Vec<Rational>, mu2: Vec<Rational>, p1: usize, p2: usize) -> Result<Self> {
        let n = ambient.len();
        if mu1.len() != n || mu2.len() != n {
            return Err(Error::malformed("measures must assign a mass to every ambient point"));
        }
        if mu1.iter().chain(&mu2).any(|m| *m < Rational::zero()) {
            return Err(Error::malformed("measures must be non-negative"));
        }
        if p1 >= n || p2 >= n {
            return Err(Error::malformed("basepoint out of range"));
        }
        Ok(PointedMeasurePair { ambient, mu1, mu2, p1, p2 })
    }

    /// The same pair with the roles of the two measures exchanged.
    pub fn swapped(&self) -> Self {
        PointedMeasurePair { ambient: self.ambient, mu1: self.mu2.clone(), mu2: self.mu1.clone(), p1: self.p2, p2: self.p1 }
    }
}

/// Largest `mu_a(F) - mu_b(N(F, eps))` over sets `F` of atoms of `mu_a` in the
/// closed ball `B(p_a, R)`, where `N(F, eps)` is the open `eps`-neighbourhood.
///
/// By max-flow/min-cut this is `mu_a(A) - maxflow` on the bipartite network
/// `source -> A -> B -> sink`, with a middle edge for every pair closer than `eps`.
pub fn deficiency(space: &FiniteMMSpace, mu_a: &[Rational], mu_b: &[Rational], p_a: usize, eps: f64, radius: f64) -> Rational {
    let left: Vec<usize> = (0..space.len()).filter(|&x| mu_a[x] > Rational::zero() && space.dist(p_a, x) <= radius).collect();
    let right: Vec<usize> = (0..space.len()).filter(|&y| mu_b[y] > Rational::zero()).collect();
    let supply: Rational = left.iter().map(|&x| mu_a[x]).sum();
    if left.is_empty() {
        return Rational::zero();
    }
    // nodes: 0 source, 1..=L left, L+1..=L+R right, L+R+1 sink
    let (nl, nr) = (left.len(), right.len());
    let size = nl + nr + 2;
    let sink = size - 1;
    let mut cap = vec![Rational::zero(); size * size];
    for (i, &x) in left.iter().enumerate() {
        cap[1 + i] = mu_a[x];
        for (j, &y) in right.iter().enumerate() {
            if space.dist(x, y) < eps {
                cap[(1 + i) * size + 1 + nl + j] = supply;
            }
        }
    }
    for (j, &y) in right.iter().enumerate() {
        cap[(1 + nl + j) * size + sink] = mu_b[y];
    }
    supply - max_flow(&mut cap, size, 0, sink)
}

/// Edmonds-Karp on a dense residual matrix.
fn max_flow(cap: &mut [Rational], size: usize, source: usize, sink: usize) -> Rational {
    let mut total = Rational::zero();
    loop {
        let mut parent = vec![usize::MAX; size];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..size {
                if parent[v] == usize::MAX && cap[u * size + v] > Rational::zero() {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return total;
        }
        let mut push = None::<Rational>;
        let mut v = sink;
        while v != source {
            let u = parent[v];
            let c = cap[u * size + v];
            push = Some(push.map_or(c, |p| p.min(c)));
            v = u;
        }
        let push = push.expect("path has an edge");
        let mut v = sink;
        while v != source {
            let u = parent[v];
            cap[u * size + v] -= push;
            cap[v * size + u] += push;
            v = u;
        }
        total += push;
    }
}

/// Both measure conditions hold with strict inequality and `dist(p1, p2) < eps`.
pub fn related_measures(pair: &PointedMeasurePair<'_>, eps: f64, radius: f64) -> bool {
    let s = pair.ambient;
    if !(s.dist(pair.p1, pair.p2) < eps) {
        return false;
    }
    rational_lt_f64(&deficiency(s, &pair.mu1, &pair.mu2, pair.p1, eps, radius), eps)
        && rational_lt_f64(&deficiency(s, &pair.mu2, &pair.mu1, pair.p2, eps, radius), eps)
}

/// `B(p1, R) ∩ X1 ⊂ N(X2, eps)`, the symmetric inclusion, and `dist(p1, p2) < eps`.
pub fn related_subsets(space: &FiniteMMSpace, x1: &[usize], x2: &[usize], p1: usize, p2: usize, eps: f64, radius: f64) -> bool {
    let covered = |p: usize, from: &[usize], into: &[usize]| {
        from.iter()
            .filter(|&&x| space.dist(p, x) <= radius)
            .all(|&x| into.iter().any(|&y| space.dist(x, y) < eps))
    };
    space.dist(p1, p2) < eps && covered(p1, x1, x2) && covered(p2, x2, x1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmspace::Geometry;
    use num_rational::Ratio;

    fn line(points: &[f64]) -> FiniteMMSpace {
        FiniteMMSpace::from_coords(1, Geometry::Flat, points.to_vec(), vec![Ratio::new(1, 1); points.len()]).unwrap()
    }

    #[test]
    fn diracs() {
        let s = line(&[0.0, 0.5]);
        let one = Ratio::new(1, 1);
        let zero = Ratio::new(0, 1);
        let pair = PointedMeasurePair::new(&s, vec![one, zero], vec![zero, one], 0, 1).unwrap();
        assert!(related_measures(&pair, 0.6, 2.0));
        assert!(!related_measures(&pair, 0.4, 2.0));
    }

    #[test]
    fn reflexive() {
        let s = line(&[0.0, 0.5, 3.0]);
        let mu = vec![Ratio::new(1, 3), Ratio::new(1, 2), Ratio::new(2, 1)];
        let pair = PointedMeasurePair::new(&s, mu.clone(), mu, 2, 2).unwrap();
        for eps in [1e-6, 0.1, 1.0] {
            assert!(related_measures(&pair, eps, 10.0));
        }
    }

    #[test]
    fn subsets_on_a_segment() {
        let s = line(&[0.0, 1.0, 1.3]);
        assert!(related_subsets(&s, &[0, 1], &[0, 2], 0, 0, 0.4, 2.0));
        assert!(!related_subsets(&s, &[0, 1], &[0, 2], 0, 0, 0.2, 2.0));
        assert!(related_subsets(&s, &[1, 2], &[1, 2], 1, 1, 0.01, 5.0));
    }
}
