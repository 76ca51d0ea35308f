//! Boundaries, collars and radius-`r` Cheeger constants of finite spaces.
//!
//! For `M` a set of points, the boundary is the set of points of `M` with a
//! point outside `M` within the resolution `h`, and the collar is the closed
//! `r`-neighbourhood of the boundary in the whole space. The radius-`r`
//! Cheeger constant is the least `vol(collar) / vol(M)` over sets `M`
//! connected in the `h`-adjacency graph with `vol(M) <= vol(X) / 2`.

use std::collections::VecDeque;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::space::{FiniteMMSpace, SpatialIndex};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Boundary and collar of a point set, with their volumes.
#[derive(Clone, Debug, PartialEq)]
pub struct Collar {
    pub boundary: Vec<usize>,
    pub collar: Vec<usize>,
    pub boundary_volume: Rational,
    pub collar_volume: Rational,
}

fn membership(n: usize, members: &[usize]) -> Result<Vec<bool>> {
    let mut inside = vec![false; n];
    for &m in members {
        if m >= n {
            return Err(Error::contract(format!("point {m} out of range")));
        }
        inside[m] = true;
    }
    Ok(inside)
}

pub fn boundary_and_collar(space: &FiniteMMSpace, members: &[usize], r: f64, h: f64) -> Result<Collar> {
    let n = space.len();
    let inside = membership(n, members)?;
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 || size == n {
        return Err(Error::contract("boundary needs a nonempty proper subset"));
    }
    if !(r >= 0.0) || !(h > 0.0) {
        return Err(Error::contract("collar radius must be non-negative and step positive"));
    }
    let all = SpatialIndex::over(space, (0..n).collect(), h.max(r));
    let boundary: Vec<usize> = (0..n)
        .filter(|&x| inside[x] && all.within(x, h, true).into_iter().any(|y| !inside[y]))
        .collect();
    let mut in_collar = vec![false; n];
    for &b in &boundary {
        for z in all.within(b, r, true) {
            in_collar[z] = true;
        }
    }
    let collar: Vec<usize> = (0..n).filter(|&z| in_collar[z]).collect();
    Ok(Collar {
        boundary_volume: space.volume_of(boundary.iter().copied()),
        collar_volume: space.volume_of(collar.iter().copied()),
        boundary,
        collar,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheegerMode {
    /// Enumerate every admissible connected set.
    Exact,
    /// Ball sweep followed by seeded simulated annealing; an upper bound.
    Heuristic,
}

#[derive(Clone, Copy, Debug)]
pub struct CheegerOptions {
    pub mode: CheegerMode,
    /// Largest space accepted in exact mode.
    pub exhaustive_cap: usize,
    pub seed: u64,
    /// Annealing moves; `0` picks a default from the space size.
    pub anneal_steps: usize,
}

impl Default for CheegerOptions {
    fn default() -> Self {
        CheegerOptions { mode: CheegerMode::Exact, exhaustive_cap: 24, seed: 0, anneal_steps: 0 }
    }
}

impl CheegerOptions {
    pub fn heuristic(seed: u64) -> Self {
        CheegerOptions { mode: CheegerMode::Heuristic, seed, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheegerResult {
    pub value: Rational,
    /// Sorted points of a set attaining `value`.
    pub witness: Vec<usize>,
}

/// Largest space the bitmask enumerator can handle.
const MASK_LIMIT: usize = 64;

pub fn cheeger_radius_r(space: &FiniteMMSpace, r: f64, options: CheegerOptions) -> Result<CheegerResult> {
    if !(r > 0.0) {
        return Err(Error::contract("Cheeger radius must be positive"));
    }
    if space.len() < 2 {
        return Err(Error::contract("a one-point space has no admissible subset"));
    }
    match options.mode {
        CheegerMode::Exact => {
            let n = space.len();
            if n > options.exhaustive_cap || n > MASK_LIMIT {
                return Err(Error::contract(format!(
                    "exact Cheeger enumeration is capped at {} points, space has {n}",
                    options.exhaustive_cap.min(MASK_LIMIT)
                )));
            }
            exact(space, r)
        }
        CheegerMode::Heuristic => Ok(Heuristic::new(space, r).run(options)),
    }
}

struct MaskTables {
    adj: Vec<u64>,
    near: Vec<u64>,
    weights: Vec<Rational>,
}

impl MaskTables {
    fn new(space: &FiniteMMSpace, r: f64) -> Self {
        let n = space.len();
        let h = space.resolution();
        let mut adj = vec![0u64; n];
        let mut near = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let d = space.dist(i, j);
                if i != j && d <= h {
                    adj[i] |= 1 << j;
                }
                if d <= r {
                    near[i] |= 1 << j;
                }
            }
        }
        MaskTables { adj, near, weights: space.weights().to_vec() }
    }

    fn volume(&self, mut mask: u64) -> Rational {
        let mut total = Rational::zero();
        while mask != 0 {
            total += self.weights[mask.trailing_zeros() as usize];
            mask &= mask - 1;
        }
        total
    }

    fn collar(&self, set: u64) -> u64 {
        let mut collar = 0u64;
        let mut rest = set;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[x] & !set != 0 {
                collar |= self.near[x];
            }
        }
        collar
    }
}

fn exact(space: &FiniteMMSpace, r: f64) -> Result<CheegerResult> {
    let n = space.len();
    let t = MaskTables::new(space, r);
    let half = space.volume() / 2;
    let mut best: Option<(Rational, u64)> = None;

    // Each connected set is generated once, from its least point `root`, by
    // branching on whether each frontier point joins.
    struct Walk<'a> {
        t: &'a MaskTables,
        half: Rational,
        root: usize,
        best: &'a mut Option<(Rational, u64)>,
    }
    impl Walk<'_> {
        fn grow(&mut self, set: u64, volume: Rational, mut frontier: Vec<usize>, mut banned: u64) {
            let ratio = self.t.volume(self.t.collar(set)) / volume;
            if self.best.as_ref().is_none_or(|(b, _)| ratio < *b) {
                *self.best = Some((ratio, set));
            }
            while let Some(w) = frontier.pop() {
                let grown = volume + self.t.weights[w];
                if grown <= self.half {
                    let next_set = set | (1 << w);
                    let mut next = frontier.clone();
                    let seen = next_set | banned | frontier.iter().fold(0u64, |m, &u| m | (1 << u));
                    let mut fresh = self.t.adj[w] & !seen & !((1u64 << self.root) - 1) & !(1u64 << self.root);
                    while fresh != 0 {
                        next.push(fresh.trailing_zeros() as usize);
                        fresh &= fresh - 1;
                    }
                    self.grow(next_set, grown, next, banned);
                }
                banned |= 1 << w;
            }
        }
    }

    for root in 0..n {
        let volume = t.weights[root];
        if volume > half {
            continue;
        }
        let above = !((1u64 << root) - 1) & !(1u64 << root);
        let mut frontier = Vec::new();
        let mut fresh = t.adj[root] & above;
        while fresh != 0 {
            frontier.push(fresh.trailing_zeros() as usize);
            fresh &= fresh - 1;
        }
        frontier.reverse();
        let mut walk = Walk { t: &t, half, root, best: &mut best };
        walk.grow(1 << root, volume, frontier, 0);
    }
    let (value, mask) = best.ok_or_else(|| Error::contract("no connected subset has at most half the volume"))?;
    Ok(CheegerResult { value, witness: (0..n).filter(|&i| mask >> i & 1 == 1).collect() })
}

/// Incremental state for the heuristic search.
struct Heuristic<'a> {
    space: &'a FiniteMMSpace,
    adj: Vec<Vec<usize>>,
    near: Vec<Vec<usize>>,
    half: Rational,
}

impl<'a> Heuristic<'a> {
    fn new(space: &'a FiniteMMSpace, r: f64) -> Self {
        let n = space.len();
        let h = space.resolution();
        let index = SpatialIndex::over(space, (0..n).collect(), h.max(r));
        let adj = (0..n).map(|i| index.within(i, h, true).into_iter().filter(|&j| j != i).collect()).collect();
        let near = (0..n).map(|i| index.within(i, r, true)).collect();
        Heuristic { space, adj, near, half: space.volume() / 2 }
    }

    fn ratio(&self, inside: &[bool], members: &[usize], volume: Rational) -> Rational {
        let mut marked = vec![false; inside.len()];
        let mut collar = Rational::zero();
        for &x in members {
            if self.adj[x].iter().any(|&y| !inside[y]) {
                for &z in &self.near[x] {
                    if !marked[z] {
                        marked[z] = true;
                        collar += self.space.weight(z);
                    }
                }
            }
        }
        collar / volume
    }

    fn connected_without(&self, inside: &[bool], members: &[usize], drop: usize) -> bool {
        let Some(&start) = members.iter().find(|&&m| m != drop) else {
            return false;
        };
        let mut seen = vec![false; inside.len()];
        seen[start] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if w != drop && inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == members.len() - 1
    }

    /// Component of `center` inside growing closed balls around it.
    fn ball_sweep(&self, best: &mut Option<(Rational, Vec<usize>)>) {
        let n = self.space.len();
        let centers: Vec<usize> = if n <= 64 { (0..n).collect() } else { (0..64).map(|k| k * n / 64).collect() };
        for c in centers {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| self.space.dist(c, a).total_cmp(&self.space.dist(c, b)).then(a.cmp(&b)));
            let mut in_ball = vec![false; n];
            let mut k = 0;
            while k < n {
                let d = self.space.dist(c, order[k]);
                while k < n && self.space.dist(c, order[k]) == d {
                    in_ball[order[k]] = true;
                    k += 1;
                }
                // component of c within the ball
                let mut inside = vec![false; n];
                inside[c] = true;
                let mut members = vec![c];
                let mut queue = VecDeque::from([c]);
                while let Some(u) = queue.pop_front() {
                    for &w in &self.adj[u] {
                        if in_ball[w] && !inside[w] {
                            inside[w] = true;
                            members.push(w);
                            queue.push_back(w);
                        }
                    }
                }
                let volume = self.space.volume_of(members.iter().copied());
                if volume > self.half {
                    break;
                }
                let ratio = self.ratio(&inside, &members, volume);
                if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
                    members.sort_unstable();
                    *best = Some((ratio, members));
                }
            }
        }
    }

    fn run(&self, options: CheegerOptions) -> CheegerResult {
        let n = self.space.len();
        let mut best: Option<(Rational, Vec<usize>)> = None;
        self.ball_sweep(&mut best);
        let Some((mut current_value, start)) = best.clone() else {
            // every single point outweighs half the space; only possible for n = 2 with a heavy point
            let light = (0..n).min_by_key(|&i| self.space.weight(i)).unwrap_or(0);
            let mut inside = vec![false; n];
            inside[light] = true;
            let value = self.ratio(&inside, &[light], self.space.weight(light));
            return CheegerResult { value, witness: vec![light] };
        };

        let mut inside = vec![false; n];
        for &m in &start {
            inside[m] = true;
        }
        let mut members = start;
        let mut volume = self.space.volume_of(members.iter().copied());
        let steps = if options.anneal_steps == 0 { (50 * n).clamp(1000, 20_000) } else { options.anneal_steps };
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let t0 = crate::numeric::to_f64(&current_value).max(1e-9) * 0.1;
        for step in 0..steps {
            let temperature = t0 * (1e-3f64).powf(step as f64 / steps as f64);
            let x = rng.gen_range(0..n);
            let (next_volume, removing) = if inside[x] {
                if members.len() == 1 || !self.connected_without(&inside, &members, x) {
                    continue;
                }
                (volume - self.space.weight(x), true)
            } else {
                if !self.adj[x].iter().any(|&y| inside[y]) {
                    continue;
                }
                let v = volume + self.space.weight(x);
                if v > self.half {
                    continue;
                }
                (v, false)
            };
            inside[x] = !removing;
            let candidate: Vec<usize> = if removing {
                members.iter().copied().filter(|&m| m != x).collect()
            } else {
                let mut c = members.clone();
                c.push(x);
                c
            };
            let value = self.ratio(&inside, &candidate, next_volume);
            let delta = crate::numeric::to_f64(&(value - current_value));
            if delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature).exp() {
                members = candidate;
                volume = next_volume;
                current_value = value;
                if best.as_ref().is_none_or(|(b, _)| value < *b) {
                    let mut sorted = members.clone();
                    sorted.sort_unstable();
                    best = Some((value, sorted));
                }
            } else {
                inside[x] = removing;
            }
        }
        let (value, witness) = best.expect("sweep found a candidate");
        CheegerResult { value, witness }
    }
}

/// Majority-ball construction: the points `p` whose closed `r`-ball is more
/// than half covered by `a`, cut down to the `h`-connected component with the
/// smallest collar-to-volume ratio at step `h`.
pub fn haircut(space: &FiniteMMSpace, a: &[usize], r: f64) -> Vec<usize> {
    let n = space.len();
    let Ok(in_a) = membership(n, a) else {
        return Vec::new();
    };
    let h = space.resolution();
    let index = SpatialIndex::over(space, (0..n).collect(), h.max(r));
    let majority: Vec<bool> = (0..n)
        .map(|p| {
            let ball = index.within(p, r, true);
            let covered = space.volume_of(ball.iter().copied().filter(|&q| in_a[q]));
            covered * 2 > space.volume_of(ball)
        })
        .collect();

    let mut seen = vec![false; n];
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for s in 0..n {
        if !majority[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut component = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in index.within(u, h, true) {
                if majority[w] && !seen[w] {
                    seen[w] = true;
                    component.push(w);
                    queue.push_back(w);
                }
            }
        }
        component.sort_unstable();
        let ratio = if component.len() == n {
            Rational::zero()
        } else {
            let c = boundary_and_collar(space, &component, h, h).expect("proper nonempty subset");
            c.collar_volume / space.volume_of(component.iter().copied())
        };
        if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
            best = Some((ratio, component));
        }
    }
    best.map(|(_, c)| c).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmspace::circle_space;
    use num_rational::Ratio;

    fn circle24() -> FiniteMMSpace {
        circle_space(Ratio::new(12, 1), Ratio::new(1, 2)).unwrap()
    }

    #[test]
    fn half_circle_collar() {
        let s = circle24();
        let arc: Vec<usize> = (0..12).collect();
        let c = boundary_and_collar(&s, &arc, 1.0, 0.5).unwrap();
        assert_eq!(c.boundary, vec![0, 11]);
        assert_eq!(c.collar, vec![0, 1, 2, 9, 10, 11, 12, 13, 22, 23]);
        assert_eq!(c.collar_volume, Ratio::new(5, 1));
    }

    #[test]
    fn collar_edge_cases() {
        let s = circle24();
        let most: Vec<usize> = (1..24).collect();
        assert_eq!(boundary_and_collar(&s, &most, 0.0, 0.5).unwrap().boundary, vec![1, 23]);
        let c = boundary_and_collar(&s, &[0, 1, 2], 100.0, 0.5).unwrap();
        assert_eq!(c.collar.len(), 24);
        assert!(boundary_and_collar(&s, &[], 1.0, 0.5).is_err());
        assert!(boundary_and_collar(&s, &(0..24).collect::<Vec<_>>(), 1.0, 0.5).is_err());
    }

    #[test]
    fn exact_circle_is_a_half_arc() {
        let s = circle24();
        let res = cheeger_radius_r(&s, 1.0, CheegerOptions::default()).unwrap();
        assert_eq!(res.value, Ratio::new(5, 6));
        assert_eq!(res.witness.len(), 12);
        let heur = cheeger_radius_r(&s, 1.0, CheegerOptions::heuristic(7)).unwrap();
        assert!(heur.value >= res.value);
    }

    #[test]
    fn exact_mode_respects_cap_and_radius() {
        let s = circle_space(Ratio::new(13, 1), Ratio::new(1, 2)).unwrap();
        assert!(matches!(cheeger_radius_r(&s, 1.0, CheegerOptions::default()), Err(Error::Contract(_))));
        assert!(cheeger_radius_r(&circle24(), 0.0, CheegerOptions::default()).is_err());
    }

    #[test]
    fn two_points() {
        let s = FiniteMMSpace::make_space(&[vec![0.0, 1.0], vec![1.0, 0.0]], vec![Ratio::new(1, 1), Ratio::new(2, 1)])
            .unwrap();
        let res = cheeger_radius_r(&s, 0.5, CheegerOptions::default()).unwrap();
        assert_eq!(res.witness, vec![0]);
        assert_eq!(res.value, Ratio::new(1, 1));
    }

    #[test]
    fn haircut_keeps_the_long_arc() {
        let s = circle24();
        let mut a: Vec<usize> = (0..16).collect();
        a.push(20);
        let kept = haircut(&s, &a, 1.0);
        assert!(!kept.contains(&20));
        assert!(kept.iter().all(|&p| p < 16));
        assert_eq!(haircut(&s, &(0..24).collect::<Vec<_>>(), 1.0).len(), 24);
        assert!(haircut(&s, &[3], 1.0).is_empty());
    }
}
