//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nervelab::mmspace::{boundary_and_collar, FiniteMMSpace, Geometry, PointedMeasurePair};
use nervelab::numeric::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// All faces of the given simplices, by dimension, sorted.
pub fn faces(maximal: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
    for s in maximal {
        let mut s = s.clone();
        s.sort_unstable();
        let k = s.len();
        for mask in 1u32..(1 << k) {
            let sub: Vec<u32> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            let d = sub.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(sub);
        }
    }
    by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
}

pub fn boundary_matrix(rows: &[Vec<u32>], cols: &[Vec<u32>]) -> Vec<Vec<i128>> {
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, c) in cols.iter().enumerate() {
        for skip in 0..c.len() {
            let face: Vec<u32> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            let i = rows.binary_search(&face).expect("face present");
            m[i][j] = if skip % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Diagonal of the Smith normal form (nonzero entries only).
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut done = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // divisibility of the rest of the block
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t onto the diagonal
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Rational Betti numbers and integer torsion coefficients per degree.
pub fn oracle(maximal: &[Vec<u32>], up_to: usize) -> (Vec<usize>, Vec<Vec<i128>>) {
    let f = faces(maximal);
    let count = |d: usize| f.get(d).map_or(0, Vec::len);
    let diag: Vec<Vec<i128>> = (0..=up_to + 1)
        .map(|d| if d == 0 || count(d) == 0 { Vec::new() } else { smith_diagonal(boundary_matrix(&f[d - 1], &f[d])) })
        .collect();
    let betti = (0..=up_to).map(|d| count(d) - diag[d].len() - diag[d + 1].len()).collect();
    let torsion = (0..=up_to).map(|d| diag[d + 1].iter().copied().filter(|&x| x > 1).collect()).collect();
    (betti, torsion)
}

/// Least ratio over contiguous arcs of a sampled circle.
pub fn arc_oracle(space: &FiniteMMSpace, r: f64) -> Rational {
    let n = space.len();
    let mut best: Option<Rational> = None;
    for start in 0..n {
        for len in 1..n {
            let arc: Vec<usize> = (0..len).map(|i| (start + i) % n).collect();
            let vol = space.volume_of(arc.iter().copied());
            if vol > space.volume() / 2 {
                break;
            }
            let c = boundary_and_collar(space, &arc, r, space.resolution()).unwrap();
            let ratio = c.collar_volume / vol;
            if best.is_none_or(|b| ratio < b) {
                best = Some(ratio);
            }
        }
    }
    best.unwrap()
}

pub fn random_line_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteMMSpace {
    // distinct positions on a half-integer grid with random weights
    let mut slots: Vec<i64> = (0..3 * n as i64).collect();
    for i in (1..slots.len()).rev() {
        slots.swap(i, rng.gen_range(0..=i));
    }
    let mut pos: Vec<i64> = slots[..n].to_vec();
    pos.sort_unstable();
    let coords = pos.iter().map(|&p| p as f64 / 2.0).collect();
    let weights = (0..n).map(|_| q(rng.gen_range(1..=4), 2)).collect();
    FiniteMMSpace::from_coords(1, Geometry::Flat, coords, weights).unwrap().with_resolution(1.0)
}

/// `max_F mu_a(F) - mu_b(N(F, eps))` over every set of points in the closed ball.
pub fn deficiency_oracle(space: &FiniteMMSpace, mu_a: &[Rational], mu_b: &[Rational], p_a: usize, eps: f64, radius: f64) -> Rational {
    let ball: Vec<usize> = (0..space.len()).filter(|&x| space.dist(p_a, x) <= radius).collect();
    let mut worst = Rational::from_integer(0);
    for mask in 0u32..(1 << ball.len()) {
        let f: Vec<usize> = (0..ball.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ball[i]).collect();
        let lhs: Rational = f.iter().map(|&x| mu_a[x]).sum();
        let rhs: Rational = (0..space.len()).filter(|&y| f.iter().any(|&x| space.dist(x, y) < eps)).map(|y| mu_b[y]).sum();
        worst = worst.max(lhs - rhs);
    }
    worst
}

pub fn related_oracle(pair: &PointedMeasurePair<'_>, eps: f64, radius: f64) -> bool {
    let s = pair.ambient;
    let ok = |d: Rational| d < Rational::approximate_float(eps).unwrap();
    s.dist(pair.p1, pair.p2) < eps
        && ok(deficiency_oracle(s, &pair.mu1, &pair.mu2, pair.p1, eps, radius))
        && ok(deficiency_oracle(s, &pair.mu2, &pair.mu1, pair.p2, eps, radius))
}

pub fn random_measure(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| if rng.gen_bool(0.3) { q(0, 1) } else { q(rng.gen_range(1..=8), 8) }).collect()
}

/// A measure obtained by moving some mass of `mu` to neighbouring points.
pub fn perturb(rng: &mut ChaCha8Rng, mu: &[Rational]) -> Vec<Rational> {
    let mut out = mu.to_vec();
    for _ in 0..2 {
        let i = rng.gen_range(0..mu.len());
        let j = (i + 1).min(mu.len() - 1);
        let moved = out[i] / 2;
        out[i] -= moved;
        out[j] += moved;
    }
    out
}
