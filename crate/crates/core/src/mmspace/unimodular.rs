//! Unimodularity of a root law on a finite space.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::space::FiniteMMSpace;
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::simplicial::canon::{canonical_form, CanonInput};

/// Shared tables for computing many doubly-pointed codes of one space.
pub struct PointedCoder<'a> {
    space: &'a FiniteMMSpace,
    colors: Vec<u64>,
    pair: Vec<u32>,
}

impl<'a> PointedCoder<'a> {
    pub fn new(space: &'a FiniteMMSpace) -> Self {
        let mut distinct_w: Vec<Rational> = space.weights().to_vec();
        distinct_w.sort();
        distinct_w.dedup();
        let colors = space.weights().iter().map(|w| distinct_w.binary_search(w).unwrap_or(0) as u64).collect();
        let table = space.distance_table();
        let mut distinct_d: Vec<u64> = table.iter().map(|d| d.to_bits()).collect();
        distinct_d.sort_unstable();
        distinct_d.dedup();
        // distances are non-negative, so bit order is numeric order and zero gets label 0
        let pair = table.iter().map(|d| distinct_d.binary_search(&d.to_bits()).unwrap_or(0) as u32).collect();
        PointedCoder { space, colors, pair }
    }

    /// Code of `(space, p, q)` up to isometries preserving the weights and
    /// sending `p` to `p` and `q` to `q`.
    pub fn code(&self, p: usize, q: usize) -> Vec<u8> {
        let n = self.space.len();
        let fixed: Vec<usize> = if p == q { vec![p] } else { vec![p, q] };
        let input = CanonInput { n, colors: &self.colors, pair: &self.pair, fixed: &fixed };
        let space = self.space;
        canonical_form(&input, &|order: &[usize]| {
            let mut out = Vec::with_capacity(8 * n * n);
            out.extend((n as u32).to_be_bytes());
            out.push(u8::from(p == q));
            for &v in order {
                let w = space.weight(v);
                out.extend(w.numer().to_be_bytes());
                out.extend(w.denom().to_be_bytes());
            }
            for (i, &a) in order.iter().enumerate() {
                for &b in &order[i + 1..] {
                    out.extend(space.dist(a, b).to_bits().to_be_bytes());
                }
            }
            out
        })
    }
}

/// Doubly-pointed isomorphism code of `(space, p, q)`.
pub fn doubly_pointed_code(space: &FiniteMMSpace, p: usize, q: usize) -> Vec<u8> {
    PointedCoder::new(space).code(p, q)
}

/// Compares the left and right transported masses, bucketed by
/// doubly-pointed class: `(p, q)` carries `root_law(p) w(q)` on the left and
/// `root_law(q) w(p)` on the right.
pub fn unimodular_check(space: &FiniteMMSpace, root_law: &[Rational]) -> Result<bool> {
    let n = space.len();
    if root_law.len() != n {
        return Err(Error::contract("root law needs one mass per point"));
    }
    if root_law.iter().any(|m| *m < Rational::zero()) || root_law.iter().copied().sum::<Rational>() != Rational::one() {
        return Err(Error::contract("root law must be a probability vector"));
    }
    let coder = PointedCoder::new(space);
    let mut left: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
    let mut right: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
    for p in 0..n {
        for q in 0..n {
            let l = root_law[p] * space.weight(q);
            let r = root_law[q] * space.weight(p);
            if l.is_zero() && r.is_zero() {
                continue;
            }
            let code = coder.code(p, q);
            *left.entry(code.clone()).or_insert_with(Rational::zero) += l;
            *right.entry(code).or_insert_with(Rational::zero) += r;
        }
    }
    left.retain(|_, m| !m.is_zero());
    right.retain(|_, m| !m.is_zero());
    Ok(left == right)
}

/// The normalized volume measure as a root law.
pub fn volume_law(space: &FiniteMMSpace) -> Vec<Rational> {
    let total = space.volume();
    space.weights().iter().map(|w| w / total).collect()
}
