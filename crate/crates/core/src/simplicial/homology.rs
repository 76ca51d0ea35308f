//! Betti numbers over the rationals by exact fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Integer coefficients for the eliminator. `i128` runs with checked
/// arithmetic and the whole rank computation is redone in `BigInt` on overflow.
trait Coeff: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a * x - b * y`
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(a: &Self, b: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Coeff for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        Integer::gcd(a, b)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        Integer::gcd(a, b)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

type SparseVec<T> = Vec<(usize, T)>;

struct Overflow;

/// Rank over Q of a matrix given by sparse columns with entries sorted by row.
pub fn rank_of_columns(rows: usize, columns: &[Vec<(usize, i64)>]) -> usize {
    match rank_generic::<i128>(rows, columns) {
        Ok(r) => r,
        Err(Overflow) => rank_generic::<BigInt>(rows, columns).unwrap_or_else(|_| unreachable!()),
    }
}

fn rank_generic<T: Coeff>(rows: usize, columns: &[Vec<(usize, i64)>]) -> std::result::Result<usize, Overflow> {
    // pivot[r] holds a reduced column whose lowest nonzero row is r
    let mut pivot: Vec<Option<SparseVec<T>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut v: SparseVec<T> = col.iter().map(|&(r, x)| (r, T::from_i64(x))).collect();
        while let Some(&(lead, _)) = v.first() {
            match &pivot[lead] {
                None => {
                    normalize(&mut v);
                    pivot[lead] = Some(v);
                    rank += 1;
                    break;
                }
                Some(p) => {
                    v = eliminate(&v, p)?;
                }
            }
        }
    }
    Ok(rank)
}

/// Clears the leading entry of `v` using pivot column `p` (same leading row).
fn eliminate<T: Coeff>(v: &SparseVec<T>, p: &SparseVec<T>) -> std::result::Result<SparseVec<T>, Overflow> {
    let (a, b) = (&p[0].1, &v[0].1);
    let g = T::gcd(a, b);
    let (a, b) = (a.div_exact(&g), b.div_exact(&g));
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < p.len() {
        let (row, x, y) = match (v.get(i), p.get(j)) {
            (Some(&(ri, ref xi)), Some(&(rj, ref yj))) if ri == rj => {
                i += 1;
                j += 1;
                (ri, xi, yj)
            }
            (Some(&(ri, ref xi)), Some(&(rj, _))) if ri < rj => {
                i += 1;
                (ri, xi, &zero)
            }
            (Some(&(ri, ref xi)), None) => {
                i += 1;
                (ri, xi, &zero)
            }
            (_, Some(&(rj, ref yj))) => {
                j += 1;
                (rj, &zero, yj)
            }
            (None, None) => unreachable!(),
        };
        let value = T::combine(&a, x, &b, y).ok_or(Overflow)?;
        if !value.is_zero() {
            out.push((row, value));
        }
    }
    normalize(&mut out);
    Ok(out)
}

/// Divides out the content so entries stay small.
fn normalize<T: Coeff>(v: &mut SparseVec<T>) {
    if v.iter().any(|(_, x)| x.is_unit()) {
        return;
    }
    let mut g = T::from_i64(0);
    for (_, x) in v.iter() {
        g = T::gcd(&g, x);
        if g.is_unit() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// Sparse columns of the boundary map from `d`-simplices to `(d-1)`-simplices.
pub fn boundary_columns(k: &SimplicialComplex, d: usize) -> Vec<Vec<(usize, i64)>> {
    let mut cols = Vec::with_capacity(k.count(d));
    let mut face: Vec<Vertex> = Vec::with_capacity(d);
    for s in k.simplices(d) {
        let mut col = Vec::with_capacity(d + 1);
        for skip in 0..=d {
            face.clear();
            face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
            let row = k.index_of(&face).expect("complex is downward closed");
            col.push((row, if skip % 2 == 0 { 1 } else { -1 }));
        }
        col.sort_unstable_by_key(|&(r, _)| r);
        cols.push(col);
    }
    cols
}

/// Rank of the boundary map out of dimension `d` (zero for `d = 0`).
pub fn boundary_rank(k: &SimplicialComplex, d: usize) -> usize {
    if d == 0 || k.count(d) == 0 {
        return 0;
    }
    rank_of_columns(k.count(d - 1), &boundary_columns(k, d))
}

/// `b_0..=b_up_to` with rational coefficients.
pub fn betti_numbers(k: &SimplicialComplex, up_to: usize) -> Result<Vec<usize>> {
    if up_to > k.max_dim() {
        return Err(Error::contract(format!(
            "Betti numbers requested up to {up_to} but the complex stores simplices only up to dimension {}",
            k.max_dim()
        )));
    }
    let ranks: Vec<usize> = (0..=up_to + 1).map(|d| boundary_rank(k, d)).collect();
    Ok((0..=up_to).map(|d| k.count(d) - ranks[d] - ranks[d + 1]).collect())
}

/// Alternating sum of face counts.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    (0..=k.dim().unwrap_or(0))
        .map(|d| {
            let c = k.count(d) as i64;
            if d % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}

/// Sum of `(-1)^d b_d`; equals the Euler characteristic of a finite complex.
pub fn alternating_betti_sum(betti: &[usize]) -> i64 {
    betti
        .iter()
        .enumerate()
        .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}
