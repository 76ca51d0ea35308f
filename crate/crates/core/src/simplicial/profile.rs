use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::complex::SimplicialComplex;
use super::rooted::{all_balls, canonical_code};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Empirical law of the rooted `r`-ball class about a uniform random vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    radius: usize,
    masses: BTreeMap<Vec<u8>, Rational>,
}

impl Profile {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn masses(&self) -> &BTreeMap<Vec<u8>, Rational> {
        &self.masses
    }

    pub fn class_count(&self) -> usize {
        self.masses.len()
    }

    pub fn total_mass(&self) -> Rational {
        self.masses.values().copied().sum()
    }
}

pub fn local_profile(k: &SimplicialComplex, r: usize) -> Result<Profile> {
    if k.vertex_count() == 0 {
        return Err(Error::malformed("local profile of an empty complex"));
    }
    if r == 0 {
        return Err(Error::contract("profile radius must be positive"));
    }
    let n = k.vertex_count() as i64;
    let mut counts: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    for ball in all_balls(k, r) {
        *counts.entry(canonical_code(&ball)).or_insert(0) += 1;
    }
    let masses = counts.into_iter().map(|(code, c)| (code, Rational::new(c, n))).collect();
    Ok(Profile { radius: r, masses })
}

/// Total-variation distance between two profiles of the same radius.
pub fn profile_distance(p: &Profile, q: &Profile) -> Result<Rational> {
    if p.radius != q.radius {
        return Err(Error::contract(format!("profile radii differ ({} vs {})", p.radius, q.radius)));
    }
    let mut total = Rational::zero();
    for (code, &m) in &p.masses {
        let other = q.masses.get(code).copied().unwrap_or_else(Rational::zero);
        total += (m - other).abs();
    }
    for (code, &m) in &q.masses {
        if !p.masses.contains_key(code) {
            total += m;
        }
    }
    Ok(total / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::generators;
    use num_rational::Ratio;

    #[test]
    fn cycle_has_one_class() {
        let p = local_profile(&generators::cycle(8), 1).unwrap();
        assert_eq!(p.class_count(), 1);
        assert_eq!(p.total_mass(), Ratio::from_integer(1));
    }

    #[test]
    fn path_census() {
        let p = local_profile(&generators::path(10), 1).unwrap();
        let mut masses: Vec<Rational> = p.masses().values().copied().collect();
        masses.sort();
        assert_eq!(masses, vec![Ratio::new(2, 10), Ratio::new(8, 10)]);
    }

    #[test]
    fn c5_and_c6_agree_at_radius_one() {
        let a = local_profile(&generators::cycle(5), 1).unwrap();
        let b = local_profile(&generators::cycle(6), 1).unwrap();
        assert_eq!(profile_distance(&a, &b).unwrap(), Ratio::from_integer(0));
    }

    #[test]
    fn path_vs_cycle() {
        let a = local_profile(&generators::path(10), 1).unwrap();
        let b = local_profile(&generators::cycle(10), 1).unwrap();
        assert_eq!(profile_distance(&a, &b).unwrap(), Ratio::new(2, 10));
    }

    #[test]
    fn disjoint_support_is_one() {
        let a = local_profile(&generators::cycle(6), 1).unwrap();
        let b = local_profile(&generators::star(3).disjoint_union(&generators::star(3)), 1).unwrap();
        // the star's leaves at r = 1 see a 2-vertex path, never a 3-vertex one centred at the root
        assert_eq!(profile_distance(&a, &b).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn radius_mismatch_is_contract_error() {
        let a = local_profile(&generators::cycle(6), 1).unwrap();
        let b = local_profile(&generators::cycle(6), 2).unwrap();
        assert!(matches!(profile_distance(&a, &b), Err(Error::Contract(_))));
    }

    #[test]
    fn empty_complex_rejected() {
        assert!(matches!(local_profile(&SimplicialComplex::empty(2), 1), Err(Error::Malformed(_))));
    }
}
