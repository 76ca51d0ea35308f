use super::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::numeric::{format_rational, Rational};
use num_traits::Zero;

/// Connected complexes with positive rational weights and a common
/// multiplier `D` making every `D * t` a positive integer.
#[derive(Clone, Debug)]
pub struct WeightedFamily {
    members: Vec<(SimplicialComplex, Rational)>,
    multiplier: i64,
}

impl WeightedFamily {
    pub fn new(members: Vec<(SimplicialComplex, Rational)>, multiplier: i64) -> Result<Self> {
        if multiplier <= 0 {
            return Err(Error::malformed("copy multiplier must be positive"));
        }
        if members.is_empty() {
            return Err(Error::malformed("weighted family is empty"));
        }
        for (j, (k, t)) in members.iter().enumerate() {
            if *t <= Rational::zero() {
                return Err(Error::malformed(format!("member {j} has non-positive weight {}", format_rational(t))));
            }
            if !(*t * multiplier).is_integer() {
                return Err(Error::malformed(format!(
                    "member {j}: {multiplier} * {} is not an integer",
                    format_rational(t)
                )));
            }
            if !k.is_connected() {
                return Err(Error::malformed(format!("member {j} is not connected")));
            }
        }
        Ok(WeightedFamily { members, multiplier })
    }

    pub fn members(&self) -> &[(SimplicialComplex, Rational)] {
        &self.members
    }

    pub fn multiplier(&self) -> i64 {
        self.multiplier
    }

    /// `D * t_j` for each member.
    pub fn copies(&self) -> Vec<usize> {
        self.members.iter().map(|(_, t)| (*t * self.multiplier).to_integer() as usize).collect()
    }
}

/// `D * t_j` disjoint copies of each member, chained through their
/// basepoints (lowest vertex of each copy): copies of member 1 in order,
/// then member 2, and so on.
pub fn glue_weighted(fam: &WeightedFamily) -> SimplicialComplex {
    let copies = fam.copies();
    let max_dim = fam.members.iter().map(|(k, _)| k.max_dim()).max().unwrap_or(1).max(1);
    let mut generators: Vec<Vec<Vertex>> = Vec::new();
    let mut offset: Vertex = 0;
    let mut previous_base: Option<Vertex> = None;
    for ((k, _), &c) in fam.members.iter().zip(&copies) {
        let maximal = k.maximal_simplices();
        for _ in 0..c {
            generators.extend(maximal.iter().map(|s| s.iter().map(|&v| v + offset).collect::<Vec<_>>()));
            let base = offset;
            if let Some(prev) = previous_base {
                generators.push(vec![prev, base]);
            }
            previous_base = Some(base);
            offset += k.vertex_count() as Vertex;
        }
    }
    SimplicialComplex::close(offset as usize, generators, max_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{betti_numbers, generators};
    use num_rational::Ratio;

    #[test]
    fn single_copy_is_identity() {
        let fam = WeightedFamily::new(vec![(generators::cycle(3), Ratio::from_integer(1))], 1).unwrap();
        assert_eq!(glue_weighted(&fam), generators::cycle(3));
    }

    #[test]
    fn two_circles_half_weight() {
        let c = generators::cycle(3);
        let fam = WeightedFamily::new(vec![(c.clone(), Ratio::new(1, 2)), (c, Ratio::new(1, 2))], 2).unwrap();
        let g = glue_weighted(&fam);
        assert_eq!(g.vertex_count(), 6);
        let b = betti_numbers(&g, 1).unwrap();
        assert_eq!(b, vec![1, 2]);
        assert_eq!(Ratio::new(b[1] as i64, g.vertex_count() as i64), Ratio::new(1, 3));
    }

    #[test]
    fn torus_three_copies() {
        let fam = WeightedFamily::new(vec![(generators::torus7(), Ratio::from_integer(1))], 3).unwrap();
        let g = glue_weighted(&fam);
        assert_eq!(betti_numbers(&g, 2).unwrap(), vec![1, 6, 3]);
        assert_eq!(g.max_degree(), 6 + 2);
    }

    #[test]
    fn non_integral_copies_rejected() {
        let err = WeightedFamily::new(vec![(generators::cycle(3), Ratio::new(1, 3))], 2).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
    }

    #[test]
    fn disconnected_member_rejected() {
        let two = generators::cycle(3).disjoint_union(&generators::cycle(3));
        assert!(WeightedFamily::new(vec![(two, Ratio::from_integer(1))], 1).is_err());
    }
}
