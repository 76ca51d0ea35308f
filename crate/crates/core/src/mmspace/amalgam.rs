//! Gluing finite spaces along pseudo-metric link tables.

use super::space::FiniteMMSpace;
use crate::error::{Error, Result};
use crate::numeric::Rational;

const AGREE: f64 = 1e-12;

fn agree(a: f64, b: f64) -> bool {
    (a - b).abs() <= AGREE * a.abs().max(b.abs()).max(1.0)
}

/// A pseudo-metric on a subset of the disjoint union of the parts. Points
/// are numbered globally: part 0 first, then part 1, and so on.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkTable {
    pub points: Vec<usize>,
    /// Row-major `k x k` table over `points`.
    pub dist: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct AmalgamSpec {
    pub parts: Vec<FiniteMMSpace>,
    pub links: Vec<LinkTable>,
}

#[derive(Clone, Debug)]
pub struct Amalgam {
    pub space: FiniteMMSpace,
    /// Point of `space` that each global input point was merged into.
    pub class_of: Vec<usize>,
}

/// Chain-infimum pseudo-metric over the union of parts and links, with
/// zero-distance classes merged and their weights summed.
pub fn amalgamate(spec: &AmalgamSpec) -> Result<Amalgam> {
    if spec.parts.is_empty() {
        return Err(Error::malformed("amalgam needs at least one part"));
    }
    let mut offset = Vec::with_capacity(spec.parts.len());
    let mut n = 0;
    for p in &spec.parts {
        offset.push(n);
        n += p.len();
    }
    let part_of: Vec<usize> = spec.parts.iter().enumerate().flat_map(|(i, p)| std::iter::repeat_n(i, p.len())).collect();

    let mut d = vec![f64::INFINITY; n * n];
    for (pi, part) in spec.parts.iter().enumerate() {
        let o = offset[pi];
        for a in 0..part.len() {
            for b in 0..part.len() {
                d[(o + a) * n + o + b] = part.dist(a, b);
            }
        }
    }
    for (li, link) in spec.links.iter().enumerate() {
        let k = link.points.len();
        if link.dist.len() != k * k {
            return Err(Error::malformed(format!("link {li} table has the wrong size")));
        }
        for a in 0..k {
            let x = link.points[a];
            if x >= n {
                return Err(Error::malformed(format!("link {li} names point {x}, only {n} exist")));
            }
            for b in 0..k {
                let v = link.dist[a * k + b];
                let y = link.points[b];
                if !(v >= 0.0 && v.is_finite()) || v != link.dist[b * k + a] || (a == b && v != 0.0) {
                    return Err(Error::malformed(format!("link {li} is not a symmetric non-negative table with zero diagonal")));
                }
                if part_of[x] == part_of[y] && !agree(v, d[x * n + y]) {
                    return Err(Error::malformed(format!(
                        "link {li} gives dist({x}, {y}) = {v} but the part has {}",
                        d[x * n + y]
                    )));
                }
                d[x * n + y] = d[x * n + y].min(v);
            }
        }
    }
    for m in 0..n {
        for i in 0..n {
            let dim = d[i * n + m];
            if dim.is_infinite() {
                continue;
            }
            for j in 0..n {
                let via = dim + d[m * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    if d.iter().any(|v| v.is_infinite()) {
        return Err(Error::contract("parts are not chain-connected through the links"));
    }
    for (pi, part) in spec.parts.iter().enumerate() {
        let o = offset[pi];
        for a in 0..part.len() {
            for b in 0..part.len() {
                if !agree(d[(o + a) * n + o + b], part.dist(a, b)) {
                    return Err(Error::malformed(format!(
                        "links shorten the distance between points {a} and {b} of part {pi}"
                    )));
                }
            }
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for j in i..n {
            if d[i * n + j] == 0.0 {
                class_of[j] = c;
            }
        }
    }
    let m = reps.len();
    let mut weights = vec![Rational::from_integer(0); m];
    for (pi, part) in spec.parts.iter().enumerate() {
        for a in 0..part.len() {
            weights[class_of[offset[pi] + a]] += part.weight(a);
        }
    }
    let mut table = vec![0.0; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = d[reps[a] * n + reps[b]];
        }
    }
    let space = FiniteMMSpace::from_table(table, weights)?;
    Ok(Amalgam { space, class_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn pair(d: f64) -> FiniteMMSpace {
        FiniteMMSpace::make_space(&[vec![0.0, d], vec![d, 0.0]], vec![Ratio::new(1, 1); 2]).unwrap()
    }

    #[test]
    fn glue_two_segments_at_a_point() {
        let spec = AmalgamSpec {
            parts: vec![pair(2.0), pair(2.0)],
            links: vec![LinkTable { points: vec![1, 2], dist: vec![0.0, 0.0, 0.0, 0.0] }],
        };
        let a = amalgamate(&spec).unwrap();
        assert_eq!(a.space.len(), 3);
        assert_eq!(a.class_of, vec![0, 1, 1, 2]);
        assert_eq!(a.space.dist(0, 2), 4.0);
        assert_eq!(a.space.weight(1), Ratio::new(2, 1));
    }

    #[test]
    fn single_part_is_unchanged() {
        let p = pair(3.0);
        let a = amalgamate(&AmalgamSpec { parts: vec![p.clone()], links: vec![] }).unwrap();
        assert_eq!(a.space, p);
    }

    #[test]
    fn two_segments_close_up_into_a_circle() {
        let seg = FiniteMMSpace::make_space(
            &[vec![0.0, 0.5, 1.0], vec![0.5, 0.0, 0.5], vec![1.0, 0.5, 0.0]],
            vec![Ratio::new(1, 1); 3],
        )
        .unwrap();
        let zero = vec![0.0; 4];
        let spec = AmalgamSpec {
            parts: vec![seg.clone(), seg],
            links: vec![
                LinkTable { points: vec![0, 3], dist: zero.clone() },
                LinkTable { points: vec![2, 5], dist: zero },
            ],
        };
        let a = amalgamate(&spec).unwrap();
        assert_eq!(a.space.len(), 4);
        assert_eq!(a.space.dist(a.class_of[1], a.class_of[4]), 1.0);
    }

    #[test]
    fn failures() {
        let spec = AmalgamSpec { parts: vec![pair(1.0), pair(1.0)], links: vec![] };
        assert!(matches!(amalgamate(&spec), Err(Error::Contract(_))));
        let spec = AmalgamSpec {
            parts: vec![pair(1.0)],
            links: vec![LinkTable { points: vec![0, 1], dist: vec![0.0, 2.0, 2.0, 0.0] }],
        };
        assert!(matches!(amalgamate(&spec), Err(Error::Malformed(_))));
    }
}
