//! Experiment runners producing [`ExperimentReport`]s.

use super::cover::{voltage_cover, VoltageGraph};
use super::report::{ExpectedLimit, ExperimentReport, Value};
use crate::error::{Error, Result};
use crate::mmspace::{cheeger_radius_r, circle_space, CheegerOptions};
use crate::numeric::Rational;
use crate::simplicial::{betti_numbers, local_profile, profile_distance, SimplicialComplex};

fn betti_at(k: &SimplicialComplex, d: usize) -> Result<usize> {
    if k.vertex_count() == 0 {
        return Ok(0);
    }
    if d > k.max_dim() {
        return Ok(0);
    }
    Ok(betti_numbers(k, d)?[d])
}

/// Normalised Betti numbers `b_d(cover) / n` along a sequence of covers.
///
/// Columns: `n, b_d, ratio`, then `closed_form` (`E - V + 1`) in degree 1
/// and `error` (`ratio - limit`) when a reference limit is given. The
/// `chain` parameter is `nested` when every degree divides the next and
/// `non-chain` otherwise.
pub fn luck_experiment(
    chain: &[VoltageGraph],
    d: usize,
    expected_limit: Option<ExpectedLimit>,
) -> Result<ExperimentReport> {
    let mut columns = vec!["n", "b_d", "ratio"];
    if d == 1 {
        columns.push("closed_form");
    }
    if expected_limit.is_some() {
        columns.push("error");
    }
    let mut report = ExperimentReport::new("luck", 0, &columns);
    report.param("degree", d);
    let nested = chain.windows(2).all(|w| w[1].degree % w[0].degree == 0);
    report.param("chain", if nested { "nested" } else { "non-chain" });
    for vg in chain {
        let cover = voltage_cover(vg);
        if !cover.is_connected() {
            return Err(Error::contract(format!(
                "the degree-{} cover is disconnected; covers in a chain must be connected",
                vg.degree
            )));
        }
        let b = betti_at(&cover.subdivided(), d)?;
        let n = vg.degree as i64;
        let ratio = Rational::new(b as i64, n);
        let mut row: Vec<Value> = vec![n.into(), b.into(), ratio.into()];
        if d == 1 {
            row.push(cover.cycle_rank().into());
        }
        if let Some(l) = &expected_limit {
            row.push((ratio - l.value).into());
        }
        report.push(row)?;
    }
    if expected_limit.is_some() {
        report.notes.push("limit column: liminf of ratio along the chosen chain only".into());
    }
    report.expected_limit = expected_limit;
    Ok(report)
}

/// `b_d / |V|` along a family, with profile distances to the last member.
///
/// Columns: `index, vertices, max_degree, b_d, ratio`, then one `dist_r{r}`
/// per radius. The family-wide maximum degree is recorded as the `max_degree`
/// parameter.
pub fn elek_experiment(family: &[SimplicialComplex], d: usize, r_values: &[usize]) -> Result<ExperimentReport> {
    let Some(last) = family.last() else {
        return Err(Error::contract("empty family"));
    };
    let names: Vec<String> = r_values.iter().map(|r| format!("dist_r{r}")).collect();
    let mut columns = vec!["index", "vertices", "max_degree", "b_d", "ratio"];
    columns.extend(names.iter().map(String::as_str));
    let mut report = ExperimentReport::new("elek", 0, &columns);
    report.param("degree", d);
    report.param("radii", r_values.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "));
    let reference = r_values.iter().map(|&r| local_profile(last, r)).collect::<Result<Vec<_>>>()?;
    let mut delta = 0;
    for (i, k) in family.iter().enumerate() {
        let v = k.vertex_count();
        if v == 0 {
            return Err(Error::contract(format!("member {i} is empty")));
        }
        delta = delta.max(k.max_degree());
        let b = betti_at(k, d)?;
        let mut row: Vec<Value> = vec![i.into(), v.into(), k.max_degree().into(), b.into()];
        row.push(Rational::new(b as i64, v as i64).into());
        for (&r, p) in r_values.iter().zip(&reference) {
            row.push(profile_distance(&local_profile(k, r)?, p)?.into());
        }
        report.push(row)?;
    }
    report.param("max_degree", delta);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayerVietoris {
    /// `b_d(K^U) <= b_d(K) + b_d(K^U ∩ K^V)`.
    pub holds: bool,
    pub b_u: usize,
    pub b_k: usize,
    pub b_intersection: usize,
}

/// Checks the inequality for the full subcomplexes on `u` and `v`, which must
/// together contain every simplex of `k`.
pub fn mayer_vietoris_check(k: &SimplicialComplex, u: &[usize], v: &[usize], d: usize) -> Result<MayerVietoris> {
    let n = k.vertex_count();
    let mut in_u = vec![false; n];
    let mut in_v = vec![false; n];
    for (set, flags) in [(u, &mut in_u), (v, &mut in_v)] {
        for &x in set {
            if x >= n {
                return Err(Error::contract(format!("vertex {x} out of range")));
            }
            flags[x] = true;
        }
    }
    for s in k.maximal_simplices() {
        let all = |f: &[bool]| s.iter().all(|&x| f[x as usize]);
        if !all(&in_u) && !all(&in_v) {
            return Err(Error::contract(format!("simplex {s:?} lies in neither full subcomplex")));
        }
    }
    let both: Vec<bool> = (0..n).map(|x| in_u[x] && in_v[x]).collect();
    let b_u = betti_at(&k.induced(&in_u).0, d)?;
    let b_k = betti_at(k, d)?;
    let b_intersection = betti_at(&k.induced(&both).0, d)?;
    Ok(MayerVietoris { holds: b_u <= b_k + b_intersection, b_u, b_k, b_intersection })
}

/// `h_r` of `circle_space(L, step)` for each `L`, in the given order.
///
/// Columns: `length, points, h_r`. The `monotone` parameter records whether
/// the values are non-increasing in `L`.
pub fn cheeger_trend(lengths: &[Rational], step: Rational, r: f64, options: CheegerOptions) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("cheeger", options.seed, &["length", "points", "h_r"]);
    report.param("radius", r);
    report.param("step", crate::numeric::format_decimal(&step));
    report.param("mode", format!("{:?}", options.mode).to_lowercase());
    let mut by_length: Vec<(Rational, Rational)> = Vec::new();
    for &l in lengths {
        let space = circle_space(l, step)?;
        let res = cheeger_radius_r(&space, r, options)?;
        if 2.0 * r >= crate::numeric::to_f64(&l) / 2.0 {
            report.notes.push(format!("length {l}: collar reaches across the circle"));
        }
        by_length.push((l, res.value));
        report.push(vec![l.into(), space.len().into(), res.value.into()])?;
    }
    by_length.sort();
    let monotone = by_length.windows(2).all(|w| w[0].0 == w[1].0 || w[1].1 <= w[0].1);
    report.param("monotone", monotone);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::generators;

    #[test]
    fn wedge_ratios() {
        for r in 2..=4 {
            let chain: Vec<_> = [1, 2, 4, 8, 16].iter().map(|&n| VoltageGraph::cyclic_wedge(r, n).unwrap()).collect();
            let limit = ExpectedLimit { value: Rational::from_integer(r as i64 - 1), provenance: "free group".into() };
            let rep = luck_experiment(&chain, 1, Some(limit)).unwrap();
            for row in &rep.rows {
                let n = row[0].exact().unwrap();
                assert_eq!(row[2].exact().unwrap(), Rational::from_integer(r as i64 - 1) + n.recip());
                assert_eq!(row[1], row[3]);
                assert_eq!(row[4].exact().unwrap(), n.recip());
            }
            assert_eq!(rep.params["chain"], "nested");
        }
    }

    #[test]
    fn non_dividing_degrees_are_labelled() {
        let chain: Vec<_> = [2, 5].iter().map(|&n| VoltageGraph::cyclic_wedge(2, n).unwrap()).collect();
        assert_eq!(luck_experiment(&chain, 1, None).unwrap().params["chain"], "non-chain");
    }

    #[test]
    fn disconnected_cover_rejected() {
        let id = VoltageGraph::new(1, 3, vec![(0, 0, vec![0, 1, 2])]).unwrap();
        assert!(luck_experiment(&[id], 1, None).is_err());
    }

    #[test]
    fn torus_family() {
        let fam: Vec<_> = [8, 12].iter().map(|&n| generators::triangulated_torus(n)).collect();
        let rep = elek_experiment(&fam, 1, &[2]).unwrap();
        assert_eq!(rep.rows[0][4].exact().unwrap(), Rational::new(2, 64));
        assert_eq!(rep.rows[0][5].exact().unwrap(), Rational::from_integer(0));
        assert_eq!(rep.params["max_degree"], "6");
    }

    #[test]
    fn mayer_vietoris_on_a_hexagon() {
        let c6 = generators::cycle(6);
        let mv = mayer_vietoris_check(&c6, &[0, 1, 2, 3], &[3, 4, 5, 0], 1).unwrap();
        assert_eq!(mv, MayerVietoris { holds: true, b_u: 0, b_k: 1, b_intersection: 0 });
        assert!(mayer_vietoris_check(&c6, &[0, 1, 2], &[3, 4, 5], 1).is_err());
    }
}
