//! Plain-text space format.
//!
//! ```text
//! points 3
//! matrix
//! 0 1 2
//! 1 0 1
//! 2 1 0
//! weights
//! 1 1 0.5
//! ```
//!
//! A coordinate space replaces the matrix block by `coords <d> flat` or
//! `coords <d> torus <L>` and `n` rows of `d` numbers. An optional
//! `resolution <h>` line may follow the header. `#` starts a comment.

use std::fmt::Write as _;

use super::space::{FiniteMMSpace, Geometry, Metric};
use crate::error::{Error, Result};
use crate::numeric::{format_decimal, parse_rational, to_f64, Rational};

fn parse_length(token: &str, line: usize) -> Result<f64> {
    if let Ok(x) = token.parse::<f64>() {
        return Ok(x);
    }
    parse_rational(token).map(|q| to_f64(&q)).ok_or_else(|| Error::parse(line, format!("not a number: {token:?}")))
}

/// Canonical text of a space; `parse_space(&write_space(s))` reproduces `s` bit for bit.
pub fn write_space(space: &FiniteMMSpace) -> String {
    let n = space.len();
    let mut out = format!("points {n}\n");
    if let Some(h) = space.explicit_resolution() {
        let _ = writeln!(out, "resolution {h}");
    }
    match space.metric() {
        Metric::Table(t) => {
            out.push_str("matrix\n");
            for i in 0..n {
                let row: Vec<String> = t[i * n..(i + 1) * n].iter().map(|d| d.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        Metric::Coords { dim, geometry, coords } => {
            match geometry {
                Geometry::Flat => {
                    let _ = writeln!(out, "coords {dim} flat");
                }
                Geometry::Torus(l) => {
                    let _ = writeln!(out, "coords {dim} torus {l}");
                }
            }
            for i in 0..n {
                let row: Vec<String> = coords[i * dim..(i + 1) * dim].iter().map(|c| c.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    out.push_str("weights\n");
    let w: Vec<String> = space.weights().iter().map(format_decimal).collect();
    out.push_str(&w.join(" "));
    out.push('\n');
    out
}

pub fn parse_space(text: &str) -> Result<FiniteMMSpace> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| lines.next().ok_or_else(|| Error::parse(0, format!("unexpected end of input, expected {what}")));

    let (ln, header) = next("`points <n>`")?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["points", n] => n.parse().map_err(|_| Error::parse(ln, "point count is not an integer"))?,
        _ => return Err(Error::parse(ln, "expected `points <n>`")),
    };
    if n == 0 {
        return Err(Error::parse(ln, "a space needs at least one point"));
    }

    let (mut ln, mut line) = next("`matrix` or `coords`")?;
    let mut resolution = None;
    if let Some(rest) = line.strip_prefix("resolution") {
        resolution = Some(parse_length(rest.trim(), ln)?);
        (ln, line) = next("`matrix` or `coords`")?;
    }

    let row = |ln: usize, line: &str, len: usize| -> Result<Vec<f64>> {
        let values: Vec<f64> = line.split_whitespace().map(|t| parse_length(t, ln)).collect::<Result<_>>()?;
        if values.len() != len {
            return Err(Error::parse(ln, format!("expected {len} values, found {}", values.len())));
        }
        Ok(values)
    };

    let tokens: Vec<&str> = line.split_whitespace().collect();
    enum Body {
        Matrix(Vec<f64>),
        Coords(usize, Geometry, Vec<f64>),
    }
    let body = match tokens.as_slice() {
        ["matrix"] => {
            let mut table = Vec::with_capacity(n * n);
            for _ in 0..n {
                let (ln, l) = next("a matrix row")?;
                table.extend(row(ln, l, n)?);
            }
            Body::Matrix(table)
        }
        ["coords", d, rest @ ..] => {
            let dim: usize = d.parse().map_err(|_| Error::parse(ln, "dimension is not an integer"))?;
            if dim == 0 {
                return Err(Error::parse(ln, "dimension must be positive"));
            }
            let geometry = match rest {
                ["flat"] => Geometry::Flat,
                ["torus", l] => Geometry::Torus(parse_length(l, ln)?),
                _ => return Err(Error::parse(ln, "expected `flat` or `torus <L>`")),
            };
            let mut coords = Vec::with_capacity(n * dim);
            for _ in 0..n {
                let (ln, l) = next("a coordinate row")?;
                coords.extend(row(ln, l, dim)?);
            }
            Body::Coords(dim, geometry, coords)
        }
        _ => return Err(Error::parse(ln, "expected `matrix` or `coords <d> flat|torus <L>`")),
    };

    let (ln, line) = next("`weights`")?;
    if line != "weights" {
        return Err(Error::parse(ln, "expected `weights`"));
    }
    let mut weights: Vec<Rational> = Vec::with_capacity(n);
    let mut last = ln;
    while weights.len() < n {
        let (ln, l) = next("weights")?;
        last = ln;
        for t in l.split_whitespace() {
            weights.push(parse_rational(t).ok_or_else(|| Error::parse(ln, format!("not a rational weight: {t:?}")))?);
        }
    }
    if weights.len() != n {
        return Err(Error::parse(last, format!("expected {n} weights, found {}", weights.len())));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing content after weights"));
    }

    let space = match body {
        Body::Matrix(t) => FiniteMMSpace::from_table(t, weights)?,
        Body::Coords(dim, geometry, coords) => FiniteMMSpace::from_coords(dim, geometry, coords, weights)?,
    };
    Ok(match resolution {
        Some(h) => space.with_resolution(h),
        None => space,
    })
}
