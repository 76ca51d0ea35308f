use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, to_f64, Rational};

/// Relative slack allowed in the triangle-inequality check, for decimal
/// inputs that do not round-trip through binary floating point.
const TRIANGLE_SLACK: f64 = 1e-12;

/// Ambient geometry of a coordinate-backed space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geometry {
    /// Euclidean distance in `R^d`.
    Flat,
    /// Euclidean quotient metric on `R^d / (L Z)^d`.
    Torus(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Metric {
    /// Row-major `n x n` distance table.
    Table(Vec<f64>),
    /// Points in `R^dim` (or the torus); distances computed on demand.
    Coords { dim: usize, geometry: Geometry, coords: Vec<f64> },
}

/// A finite metric measure space: `n` points, a metric, and positive
/// rational point masses.
#[derive(Debug)]
pub struct FiniteMMSpace {
    n: usize,
    metric: Metric,
    weights: Vec<Rational>,
    labels: Option<Vec<String>>,
    /// Step of the generating grid, when known.
    step: Option<f64>,
    min_gap: OnceLock<f64>,
}

impl Clone for FiniteMMSpace {
    fn clone(&self) -> Self {
        let min_gap = OnceLock::new();
        if let Some(&h) = self.min_gap.get() {
            let _ = min_gap.set(h);
        }
        FiniteMMSpace {
            n: self.n,
            metric: self.metric.clone(),
            weights: self.weights.clone(),
            labels: self.labels.clone(),
            step: self.step,
            min_gap,
        }
    }
}

impl PartialEq for FiniteMMSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.metric == other.metric && self.weights == other.weights
    }
}

fn check_weights(weights: &[Rational], n: usize) -> Result<()> {
    if weights.len() != n {
        return Err(Error::malformed(format!("{} weights for {n} points", weights.len())));
    }
    if n == 0 {
        return Err(Error::malformed("a space needs at least one point"));
    }
    if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| **w <= Rational::zero()) {
        return Err(Error::malformed(format!("weight of point {i} is not positive ({})", format_rational(w))));
    }
    Ok(())
}

impl FiniteMMSpace {
    /// Validated space from an explicit distance table.
    pub fn from_table(dist: Vec<f64>, weights: Vec<Rational>) -> Result<Self> {
        let n = weights.len();
        check_weights(&weights, n)?;
        if dist.len() != n * n {
            return Err(Error::malformed(format!("distance table has {} entries, expected {}", dist.len(), n * n)));
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::malformed(format!("dist({i}, {i}) is not zero")));
            }
            for j in 0..n {
                let d = dist[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::malformed(format!("dist({i}, {j}) = {d} is not a finite non-negative number")));
                }
                if i != j && d == 0.0 {
                    return Err(Error::malformed(format!("distinct points {i} and {j} are at distance 0")));
                }
                if d != dist[j * n + i] {
                    return Err(Error::malformed(format!("distance table is not symmetric at ({i}, {j})")));
                }
            }
        }
        for j in 0..n {
            for i in 0..n {
                let dij = dist[i * n + j];
                for k in 0..n {
                    let direct = dist[i * n + k];
                    let via = dij + dist[j * n + k];
                    if direct > via * (1.0 + TRIANGLE_SLACK) {
                        let (lo, hi) = if i < k { (i, k) } else { (k, i) };
                        return Err(Error::Triangle { i: lo, j, k: hi });
                    }
                }
            }
        }
        Ok(Self::assemble(n, Metric::Table(dist), weights, None))
    }

    /// Space from rows of a distance matrix.
    pub fn make_space(rows: &[Vec<f64>], weights: Vec<Rational>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::malformed(format!("row {bad} of the distance matrix has the wrong length")));
        }
        Self::from_table(rows.concat(), weights)
    }

    /// Space of points in `R^dim` or on a flat torus.
    pub fn from_coords(dim: usize, geometry: Geometry, coords: Vec<f64>, weights: Vec<Rational>) -> Result<Self> {
        let n = weights.len();
        check_weights(&weights, n)?;
        if dim == 0 || coords.len() != n * dim {
            return Err(Error::malformed(format!("expected {} coordinates, got {}", n * dim, coords.len())));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::malformed("coordinates must be finite"));
        }
        let coords = match geometry {
            Geometry::Flat => coords,
            Geometry::Torus(l) => {
                if !(l > 0.0 && l.is_finite()) {
                    return Err(Error::malformed("torus side must be positive"));
                }
                coords.into_iter().map(|c| c.rem_euclid(l)).collect()
            }
        };
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::with_capacity(n);
        for i in 0..n {
            let key: Vec<u64> = coords[i * dim..(i + 1) * dim].iter().map(|c| (c + 0.0).to_bits()).collect();
            if let Some(j) = seen.insert(key, i) {
                return Err(Error::malformed(format!("points {j} and {i} coincide")));
            }
        }
        Ok(Self::assemble(n, Metric::Coords { dim, geometry, coords }, weights, None))
    }

    fn assemble(n: usize, metric: Metric, weights: Vec<Rational>, step: Option<f64>) -> Self {
        FiniteMMSpace { n, metric, weights, labels: None, step, min_gap: OnceLock::new() }
    }

    pub fn with_resolution(self, h: f64) -> Self {
        FiniteMMSpace { step: Some(h), ..self }
    }

    /// Resolution set explicitly by a generator or the input file.
    pub fn explicit_resolution(&self) -> Option<f64> {
        self.step
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::malformed("label count does not match point count"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> Rational {
        self.weights[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn volume(&self) -> Rational {
        self.weights.iter().copied().sum()
    }

    pub fn volume_of(&self, points: impl IntoIterator<Item = usize>) -> Rational {
        crate::numeric::sum_at(&self.weights, points)
    }

    pub(crate) fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn is_coordinate_backed(&self) -> bool {
        matches!(self.metric, Metric::Coords { .. })
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.metric {
            Metric::Table(t) => t[i * self.n + j],
            Metric::Coords { dim, geometry, coords } => {
                let (a, b) = (&coords[i * dim..(i + 1) * dim], &coords[j * dim..(j + 1) * dim]);
                let mut sq = 0.0;
                for (x, y) in a.iter().zip(b) {
                    let mut d = (x - y).abs();
                    if let Geometry::Torus(l) = geometry {
                        d = d.min(l - d);
                    }
                    sq += d * d;
                }
                sq.sqrt()
            }
        }
    }

    /// Coordinates of point `i` when the space is coordinate-backed.
    pub fn coords_of(&self, i: usize) -> Option<&[f64]> {
        match &self.metric {
            Metric::Coords { dim, coords, .. } => Some(&coords[i * dim..(i + 1) * dim]),
            Metric::Table(_) => None,
        }
    }

    /// Construction step `h` of a generated net; for other spaces the least
    /// distance between two distinct points.
    pub fn resolution(&self) -> f64 {
        if let Some(h) = self.step {
            return h;
        }
        *self.min_gap.get_or_init(|| {
            if self.n < 2 {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for i in 0..self.n {
                for j in i + 1..self.n {
                    best = best.min(self.dist(i, j));
                }
            }
            best
        })
    }

    /// Full distance table (quadratic memory).
    pub fn distance_table(&self) -> Vec<f64> {
        match &self.metric {
            Metric::Table(t) => t.clone(),
            Metric::Coords { .. } => {
                let mut t = vec![0.0; self.n * self.n];
                for i in 0..self.n {
                    for j in 0..self.n {
                        t[i * self.n + j] = self.dist(i, j);
                    }
                }
                t
            }
        }
    }

    /// Points within `r` of `center` (`<= r` when `closed`, `< r` otherwise).
    pub fn ball(&self, center: usize, r: f64, closed: bool) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| {
                let d = self.dist(center, j);
                if closed {
                    d <= r
                } else {
                    d < r
                }
            })
            .collect()
    }

    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Graph on points joined when at distance `<= h`.
    pub fn adjacency_within(&self, h: f64) -> Vec<Vec<usize>> {
        let index = SpatialIndex::over(self, (0..self.n).collect(), h.max(f64::MIN_POSITIVE));
        (0..self.n)
            .map(|i| index.within(i, h, true).into_iter().filter(|&j| j != i).collect())
            .collect()
    }
}

/// Parameter `x / h` as a positive integer, or an error naming `what`.
fn steps(x: Rational, h: Rational, what: &str) -> Result<usize> {
    if h <= Rational::zero() {
        return Err(Error::malformed("resolution must be positive"));
    }
    let k = x / h;
    if !k.is_integer() || k <= Rational::zero() {
        return Err(Error::malformed(format!(
            "{what} {} is not a positive multiple of the resolution {}",
            format_rational(&x),
            format_rational(&h)
        )));
    }
    k.to_integer().to_usize().ok_or_else(|| Error::malformed("too many points"))
}

/// Circle of circumference `length` sampled every `h`, arc-length metric, weight `h` per point.
pub fn circle_space(length: Rational, h: Rational) -> Result<FiniteMMSpace> {
    let k = steps(length, h, "circumference")?;
    if k < 3 {
        return Err(Error::malformed(format!("circle needs at least 3 points, got {k}")));
    }
    let hf = to_f64(&h);
    let mut table = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            let d = i.abs_diff(j);
            table[i * k + j] = d.min(k - d) as f64 * hf;
        }
    }
    Ok(FiniteMMSpace::assemble(k, Metric::Table(table), vec![h; k], Some(hf)))
}

/// Square flat torus of side `side` sampled on an `h`-grid; point `(i, j)` has
/// index `i * k + j` and weight `h^2`.
pub fn torus_space(side: Rational, h: Rational) -> Result<FiniteMMSpace> {
    let k = steps(side, h, "side")?;
    if k < 3 {
        return Err(Error::malformed(format!("torus needs at least 3 points per side, got {k}")));
    }
    let hf = to_f64(&h);
    let mut coords = Vec::with_capacity(2 * k * k);
    for i in 0..k {
        for j in 0..k {
            coords.push(i as f64 * hf);
            coords.push(j as f64 * hf);
        }
    }
    let metric = Metric::Coords { dim: 2, geometry: Geometry::Torus(to_f64(&side)), coords };
    Ok(FiniteMMSpace::assemble(k * k, metric, vec![h * h; k * k], Some(hf)))
}

/// Metric graph with each edge subdivided into steps of `h`; weight `h` per
/// sample point. Sample points are the graph vertices (ids `0..V`) followed by
/// interior points edge by edge.
pub fn metric_graph_space(edges: &[(usize, usize, Rational)], h: Rational) -> Result<FiniteMMSpace> {
    let vertex_count = edges.iter().map(|&(a, b, _)| a.max(b) + 1).max().unwrap_or(0);
    if vertex_count == 0 {
        return Err(Error::malformed("metric graph has no edges"));
    }
    let mut labels: Vec<String> = (0..vertex_count).map(|v| format!("v{v}")).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for (e, &(a, b, len)) in edges.iter().enumerate() {
        let m = steps(len, h, "edge length")?;
        let mut prev = a;
        for t in 1..m {
            let id = adj.len();
            adj.push(Vec::new());
            labels.push(format!("e{e}.{t}"));
            adj[prev].push(id);
            adj[id].push(prev);
            prev = id;
        }
        adj[prev].push(b);
        adj[b].push(prev);
    }
    let n = adj.len();
    let hf = to_f64(&h);
    let mut table = vec![0.0; n * n];
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return Err(Error::malformed("metric graph is disconnected"));
        }
        for t in 0..n {
            table[s * n + t] = dist[t] as f64 * hf;
        }
    }
    if (0..n).any(|i| (0..n).any(|j| i != j && table[i * n + j] == 0.0)) {
        return Err(Error::malformed("metric graph has a loop or parallel edge of zero length"));
    }
    let space = FiniteMMSpace::assemble(n, Metric::Table(table), vec![h; n], Some(hf));
    space.with_labels(labels)
}

/// Bucket grid over a subset of the points of a space, for radius queries.
/// Falls back to a linear scan for table metrics and for dimension above 3.
pub(crate) struct SpatialIndex<'a> {
    space: &'a FiniteMMSpace,
    ids: Vec<usize>,
    grid: Option<Grid>,
}

struct Grid {
    dim: usize,
    cell: f64,
    /// Cells per axis on a torus.
    wrap: Option<i64>,
    buckets: Buckets,
}

enum Buckets {
    /// Row-major over the bounding box of occupied cells.
    Dense { origin: [i64; 3], extent: [i64; 3], cells: Vec<Vec<usize>> },
    Sparse(HashMap<[i64; 3], Vec<usize>>),
}

impl Buckets {
    fn build(keys: &[[i64; 3]]) -> Self {
        if keys.is_empty() {
            return Buckets::Sparse(HashMap::new());
        }
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for k in keys {
            for a in 0..3 {
                lo[a] = lo[a].min(k[a]);
                hi[a] = hi[a].max(k[a]);
            }
        }
        let extent = [0, 1, 2].map(|a| hi[a].saturating_sub(lo[a]).saturating_add(1));
        let volume = extent.iter().try_fold(1i64, |acc, &e| acc.checked_mul(e));
        match volume {
            Some(v) if v as usize <= 4 * keys.len() + 4096 => {
                let mut cells = vec![Vec::new(); v as usize];
                for (pos, k) in keys.iter().enumerate() {
                    let slot = ((k[0] - lo[0]) * extent[1] + (k[1] - lo[1])) * extent[2] + (k[2] - lo[2]);
                    cells[slot as usize].push(pos);
                }
                Buckets::Dense { origin: lo, extent, cells }
            }
            _ => {
                let mut map: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
                for (pos, k) in keys.iter().enumerate() {
                    map.entry(*k).or_default().push(pos);
                }
                Buckets::Sparse(map)
            }
        }
    }

    fn get(&self, k: [i64; 3]) -> Option<&[usize]> {
        match self {
            Buckets::Dense { origin, extent, cells } => {
                let mut slot = 0i64;
                for a in 0..3 {
                    let off = k[a].checked_sub(origin[a])?;
                    if off < 0 || off >= extent[a] {
                        return None;
                    }
                    slot = slot * extent[a] + off;
                }
                Some(&cells[slot as usize])
            }
            Buckets::Sparse(map) => map.get(&k).map(Vec::as_slice),
        }
    }
}

impl Grid {
    fn key(&self, x: &[f64]) -> [i64; 3] {
        let mut k = [0i64; 3];
        for (a, &c) in x.iter().enumerate() {
            let mut v = (c / self.cell).floor() as i64;
            if let Some(m) = self.wrap {
                v = v.rem_euclid(m);
            }
            k[a] = v;
        }
        k
    }
}

impl<'a> SpatialIndex<'a> {
    pub(crate) fn over(space: &'a FiniteMMSpace, ids: Vec<usize>, cell: f64) -> Self {
        let grid = match &space.metric {
            Metric::Coords { dim, geometry, .. } if *dim <= 3 && cell > 0.0 => {
                let (cell, wrap) = match geometry {
                    Geometry::Flat => (cell, None),
                    Geometry::Torus(l) => {
                        let m = ((l / cell).floor() as i64).max(1);
                        (l / m as f64, Some(m))
                    }
                };
                let mut grid = Grid { dim: *dim, cell, wrap, buckets: Buckets::Sparse(HashMap::new()) };
                let keys: Vec<[i64; 3]> =
                    ids.iter().map(|&i| grid.key(space.coords_of(i).expect("coordinate space"))).collect();
                grid.buckets = Buckets::build(&keys);
                Some(grid)
            }
            _ => None,
        };
        SpatialIndex { space, ids, grid }
    }

    /// Positions `p` (into `ids`) with `dist(point, ids[p])` within `r`.
    pub(crate) fn within(&self, point: usize, r: f64, closed: bool) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_within(point, r, closed, |p| out.push(p));
        out.sort_unstable();
        out
    }

    /// Visits the positions within `r` of `point` in no particular order.
    pub(crate) fn for_each_within(&self, point: usize, r: f64, closed: bool, mut f: impl FnMut(usize)) {
        let accept = |p: usize| {
            let d = self.space.dist(point, self.ids[p]);
            if closed {
                d <= r
            } else {
                d < r
            }
        };
        let Some(grid) = &self.grid else {
            (0..self.ids.len()).filter(|&p| accept(p)).for_each(f);
            return;
        };
        let center = grid.key(self.space.coords_of(point).expect("coordinate space"));
        let span = (r / grid.cell).ceil() as i64 + 1;
        let axis_range = |a: usize| -> Vec<i64> {
            if a >= grid.dim {
                return vec![0];
            }
            match grid.wrap {
                Some(m) if 2 * span + 1 >= m => (0..m).collect(),
                Some(m) => (-span..=span).map(|o| (center[a] + o).rem_euclid(m)).collect(),
                None => (-span..=span).map(|o| center[a] + o).collect(),
            }
        };
        let (r0, r1, r2) = (axis_range(0), axis_range(1), axis_range(2));
        for &x in &r0 {
            for &y in &r1 {
                for &z in &r2 {
                    if let Some(bucket) = grid.buckets.get([x, y, z]) {
                        for &p in bucket {
                            if accept(p) {
                                f(p);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Position of the nearest indexed point and its distance.
    pub(crate) fn nearest(&self, point: usize, start_radius: f64) -> Option<(usize, f64)> {
        if self.ids.is_empty() {
            return None;
        }
        let mut r = if self.grid.is_some() { start_radius.max(f64::MIN_POSITIVE) } else { f64::INFINITY };
        loop {
            let found = self.within(point, r, true);
            if let Some(best) = found
                .into_iter()
                .map(|p| (p, self.space.dist(point, self.ids[p])))
                .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
            {
                return Some(best);
            }
            self.grid.as_ref()?;
            r *= 2.0;
        }
    }
}
