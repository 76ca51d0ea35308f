use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Stored dimension cap used when none is given (nerves only need `b_0..b_2`).
pub const DEFAULT_MAX_DIM: usize = 3;

/// A finite simplicial complex, downward closed up to `max_dim`.
///
/// Every id in `0..vertex_count` is a vertex. Simplices of each dimension are
/// stored flattened (stride `d + 1`) and sorted lexicographically, so lookups
/// are binary searches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: usize,
    max_dim: usize,
    faces: Vec<Vec<Vertex>>,
}

impl SimplicialComplex {
    pub fn empty(max_dim: usize) -> Self {
        SimplicialComplex { vertex_count: 0, max_dim, faces: vec![Vec::new()] }
    }

    /// Downward closure of `maximal`, truncated at `max_dim`.
    pub fn from_maximal<S: AsRef<[Vertex]>>(maximal: &[S], max_dim: usize) -> Result<Self> {
        let mut vertex_count = 0usize;
        let mut cleaned: Vec<Vec<Vertex>> = Vec::with_capacity(maximal.len());
        for s in maximal {
            let mut v = s.as_ref().to_vec();
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::malformed(format!("duplicate vertex in simplex {:?}", s.as_ref())));
            }
            if let Some(&top) = v.last() {
                vertex_count = vertex_count.max(top as usize + 1);
                cleaned.push(v);
            }
        }
        Ok(Self::close(vertex_count, cleaned, max_dim))
    }

    /// Closure of already sorted, duplicate-free simplices over a known vertex count.
    pub(crate) fn close(vertex_count: usize, generators: Vec<Vec<Vertex>>, max_dim: usize) -> Self {
        let mut sets: Vec<HashSet<Vec<Vertex>>> = vec![HashSet::new(); max_dim + 1];
        let mut buf = Vec::new();
        for g in &generators {
            let top = (g.len() - 1).min(max_dim);
            for d in 1..=top {
                for_each_subset(g, d + 1, &mut buf, &mut |sub| {
                    if !sets[d].contains(sub) {
                        sets[d].insert(sub.to_vec());
                    }
                });
            }
        }
        let mut faces = Vec::with_capacity(max_dim + 1);
        faces.push((0..vertex_count as Vertex).collect::<Vec<_>>());
        for set in sets.into_iter().skip(1) {
            let mut list: Vec<Vec<Vertex>> = set.into_iter().collect();
            list.sort_unstable();
            faces.push(list.concat());
        }
        let mut complex = SimplicialComplex { vertex_count, max_dim, faces };
        complex.trim();
        complex
    }

    fn trim(&mut self) {
        while self.faces.len() > 1 && self.faces.last().is_some_and(|f| f.is_empty()) {
            self.faces.pop();
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Highest dimension with a stored simplex, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        if self.vertex_count == 0 {
            None
        } else {
            Some(self.faces.len() - 1)
        }
    }

    /// Number of stored `d`-simplices.
    pub fn count(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, |f| f.len() / (d + 1))
    }

    pub fn simplices(&self, d: usize) -> impl Iterator<Item = &[Vertex]> + '_ {
        self.faces.get(d).map(|f| f.as_slice()).unwrap_or(&[]).chunks_exact(d + 1)
    }

    pub fn simplex(&self, d: usize, index: usize) -> &[Vertex] {
        &self.faces[d][index * (d + 1)..(index + 1) * (d + 1)]
    }

    /// Position of a sorted simplex in the dimension-`len - 1` list.
    pub fn index_of(&self, simplex: &[Vertex]) -> Option<usize> {
        if simplex.is_empty() {
            return None;
        }
        let d = simplex.len() - 1;
        let flat = self.faces.get(d)?;
        let (mut lo, mut hi) = (0usize, flat.len() / (d + 1));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * (d + 1)..(mid + 1) * (d + 1)].cmp(simplex) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, simplex: &[Vertex]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn total_simplices(&self) -> usize {
        (0..self.faces.len()).map(|d| self.count(d)).sum()
    }

    /// Sorted neighbour lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in self.simplices(1) {
            adj[e[0] as usize].push(e[1]);
            adj[e[1] as usize].push(e[0]);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Number of edges at `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.simplices(1).filter(|e| e[0] == v || e[1] == v).count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.vertex_count];
        for e in self.simplices(1) {
            deg[e[0] as usize] += 1;
            deg[e[1] as usize] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Component label per vertex (labels are `0..k` in order of first vertex).
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for start in 0..self.vertex_count {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if label[w as usize] == usize::MAX {
                        label[w as usize] = next;
                        queue.push_back(w as usize);
                    }
                }
            }
            next += 1;
        }
        (label, next)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count() == 1
    }

    /// Graph distances from `source` in the 1-skeleton (`usize::MAX` if unreachable).
    pub fn distances_from(&self, source: Vertex) -> Vec<usize> {
        bfs_distances(&self.adjacency(), source, usize::MAX)
    }

    /// Full subcomplex on the vertices with `keep[v]`, relabelled in increasing
    /// order. Returns the complex and the old id of each new vertex.
    pub fn induced(&self, keep: &[bool]) -> (SimplicialComplex, Vec<Vertex>) {
        let mut new_id = vec![Vertex::MAX; self.vertex_count];
        let mut old_of = Vec::new();
        for v in 0..self.vertex_count {
            if keep.get(v).copied().unwrap_or(false) {
                new_id[v] = old_of.len() as Vertex;
                old_of.push(v as Vertex);
            }
        }
        (self.restrict_relabel(&new_id, old_of.len()), old_of)
    }

    /// Keeps simplices whose vertices all have `new_id != MAX`, renamed.
    /// `new_id` must be increasing on kept vertices for the result to stay sorted.
    fn restrict_relabel(&self, new_id: &[Vertex], vertex_count: usize) -> SimplicialComplex {
        let mut faces = vec![(0..vertex_count as Vertex).collect::<Vec<_>>()];
        for d in 1..self.faces.len() {
            let mut flat = Vec::new();
            for s in self.simplices(d) {
                if s.iter().all(|&v| new_id[v as usize] != Vertex::MAX) {
                    flat.extend(s.iter().map(|&v| new_id[v as usize]));
                }
            }
            faces.push(flat);
        }
        let mut complex = SimplicialComplex { vertex_count, max_dim: self.max_dim, faces };
        complex.trim();
        complex
    }

    /// Applies a vertex permutation `perm[old] = new`.
    pub fn relabel(&self, perm: &[Vertex]) -> SimplicialComplex {
        assert_eq!(perm.len(), self.vertex_count, "permutation size mismatch");
        let mut faces = vec![(0..self.vertex_count as Vertex).collect::<Vec<_>>()];
        for d in 1..self.faces.len() {
            let mut list: Vec<Vec<Vertex>> = self
                .simplices(d)
                .map(|s| {
                    let mut t: Vec<Vertex> = s.iter().map(|&v| perm[v as usize]).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            list.sort_unstable();
            faces.push(list.concat());
        }
        SimplicialComplex { vertex_count: self.vertex_count, max_dim: self.max_dim, faces }
    }

    /// Disjoint union; the vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.vertex_count as Vertex;
        let max_dim = self.max_dim.max(other.max_dim);
        let top = self.faces.len().max(other.faces.len());
        let mut faces = Vec::with_capacity(top);
        for d in 0..top {
            let mut flat = self.faces.get(d).cloned().unwrap_or_default();
            if let Some(f) = other.faces.get(d) {
                flat.extend(f.iter().map(|&v| v + shift));
            }
            faces.push(flat);
        }
        SimplicialComplex { vertex_count: self.vertex_count + other.vertex_count, max_dim, faces }
    }

    /// Simplices that are not a proper face of another stored simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<Vertex>> {
        let mut covered: Vec<Vec<bool>> = (0..self.faces.len()).map(|d| vec![false; self.count(d)]).collect();
        let mut buf = Vec::new();
        for d in (1..self.faces.len()).rev() {
            for s in self.simplices(d) {
                for_each_subset(s, d, &mut buf, &mut |face| {
                    if let Some(i) = self.index_of(face) {
                        covered[d - 1][i] = true;
                    }
                });
            }
        }
        let mut out = Vec::new();
        for (d, flags) in covered.iter().enumerate() {
            for (i, &c) in flags.iter().enumerate() {
                if !c {
                    out.push(self.simplex(d, i).to_vec());
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Canonical text form: one maximal simplex per line, lines sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in self.maximal_simplices() {
            let line: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Reads the text form. The stored cap is `max(DEFAULT_MAX_DIM, top dimension)`
    /// so nothing in the file is truncated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut simplices = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut s = Vec::new();
            for tok in line.split_whitespace() {
                let v: Vertex = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno + 1, format!("bad vertex id {tok:?}")))?;
                s.push(v);
            }
            simplices.push(s);
        }
        let top = simplices.iter().map(|s| s.len().saturating_sub(1)).max().unwrap_or(0);
        Self::from_maximal(&simplices, top.max(DEFAULT_MAX_DIM))
    }

    /// Same complex with a different cap (truncating if lower).
    pub fn with_max_dim(&self, max_dim: usize) -> SimplicialComplex {
        let mut faces: Vec<Vec<Vertex>> = self.faces.iter().take(max_dim + 1).cloned().collect();
        if faces.is_empty() {
            faces.push(Vec::new());
        }
        let mut complex = SimplicialComplex { vertex_count: self.vertex_count, max_dim, faces };
        complex.trim();
        complex
    }

    /// For each vertex, indices (per dimension) of the simplices whose least vertex it is.
    pub(crate) fn by_least_vertex(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for d in 1..self.faces.len() {
            for (i, s) in self.simplices(d).enumerate() {
                out[s[0] as usize].push((d, i));
            }
        }
        out
    }
}

pub(crate) fn bfs_distances(adj: &[Vec<Vertex>], source: Vertex, limit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[source as usize] = 0;
    let mut queue = VecDeque::from([source as usize]);
    while let Some(u) = queue.pop_front() {
        if dist[u] >= limit {
            continue;
        }
        for &w in &adj[u] {
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = dist[u] + 1;
                queue.push_back(w as usize);
            }
        }
    }
    dist
}

/// Calls `f` on each `k`-subset of the sorted slice `set`, in lexicographic order.
pub(crate) fn for_each_subset(set: &[Vertex], k: usize, buf: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
    fn rec(set: &[Vertex], start: usize, k: usize, buf: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        let need = k - buf.len();
        for i in start..=set.len().saturating_sub(need) {
            if set.len() < need {
                break;
            }
            buf.push(set[i]);
            rec(set, i + 1, k, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    if k <= set.len() {
        rec(set, 0, k, buf, f);
    }
}

/// Vertex sets as a sorted set, handy for tests and callers comparing supports.
pub fn vertex_set(vs: impl IntoIterator<Item = Vertex>) -> BTreeSet<Vertex> {
    vs.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_one_triangle() {
        let k = SimplicialComplex::from_maximal(&[vec![0, 1, 2]], 2).unwrap();
        assert_eq!(k.vertex_count(), 3);
        assert_eq!(k.count(1), 3);
        assert_eq!(k.count(2), 1);
    }

    #[test]
    fn empty_input() {
        let k = SimplicialComplex::from_maximal::<Vec<Vertex>>(&[], 2).unwrap();
        assert_eq!(k.vertex_count(), 0);
        assert_eq!(k.dim(), None);
    }

    #[test]
    fn tetrahedron_boundary_counts() {
        let k = SimplicialComplex::from_maximal(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 2).unwrap();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (4, 6, 4));
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let err = SimplicialComplex::from_maximal(&[vec![0, 1, 1]], 2).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
    }

    #[test]
    fn truncation_at_cap() {
        let k = SimplicialComplex::from_maximal(&[vec![0, 1, 2, 3, 4]], 2).unwrap();
        assert_eq!(k.count(2), 10);
        assert_eq!(k.count(3), 0);
        assert_eq!(k.dim(), Some(2));
    }

    #[test]
    fn singleton_lists_give_isolated_vertices() {
        let k = SimplicialComplex::from_maximal(&[vec![0, 1], vec![4]], 1).unwrap();
        assert_eq!(k.vertex_count(), 5);
        assert_eq!(k.component_count(), 4);
    }

    #[test]
    fn text_round_trip_is_canonical() {
        let text = "# comment\n\n2 1 0\n3 2\n";
        let k = SimplicialComplex::parse(text).unwrap();
        assert_eq!(k.to_text(), "0 1 2\n2 3\n");
        assert_eq!(SimplicialComplex::parse(&k.to_text()).unwrap(), k);
    }

    #[test]
    fn parse_error_reports_line() {
        let err = SimplicialComplex::parse("0 1\n0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn induced_subcomplex() {
        let k = SimplicialComplex::from_maximal(&[vec![0, 1, 2], vec![2, 3]], 2).unwrap();
        let (sub, old) = k.induced(&[true, false, true, true]);
        assert_eq!(old, vec![0, 2, 3]);
        assert_eq!(sub.count(1), 2);
        assert_eq!(sub.count(2), 0);
    }
}
