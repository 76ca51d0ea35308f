//! Random forests on a finite window of `F_r x_theta Z`.
//!
//! Elements are pairs `(f, m)` of a reduced word and a level, multiplied by
//! `(f, m)(g, n) = (f theta^m(g), m + n)`. For an offset `i` drawn uniformly
//! from `0..p`, the forest keeps the right-multiplication edges
//! `(f, m) - (f, m)(s_j, 0)` on levels with `p | m - i` and
//! `(f, m) - (f, m + 1)` on levels with `p` not dividing `m - i - 1`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rng::{mix64, TAG_FOREST};
use crate::error::{Error, Result};

/// Letter `j` for generator `s_j` (`1..=r`), `-j` for its inverse.
pub type Letter = i32;

/// Free reduction of a word.
pub fn reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &a in word {
        if out.last() == Some(&-a) {
            out.pop();
        } else {
            out.push(a);
        }
    }
    out
}

pub fn is_reduced(word: &[Letter]) -> bool {
    word.windows(2).all(|w| w[0] != -w[1])
}

pub fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&a| -a).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemidirectElement {
    pub word: Vec<Letter>,
    pub level: i64,
}

impl SemidirectElement {
    pub fn new(word: Vec<Letter>, level: i64) -> Result<Self> {
        if !is_reduced(&word) || word.contains(&0) {
            return Err(Error::malformed("element word must be reduced and use nonzero letters"));
        }
        Ok(SemidirectElement { word, level })
    }

    pub fn identity() -> Self {
        SemidirectElement { word: Vec::new(), level: 0 }
    }
}

/// An automorphism of `F_r` given by the images of the generators, with
/// optional inverse images for negative powers.
#[derive(Clone, Debug)]
pub struct Automorphism {
    rank: usize,
    images: Vec<Vec<Letter>>,
    inverse: Option<Vec<Vec<Letter>>>,
}

impl Automorphism {
    pub fn new(rank: usize, images: Vec<Vec<Letter>>, inverse: Option<Vec<Vec<Letter>>>) -> Result<Self> {
        let check = |imgs: &[Vec<Letter>]| -> Result<()> {
            if imgs.len() != rank {
                return Err(Error::malformed(format!("expected {rank} generator images, got {}", imgs.len())));
            }
            for w in imgs {
                if w.is_empty() || !is_reduced(w) || w.iter().any(|&a| a == 0 || a.unsigned_abs() as usize > rank) {
                    return Err(Error::malformed("generator images must be nonempty reduced words over the generators"));
                }
            }
            Ok(())
        };
        check(&images)?;
        if let Some(inv) = &inverse {
            check(inv)?;
        }
        let theta = Automorphism { rank, images, inverse };
        if let Some(inv) = &theta.inverse {
            for j in 0..rank {
                let there = theta.apply(&inv[j], 1);
                if there != vec![j as Letter + 1] {
                    return Err(Error::malformed("inverse images do not invert the automorphism"));
                }
            }
        }
        Ok(theta)
    }

    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank as Letter).map(|j| vec![j]).collect::<Vec<_>>();
        Automorphism { rank, images: images.clone(), inverse: Some(images) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    fn substitute(imgs: &[Vec<Letter>], word: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::new();
        for &a in word {
            let img = &imgs[a.unsigned_abs() as usize - 1];
            if a > 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(invert(img));
            }
        }
        reduce(&out)
    }

    /// `theta^power(word)`; negative powers need the inverse images.
    pub fn apply(&self, word: &[Letter], power: i64) -> Vec<Letter> {
        let imgs = if power >= 0 { &self.images } else { self.inverse.as_ref().expect("inverse images required") };
        let mut w = reduce(word);
        for _ in 0..power.unsigned_abs() {
            w = Self::substitute(imgs, &w);
        }
        w
    }
}

/// Right multiplication of `(f, m)` by `(g, n)`.
pub fn multiply(theta: &Automorphism, a: &SemidirectElement, b: &SemidirectElement) -> SemidirectElement {
    let mut word = a.word.clone();
    word.extend(theta.apply(&b.word, a.level));
    SemidirectElement { word: reduce(&word), level: a.level + b.level }
}

#[derive(Clone, Debug)]
pub struct ForestParams {
    pub word_cutoff: usize,
    pub levels: (i64, i64),
    pub p: u64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct ForestSample {
    /// Window elements, sorted.
    pub elements: Vec<SemidirectElement>,
    /// Edges as index pairs into `elements`, each with the smaller index first.
    pub edges: Vec<(usize, usize)>,
    /// The drawn offset `i`.
    pub offset: u64,
}

/// Reduced words of length at most `cutoff` in `rank` generators, shortlex order.
pub fn words_up_to(rank: usize, cutoff: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (1..=rank as Letter).flat_map(|j| [j, -j]).collect();
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..cutoff {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &letters {
                if w.last() != Some(&-a) {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

pub fn forest_sample(theta: &Automorphism, params: &ForestParams) -> Result<ForestSample> {
    let (lo, hi) = params.levels;
    if lo > hi || params.p == 0 {
        return Err(Error::contract("need a nonempty level range and p >= 1"));
    }
    if lo < 0 && !theta.has_inverse() {
        return Err(Error::contract("negative levels need the inverse automorphism"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix64(params.seed, TAG_FOREST, params.p, 0));
    let offset = rng.gen_range(0..params.p);
    sample_with_offset(theta, params, offset)
}

/// The forest for a fixed offset `i`.
pub fn sample_with_offset(theta: &Automorphism, params: &ForestParams, offset: u64) -> Result<ForestSample> {
    let (lo, hi) = params.levels;
    let p = params.p as i64;
    let words = words_up_to(theta.rank(), params.word_cutoff);
    let mut elements = Vec::with_capacity(words.len() * (hi - lo + 1) as usize);
    for m in lo..=hi {
        for w in &words {
            elements.push(SemidirectElement { word: w.clone(), level: m });
        }
    }
    elements.sort();
    let index: HashMap<&SemidirectElement, usize> = elements.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut edges = Vec::new();
    let i = offset as i64;
    for m in lo..=hi {
        let twisted: Vec<Vec<Letter>> = (1..=theta.rank() as Letter).map(|j| theta.apply(&[j], m)).collect();
        let horizontal = (m - i).rem_euclid(p) == 0;
        let vertical = (m - i - 1).rem_euclid(p) != 0 && m < hi;
        for w in &words {
            let a = index[&SemidirectElement { word: w.clone(), level: m }];
            if horizontal {
                for t in &twisted {
                    let mut nw = w.clone();
                    nw.extend_from_slice(t);
                    let b = SemidirectElement { word: reduce(&nw), level: m };
                    if let Some(&b) = index.get(&b) {
                        // each undirected edge arises from both ends; keep one
                        if a < b {
                            edges.push((a, b));
                        }
                    }
                }
            }
            if vertical {
                if let Some(&b) = index.get(&SemidirectElement { word: w.clone(), level: m + 1 }) {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(ForestSample { elements, edges, offset })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

impl ForestSample {
    pub fn index_of(&self, e: &SemidirectElement) -> Option<usize> {
        self.elements.binary_search(e).ok()
    }

    /// No edge closes a cycle.
    pub fn is_acyclic(&self) -> bool {
        let mut uf = UnionFind((0..self.elements.len()).collect());
        for &(a, b) in &self.edges {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                return false;
            }
            uf.0[ra] = rb;
        }
        true
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        let mut uf = UnionFind((0..self.elements.len()).collect());
        for &(x, y) in &self.edges {
            let (rx, ry) = (uf.find(x), uf.find(y));
            uf.0[rx] = ry;
        }
        uf.find(a) == uf.find(b)
    }
}
