//! `G(d, 1, n)` as colored permutations, i.e. `n × n` monomial matrices whose
//! nonzero entries are `d`-th roots of unity.
//!
//! An element is stored column by column: column `c` holds the entry
//! `ζ^{colors[c]}` in row `perm[c]` (all 0-based). Words are read left to
//! right as matrix products, so `eval(u · v) = eval(u) * eval(v)`.
//! `s_i` (`i < n`) is the permutation matrix of the transposition `(i, i+1)`
//! and `s_n = diag(1, …, 1, ζ)`. Right multiplication by `s_i` swaps columns
//! `i` and `i + 1`; right multiplication by `s_n` bumps the color of column `n`.

use std::collections::{BTreeSet, VecDeque};
use std::ops::Mul;

use crate::error::Result;
use crate::params::GroupParams;
use crate::words::{SuffixFactor, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPermutation {
    perm: Vec<u8>,
    colors: Vec<u32>,
    d: u32,
}

impl ColoredPermutation {
    pub fn identity(n: usize, d: u32) -> Self {
        ColoredPermutation {
            perm: (0..n as u8).collect(),
            colors: vec![0; n],
            d,
        }
    }

    /// Builds an element from its column data; returns `None` unless `perm`
    /// is a bijection of `0..n` and every color is below `d`.
    pub fn from_parts(perm: Vec<u8>, colors: Vec<u32>, d: u32) -> Option<Self> {
        let n = perm.len();
        if colors.len() != n || d == 0 || colors.iter().any(|&c| c >= d) {
            return None;
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
                return None;
            }
        }
        Some(ColoredPermutation { perm, colors, d })
    }

    pub fn generator(letter: u8, params: &GroupParams) -> Self {
        let mut g = Self::identity(params.n(), params.d());
        g.right_mul_generator(letter);
        g
    }

    pub fn rank_n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn is_identity(&self) -> bool {
        self.colors.iter().all(|&c| c == 0)
            && self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self * s_letter`.
    pub fn right_mul_generator(&mut self, letter: u8) {
        let n = self.perm.len();
        let a = letter as usize;
        debug_assert!((1..=n).contains(&a));
        if a == n {
            self.colors[n - 1] = (self.colors[n - 1] + 1) % self.d;
        } else {
            self.perm.swap(a - 1, a);
            self.colors.swap(a - 1, a);
        }
    }

    /// `self * s_letter^{-1}`.
    pub fn right_mul_generator_inverse(&mut self, letter: u8) {
        let n = self.perm.len();
        if letter as usize == n {
            self.colors[n - 1] = (self.colors[n - 1] + self.d - 1) % self.d;
        } else {
            self.right_mul_generator(letter);
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0u8; n];
        let mut colors = vec![0u32; n];
        for c in 0..n {
            let row = self.perm[c] as usize;
            perm[row] = c as u8;
            colors[row] = (self.d - self.colors[c]) % self.d;
        }
        ColoredPermutation {
            perm,
            colors,
            d: self.d,
        }
    }

    /// Sum of all colors mod `d`; the element lies in `G(d, r, n)` iff this is
    /// divisible by `r`.
    pub fn color_sum(&self) -> u32 {
        self.colors.iter().fold(0, |acc, &c| (acc + c) % self.d)
    }

    /// Dense index in `0 .. n! · d^n`: Lehmer rank of the permutation, then
    /// colors in base `d`.
    pub fn rank(&self) -> usize {
        let n = self.perm.len();
        let mut code = 0usize;
        for i in 0..n {
            let smaller = self.perm[i + 1..]
                .iter()
                .filter(|&&q| q < self.perm[i])
                .count();
            code = code * (n - i) + smaller;
        }
        let d = self.d as usize;
        self.colors
            .iter()
            .fold(code, |acc, &c| acc * d + c as usize)
    }

    pub fn from_rank(mut rank: usize, n: usize, d: u32) -> Self {
        let mut colors = vec![0u32; n];
        for c in colors.iter_mut().rev() {
            *c = (rank % d as usize) as u32;
            rank /= d as usize;
        }
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            digits[i] = rank % (n - i);
            rank /= n - i;
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let perm = digits.into_iter().map(|k| pool.remove(k)).collect();
        ColoredPermutation { perm, colors, d }
    }
}

impl Mul for &ColoredPermutation {
    type Output = ColoredPermutation;

    fn mul(self, rhs: &ColoredPermutation) -> ColoredPermutation {
        let n = self.perm.len();
        assert_eq!(n, rhs.perm.len());
        let mut perm = vec![0u8; n];
        let mut colors = vec![0u32; n];
        for c in 0..n {
            let mid = rhs.perm[c] as usize;
            perm[c] = self.perm[mid];
            colors[c] = (rhs.colors[c] + self.colors[mid]) % self.d;
        }
        ColoredPermutation {
            perm,
            colors,
            d: self.d,
        }
    }
}

/// Evaluates a word of `G(d, 1, n)`. Letters must lie in `1..=n`.
pub fn eval(w: &[u8], params: &GroupParams) -> ColoredPermutation {
    let mut g = ColoredPermutation::identity(params.n(), params.d());
    for &a in w {
        g.right_mul_generator(a);
    }
    g
}

/// A named identity between two words of `G(d, 1, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(name: impl Into<String>, lhs: Vec<u8>, rhs: Vec<u8>) -> Self {
        Relation {
            name: name.into(),
            lhs: Word::new(lhs),
            rhs: Word::new(rhs),
        }
    }
}

/// Outcome of evaluating one relation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct PresentationReport {
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn seg(i: u8, j: u8) -> Vec<u8> {
    // s_{ij} = [i, i-1, …, j], empty when i < j
    if i < j {
        Vec::new()
    } else {
        (j..=i).rev().collect()
    }
}

fn factor(n: u8, j: u8, k: u32) -> Vec<u8> {
    let mut out = Vec::new();
    SuffixFactor::new(j, k).write_letters(n, &mut out);
    out
}

fn pow(a: u8, k: u32) -> Vec<u8> {
    vec![a; k as usize]
}

fn cat(parts: &[&[u8]]) -> Vec<u8> {
    parts.concat()
}

/// The defining relations of `G(d, 1, n)` together with the derived relations
/// used by the rewriting system.
pub fn relation_catalog(params: &GroupParams) -> Vec<Relation> {
    let n = params.top();
    let d = params.d();
    let mut out = Vec::new();

    out.push(Relation::new(format!("order s_{n}^{d}"), pow(n, d), vec![]));
    for i in 1..n {
        out.push(Relation::new(format!("order s_{i}^2"), vec![i, i], vec![]));
    }
    for i in 1..=n {
        for j in 1..i.saturating_sub(1) {
            out.push(Relation::new(
                format!("commute s_{i} s_{j}"),
                vec![i, j],
                vec![j, i],
            ));
        }
    }
    for i in 1..n.saturating_sub(1) {
        out.push(Relation::new(
            format!("braid s_{i} s_{}", i + 1),
            vec![i + 1, i, i + 1],
            vec![i, i + 1, i],
        ));
    }
    out.push(Relation::new(
        "four-term",
        vec![n, n - 1, n, n - 1],
        vec![n - 1, n, n - 1, n],
    ));

    // descending segments shift a trailing letter: s_{ij} s_i = s_{i-1} s_{ij}
    for i in 2..n {
        for j in 1..i {
            out.push(Relation::new(
                format!("segment shift i={i} j={j}"),
                cat(&[&seg(i, j), &[i]]),
                cat(&[&[i - 1], &seg(i, j)]),
            ));
        }
    }

    for k1 in 1..d {
        for k2 in 1..d {
            // generalised four-term relation
            out.push(Relation::new(
                format!("four-term k1={k1} k2={k2}"),
                cat(&[&pow(n, k1), &[n - 1], &pow(n, k2), &[n - 1]]),
                cat(&[&[n - 1], &pow(n, k2), &[n - 1], &pow(n, k1)]),
            ));
            // factor products at j = n-1
            out.push(Relation::new(
                format!("factor swap j={} k1={k1} k2={k2}", n - 1),
                cat(&[&factor(n, n - 1, k1), &factor(n, n - 1, k2)]),
                cat(&[&[n - 1], &factor(n, n - 1, k2), &pow(n, k1)]),
            ));
            // equal-index factor products for every j
            for j in 1..n {
                out.push(Relation::new(
                    format!("factor merge j={j} k1={k1} k2={k2}"),
                    cat(&[&factor(n, j, k1), &factor(n, j, k2)]),
                    cat(&[&[n - 1], &factor(n, j, k2), &factor(n, j + 1, k1)]),
                ));
            }
            // colliding indices p <= j < n
            for j in 1..n {
                for p in 1..=j {
                    out.push(Relation::new(
                        format!("factor collide j={j} p={p} k1={k1} k2={k2}"),
                        cat(&[&factor(n, j, k1), &factor(n, p, k2)]),
                        cat(&[&[n - 1], &factor(n, p, k2), &factor(n, j + 1, k1)]),
                    ));
                }
            }
        }
    }
    out
}

/// Evaluates both sides of a list of relations in `G(d, 1, n)`.
pub fn check_relations(relations: &[Relation], params: &GroupParams) -> PresentationReport {
    let checks = relations
        .iter()
        .map(|rel| RelationCheck {
            name: rel.name.clone(),
            lhs: rel.lhs.to_compact_string(),
            rhs: rel.rhs.to_compact_string(),
            pass: eval(&rel.lhs, params) == eval(&rel.rhs, params),
        })
        .collect();
    PresentationReport { checks }
}

/// Checks [`relation_catalog`] against the colored-permutation model.
pub fn verify_presentation(params: &GroupParams) -> PresentationReport {
    let params = params.ambient();
    check_relations(&relation_catalog(&params), &params)
}

/// Default element budget for exhaustive enumeration.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Breadth-first layering of the Cayley graph of `G(d, 1, n)` with respect to
/// right multiplication by `s_1, …, s_n`. Element ids are
/// [`ColoredPermutation::rank`].
#[derive(Debug, Clone)]
pub struct CayleyIndex {
    params: GroupParams,
    dist: Vec<u32>,
    parent_offsets: Vec<u32>,
    parent_edges: Vec<(u8, u32)>,
}

impl CayleyIndex {
    pub fn build(params: &GroupParams) -> Result<Self> {
        Self::build_with_budget(params, DEFAULT_BUDGET)
    }

    pub fn build_with_budget(params: &GroupParams, budget: u64) -> Result<Self> {
        params.check_budget(budget)?;
        let params = params.ambient();
        let (n, d) = (params.n(), params.d());
        let size = params.order() as usize;
        let mut dist = vec![u32::MAX; size];
        let start = ColoredPermutation::identity(n, d).rank();
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(id) = queue.pop_front() {
            let g = ColoredPermutation::from_rank(id, n, d);
            for a in 1..=n as u8 {
                let mut h = g.clone();
                h.right_mul_generator(a);
                let hid = h.rank();
                if dist[hid] == u32::MAX {
                    dist[hid] = dist[id] + 1;
                    queue.push_back(hid);
                }
            }
        }
        debug_assert!(dist.iter().all(|&x| x != u32::MAX));

        let mut parent_offsets = Vec::with_capacity(size + 1);
        let mut parent_edges = Vec::new();
        parent_offsets.push(0);
        for id in 0..size {
            let g = ColoredPermutation::from_rank(id, n, d);
            for a in 1..=n as u8 {
                let mut p = g.clone();
                p.right_mul_generator_inverse(a);
                let pid = p.rank();
                if dist[pid] + 1 == dist[id] {
                    parent_edges.push((a, pid as u32));
                }
            }
            parent_offsets.push(parent_edges.len() as u32);
        }
        Ok(CayleyIndex {
            params,
            dist,
            parent_offsets,
            parent_edges,
        })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn element(&self, id: usize) -> ColoredPermutation {
        ColoredPermutation::from_rank(id, self.params.n(), self.params.d())
    }

    pub fn identity_id(&self) -> usize {
        ColoredPermutation::identity(self.params.n(), self.params.d()).rank()
    }

    pub fn elements(&self) -> impl Iterator<Item = ColoredPermutation> + '_ {
        (0..self.len()).map(|id| self.element(id))
    }

    /// Geodesic length of the element with the given id.
    pub fn dist(&self, id: usize) -> u32 {
        self.dist[id]
    }

    pub fn length(&self, g: &ColoredPermutation) -> u32 {
        self.dist[g.rank()]
    }

    /// `(letter, predecessor)` pairs with `predecessor · s_letter = element`
    /// and `dist(predecessor) = dist(element) - 1`.
    pub fn parents(&self, id: usize) -> &[(u8, u32)] {
        let lo = self.parent_offsets[id] as usize;
        let hi = self.parent_offsets[id + 1] as usize;
        &self.parent_edges[lo..hi]
    }

    pub fn max_length(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    pub fn is_reduced(&self, w: &[u8]) -> bool {
        self.length(&eval(w, &self.params)) as usize == w.len()
    }

    /// Number of reduced words of every element, by dynamic programming over
    /// the layers.
    pub fn reduced_word_counts(&self) -> Vec<u128> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&id| self.dist[id]);
        let mut counts = vec![0u128; self.len()];
        counts[self.identity_id()] = 1;
        for id in order {
            if self.dist[id] == 0 {
                continue;
            }
            counts[id] = self
                .parents(id)
                .iter()
                .map(|&(_, p)| counts[p as usize])
                .sum();
        }
        counts
    }

    /// Every reduced word of `g`, by walking parent edges back to the identity.
    pub fn all_reduced_words(&self, g: &ColoredPermutation) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        let mut rev = Vec::with_capacity(self.length(g) as usize);
        self.collect_words(g.rank(), &mut rev, &mut out);
        out
    }

    fn collect_words(&self, id: usize, rev: &mut Vec<u8>, out: &mut BTreeSet<Word>) {
        if self.dist[id] == 0 {
            out.insert(rev.iter().rev().copied().collect());
            return;
        }
        for &(a, p) in self.parents(id) {
            rev.push(a);
            self.collect_words(p as usize, rev, out);
            rev.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(d: u32, n: usize) -> GroupParams {
        GroupParams::full(d, n).unwrap()
    }

    #[test]
    fn involutions_and_order() {
        let p = g(3, 4);
        for i in 1..4u8 {
            assert!(eval(&[i, i], &p).is_identity());
        }
        assert!(eval(&[4, 4, 4], &p).is_identity());
        assert!(!eval(&[4, 4], &p).is_identity());
    }

    #[test]
    fn two_reduced_expressions_agree() {
        let p = g(3, 2);
        assert_eq!(eval(&[2, 1, 2, 2, 1], &p), eval(&[1, 2, 2, 1, 2], &p));
    }

    #[test]
    fn rank_round_trip() {
        let p = g(3, 3);
        for id in 0..p.order() as usize {
            let x = ColoredPermutation::from_rank(id, 3, 3);
            assert_eq!(x.rank(), id);
        }
    }

    #[test]
    fn inverse_and_generators() {
        let p = g(4, 3);
        let w = [3, 2, 3, 3, 1, 2, 3];
        let x = eval(&w, &p);
        assert!((&x * &x.inverse()).is_identity());
        assert!((&x.inverse() * &x).is_identity());
        let mut y = ColoredPermutation::identity(3, 4);
        for &a in &w {
            y = &y * &ColoredPermutation::generator(a, &p);
        }
        assert_eq!(x, y);
    }

    #[test]
    fn from_parts_validates() {
        assert!(ColoredPermutation::from_parts(vec![1, 0], vec![0, 2], 3).is_some());
        assert!(ColoredPermutation::from_parts(vec![1, 1], vec![0, 0], 3).is_none());
        assert!(ColoredPermutation::from_parts(vec![1, 0], vec![0, 3], 3).is_none());
    }

    #[test]
    fn presentation_holds() {
        for d in 1..=4 {
            for n in 2..=4 {
                let report = verify_presentation(&g(d, n));
                let bad: Vec<_> = report.failures().collect();
                assert!(bad.is_empty(), "G({d},1,{n}): {bad:?}");
            }
        }
    }

    #[test]
    fn factor_merge_instance() {
        // s^{(1)}_{3,2} s^{(2)}_{3,2} = s_2 s^{(2)}_{3,2} s^{(1)}_{3,3} in G(3,1,3)
        let p = g(3, 3);
        assert_eq!(eval(&[3, 2, 3, 3, 2], &p), eval(&[2, 3, 3, 2, 3], &p));
    }

    #[test]
    fn wrong_relation_is_caught() {
        let p = g(3, 2);
        let bogus = Relation::new("bogus", vec![2, 1, 2, 1], vec![1, 2, 2, 1]);
        assert!(!check_relations(&[bogus], &p).all_pass());
    }

    #[test]
    fn cayley_sizes() {
        assert_eq!(CayleyIndex::build(&g(2, 2)).unwrap().len(), 8);
        assert_eq!(CayleyIndex::build(&g(3, 3)).unwrap().len(), 162);
        assert!(matches!(
            CayleyIndex::build_with_budget(&g(3, 3), 100),
            Err(crate::Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn parents_nonempty() {
        let idx = CayleyIndex::build(&g(3, 3)).unwrap();
        let e = idx.identity_id();
        assert_eq!(idx.dist(e), 0);
        for id in 0..idx.len() {
            assert_eq!(id == e, idx.parents(id).is_empty());
        }
    }

    #[test]
    fn reduced_words_small() {
        let p = g(3, 2);
        let idx = CayleyIndex::build(&p).unwrap();
        let e = ColoredPermutation::identity(2, 3);
        let words = idx.all_reduced_words(&e);
        assert_eq!(words.into_iter().collect::<Vec<_>>(), vec![Word::empty()]);
        let x = eval(&[2, 1, 2, 2, 1], &p);
        let words = idx.all_reduced_words(&x);
        assert!(words.contains(&Word::new(vec![2, 1, 2, 2, 1])));
        assert!(words.contains(&Word::new(vec![1, 2, 2, 1, 2])));
        for w in &words {
            assert_eq!(eval(w, &p), x);
            assert!(idx.is_reduced(w));
        }
    }

    /// Independent DFS over all words of each length, counting those whose
    /// length equals the geodesic distance.
    #[test]
    fn reduced_word_totals_match_dfs() {
        let p = g(2, 3);
        let idx = CayleyIndex::build(&p).unwrap();
        let max = idx.max_length() as usize;
        let mut dfs_total = 0u128;
        let mut stack: Vec<(Vec<u8>, ColoredPermutation)> =
            vec![(vec![], ColoredPermutation::identity(3, 2))];
        while let Some((w, x)) = stack.pop() {
            if idx.length(&x) as usize != w.len() {
                continue;
            }
            dfs_total += 1;
            if w.len() < max {
                for a in 1..=3u8 {
                    let mut y = x.clone();
                    y.right_mul_generator(a);
                    let mut v = w.clone();
                    v.push(a);
                    stack.push((v, y));
                }
            }
        }
        let counts = idx.reduced_word_counts();
        let via_dp: u128 = counts.iter().sum();
        let via_sets: u128 = idx
            .elements()
            .map(|x| idx.all_reduced_words(&x).len() as u128)
            .sum();
        assert_eq!(dfs_total, via_dp);
        assert_eq!(dfs_total, via_sets);
    }
}
