//! Full commutativity.
//!
//! Two words are in the same commutativity class when one can be reached from
//! the other by swapping adjacent letters `a, b` with `|a - b| >= 2`. An
//! element is fully commutative when all its reduced words form one class;
//! equivalently, when the class of one reduced word has no member containing
//! `[i+1, i, i+1]`, `[i, i+1, i]` (`1 <= i <= n-2`), `[n^k1, n-1, n^k2, n-1]`
//! or `[n-1, n^k1, n-1, n^k2]` (`1 <= k1, k2 <= d-1`) as a factor.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;

use crate::embed::is_member;
use crate::error::{Error, Result};
use crate::group::{eval, CayleyIndex};
use crate::normalize::normalize;
use crate::params::GroupParams;
use crate::words::{canonical_forms, CanonicalForm, Word};

/// Default limit on the size of a commutativity class.
pub const DEFAULT_CLASS_BUDGET: usize = 1_000_000;

/// A commutativity class, listed in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommClass {
    pub representative: Word,
    pub members: BTreeSet<Word>,
}

impl CommClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }
}

fn commute(a: u8, b: u8) -> bool {
    a.abs_diff(b) >= 2
}

/// Calls `visit` on every word of the commutativity class of `w`, in BFS
/// order, stopping early when `visit` returns `false`. Returns whether the
/// search ran to completion.
fn walk_class(w: &[u8], budget: usize, mut visit: impl FnMut(&[u8]) -> bool) -> Result<bool> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        if !visit(&cur) {
            return Ok(false);
        }
        for p in 0..cur.len().saturating_sub(1) {
            if commute(cur[p], cur[p + 1]) {
                let mut next = cur.clone();
                next.swap(p, p + 1);
                if !seen.contains(&next) {
                    if seen.len() >= budget {
                        return Err(Error::ClassBudgetExceeded(budget));
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(true)
}

/// All words reachable from `w` by commuting swaps.
pub fn comm_class(w: &[u8], budget: usize) -> Result<CommClass> {
    let mut members = BTreeSet::new();
    walk_class(w, budget, |x| {
        members.insert(Word::from(x));
        true
    })?;
    Ok(CommClass {
        representative: Word::from(w),
        members,
    })
}

/// The `{i, i+1}`-subsequences of a word, `i = 1..n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KRFingerprint {
    pub seqs: Vec<Vec<u8>>,
}

pub fn kr_fingerprint(w: &[u8], n: usize) -> KRFingerprint {
    let seqs = (1..n as u8)
        .map(|i| {
            w.iter()
                .copied()
                .filter(|&a| a == i || a == i + 1)
                .collect()
        })
        .collect();
    KRFingerprint { seqs }
}

/// Scans for the forbidden factors listed in the module docs.
pub fn has_forbidden_pattern(w: &[u8], params: &GroupParams) -> bool {
    let n = params.top();
    let d = params.d();
    for t in w.windows(3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        if a == c && a.abs_diff(b) == 1 && a < n && b < n {
            return true;
        }
    }
    if n < 2 || d < 2 {
        return false;
    }
    let m = n - 1;
    // Runs of n strictly between two consecutive occurrences of n-1, with
    // a run of n directly outside on the required side.
    let mut prev_m: Option<usize> = None;
    for (pos, &a) in w.iter().enumerate() {
        if a != m {
            if a != n {
                prev_m = None;
            }
            continue;
        }
        if let Some(q) = prev_m {
            let run = pos - q - 1;
            if run >= 1 && run < d as usize {
                // [n^k1, n-1, n^k2, n-1]
                if q > 0 && w[q - 1] == n {
                    return true;
                }
                // [n-1, n^k1, n-1, n^k2]
                if w.get(pos + 1) == Some(&n) {
                    return true;
                }
            }
        }
        prev_m = Some(pos);
    }
    false
}

/// `true` iff no member of the commutativity class of `w` has a forbidden
/// factor. The search stops at the first offending member.
pub fn class_avoids_patterns(w: &[u8], params: &GroupParams, budget: usize) -> Result<bool> {
    walk_class(w, budget, |x| !has_forbidden_pattern(x, params))
}

pub fn is_fully_commutative(w: &[u8], params: &GroupParams) -> Result<bool> {
    is_fully_commutative_with_budget(w, params, DEFAULT_CLASS_BUDGET)
}

/// Full commutativity in `G(d, 1, n)`; the word is normalised first.
pub fn is_fully_commutative_with_budget(
    w: &[u8],
    params: &GroupParams,
    budget: usize,
) -> Result<bool> {
    let params = params.ambient();
    let cf = normalize(w, &params)?;
    cf_is_fully_commutative(&cf, &params, budget)
}

pub fn cf_is_fully_commutative(
    cf: &CanonicalForm,
    params: &GroupParams,
    budget: usize,
) -> Result<bool> {
    class_avoids_patterns(&cf.flatten(), &params.ambient(), budget)
}

/// Full commutativity straight from the definition: the reduced words of
/// `eval(w)` (from the Cayley index) form a single commutativity class.
pub fn is_fc_oracle(w: &[u8], idx: &CayleyIndex, budget: usize) -> Result<bool> {
    let g = eval(w, idx.params());
    let words = idx.all_reduced_words(&g);
    let first = words
        .iter()
        .next()
        .expect("every element has a reduced word");
    let class = comm_class(first, budget)?;
    Ok(class.members == words)
}

pub fn enumerate_fc(params: &GroupParams) -> Result<Vec<CanonicalForm>> {
    enumerate_fc_with_budget(params, crate::group::DEFAULT_BUDGET, DEFAULT_CLASS_BUDGET)
}

/// Canonical forms of all fully commutative elements of `G(d, r, n)`, sorted
/// by flattened word.
pub fn enumerate_fc_with_budget(
    params: &GroupParams,
    budget: u64,
    class_budget: usize,
) -> Result<Vec<CanonicalForm>> {
    params.check_budget(budget)?;
    let ambient = params.ambient();
    let candidates: Vec<CanonicalForm> = canonical_forms(&ambient)
        .filter(|cf| is_member(cf, params))
        .collect();
    let verdicts: Vec<Result<bool>> = candidates
        .par_iter()
        .map(|cf| cf_is_fully_commutative(cf, &ambient, class_budget))
        .collect();
    let mut out = Vec::new();
    for (cf, v) in candidates.into_iter().zip(verdicts) {
        if v? {
            out.push(cf);
        }
    }
    out.sort_by_cached_key(|cf| cf.flatten());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(d: u32, n: usize) -> GroupParams {
        GroupParams::full(d, n).unwrap()
    }

    #[test]
    fn class_examples() {
        let c = comm_class(&[], 10).unwrap();
        assert_eq!(c.len(), 1);
        let c = comm_class(&[1, 3], 10).unwrap();
        let expect: BTreeSet<Word> = [Word::new(vec![1, 3]), Word::new(vec![3, 1])].into();
        assert_eq!(c.members, expect);
        assert!(matches!(
            comm_class(&[1, 3, 5, 7], 3),
            Err(Error::ClassBudgetExceeded(3))
        ));
    }

    #[test]
    fn class_of_listed_fc_word() {
        let p = g(3, 3);
        let c = comm_class(&[2, 1, 3, 2, 3], DEFAULT_CLASS_BUDGET).unwrap();
        // 1 and 3 commute, nothing else does
        let expect: BTreeSet<Word> = [
            Word::new(vec![2, 1, 3, 2, 3]),
            Word::new(vec![2, 3, 1, 2, 3]),
        ]
        .into();
        assert_eq!(c.members, expect);
        assert!(c.members.iter().all(|w| !has_forbidden_pattern(w, &p)));
        let fp = kr_fingerprint(&c.representative, 3);
        assert!(c.members.iter().all(|w| kr_fingerprint(w, 3) == fp));
    }

    #[test]
    fn fingerprint_examples() {
        let fp = kr_fingerprint(&[1, 2, 1, 3, 4, 3, 2], 4);
        assert_eq!(fp.seqs[0], vec![1, 2, 1, 2]);
        assert!(kr_fingerprint(&[], 3).seqs.iter().all(Vec::is_empty));
        assert_eq!(kr_fingerprint(&[3, 1], 3), kr_fingerprint(&[1, 3], 3));
        assert_ne!(kr_fingerprint(&[1, 2], 3), kr_fingerprint(&[2, 1], 3));
    }

    #[test]
    fn pattern_examples() {
        let p = g(2, 3);
        assert!(has_forbidden_pattern(&[1, 2, 1], &p));
        assert!(has_forbidden_pattern(&[3, 2, 3, 2], &p));
        assert!(has_forbidden_pattern(&[2, 3, 2, 3], &p));
        assert!(!has_forbidden_pattern(&[3, 2, 1, 3], &p));
        assert!(!has_forbidden_pattern(&[3, 2, 3], &p));
        // [n, n-1, n] is not a braid-type factor
        assert!(!has_forbidden_pattern(&[2, 3, 2], &p));
        let p = g(3, 3);
        assert!(has_forbidden_pattern(&[3, 3, 2, 3, 3, 2], &p));
        assert!(has_forbidden_pattern(&[1, 2, 3, 2, 3, 3], &p));
        assert!(!has_forbidden_pattern(&[3, 3, 2, 1, 3, 3, 2, 3, 3], &p));
        // middle run of length d is not a valid exponent
        assert!(!has_forbidden_pattern(&[3, 2, 3, 3, 3, 2], &p));
    }

    #[test]
    fn fc_examples() {
        assert!(!is_fully_commutative(&[3, 4, 3, 4, 2, 1], &g(2, 4)).unwrap());
        assert!(is_fully_commutative(&[3, 2, 3], &g(3, 3)).unwrap());
        assert!(is_fully_commutative(&[], &g(3, 3)).unwrap());
        assert!(!is_fully_commutative(&[2, 1, 2], &g(2, 3)).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let p = g(2, 3);
        let idx = CayleyIndex::build(&p).unwrap();
        assert!(!is_fc_oracle(&[2, 1, 2], &idx, DEFAULT_CLASS_BUDGET).unwrap());
        assert!(is_fc_oracle(&[3, 2, 1, 3], &idx, DEFAULT_CLASS_BUDGET).unwrap());
        assert!(is_fc_oracle(&[], &idx, DEFAULT_CLASS_BUDGET).unwrap());
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_fc(&g(3, 3)).unwrap().len(), 59);
        assert_eq!(enumerate_fc(&g(2, 3)).unwrap().len(), 24);
        assert_eq!(
            enumerate_fc(&GroupParams::new(3, 3, 3).unwrap())
                .unwrap()
                .len(),
            17
        );
        assert_eq!(
            enumerate_fc(&GroupParams::new(2, 2, 4).unwrap())
                .unwrap()
                .len(),
            35
        );
    }
}
