//! Rewriting of arbitrary words into canonical form.
//!
//! The canonical form of `w · s_a` is obtained from that of `w` by pushing the
//! new letter leftwards through the suffix factors and then into the prefix,
//! using only these rules (letters `i < n`):
//!
//! * involutions `s_i s_i = 1` and `s_n^d = 1`;
//! * commutations `s_i s_j = s_j s_i` for `|i - j| >= 2`;
//! * segment shifts `s_{pj} s_i = s_{i-1} s_{pj}` for `j < i <= p`, which move a
//!   letter past a descending segment (and past a factor `s^{(k)}_{nj}`);
//! * factor merges `s^{(k1)}_{nj} s^{(k2)}_{nj} = s_{n-1} s^{(k2)}_{nj} s^{(k1)}_{n,j+1}`,
//!   applied when extending a factor makes its index collide with the factor
//!   to its left.
//!
//! Induction on the word length gives termination; uniqueness of the target
//! form makes the rule order irrelevant.

use crate::error::Result;
use crate::params::GroupParams;
use crate::words::{CanonicalForm, SuffixFactor, Word};

/// Canonical form of the element represented by `w` in `G(d, 1, n)`.
pub fn normalize(w: &[u8], params: &GroupParams) -> Result<CanonicalForm> {
    Word::from(w).validate(params)?;
    let mut cf = CanonicalForm::identity(params);
    for &a in w {
        right_multiply(&mut cf, a, params);
    }
    Ok(cf)
}

/// Replaces `cf` with the canonical form of `cf · s_letter`.
pub fn right_multiply(cf: &mut CanonicalForm, letter: u8, params: &GroupParams) {
    let n = params.top();
    debug_assert!(letter >= 1 && letter <= n);
    if letter == n {
        if params.d() == 1 {
            return;
        }
        match cf.suffix.last_mut() {
            Some(last) if last.j == n => {
                last.k += 1;
                if last.k == params.d() {
                    cf.suffix.pop();
                }
            }
            _ => cf.suffix.push(SuffixFactor::new(n, 1)),
        }
        return;
    }
    if let Some(a) = push_through_suffix(&mut cf.suffix, letter, n) {
        push_into_prefix(&mut cf.prefix, a);
    }
}

/// Moves `s_i` (`i < n`) from the right end of the suffix to its left end.
/// Returns the letter that emerges on the left, or `None` if it was absorbed.
fn push_through_suffix(suffix: &mut [SuffixFactor], mut i: u8, n: u8) -> Option<u8> {
    let mut idx = suffix.len();
    while idx > 0 {
        let j = suffix[idx - 1].j;
        if i + 1 < j {
            // every letter of the factor commutes with s_i
            idx -= 1;
        } else if i + 1 == j {
            // the factor absorbs s_i and now ends at i
            suffix[idx - 1].j = i;
            if idx >= 2 && suffix[idx - 2].j == i {
                let (k1, k2) = (suffix[idx - 2].k, suffix[idx - 1].k);
                suffix[idx - 2] = SuffixFactor::new(i, k2);
                suffix[idx - 1] = SuffixFactor::new(i + 1, k1);
                i = n - 1;
                idx -= 2;
            } else {
                return None;
            }
        } else if i == j {
            // trailing s_j s_j cancels
            suffix[idx - 1].j = j + 1;
            return None;
        } else {
            debug_assert!(j < i && i < n);
            i -= 1;
            idx -= 1;
        }
    }
    Some(i)
}

/// Right-multiplies the prefix `s_{1,i_1} … s_{n-1,i_{n-1}}` by `s_i`.
fn push_into_prefix(prefix: &mut [u8], mut i: u8) {
    for p in (1..=prefix.len() as u8).rev() {
        let ip = prefix[p as usize - 1];
        if i + 1 < ip {
            continue;
        } else if i + 1 == ip {
            prefix[p as usize - 1] = i;
            return;
        } else if i == ip {
            prefix[p as usize - 1] = ip + 1;
            return;
        } else {
            debug_assert!(i <= p);
            i -= 1;
        }
    }
    unreachable!("letter left the prefix");
}

/// `true` iff the word has the length of its canonical form.
pub fn is_reduced(w: &[u8], params: &GroupParams) -> Result<bool> {
    Ok(normalize(w, params)?.length() == w.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{eval, CayleyIndex};
    use crate::words::{canonical_forms, structure};

    fn g(d: u32, n: usize) -> GroupParams {
        GroupParams::full(d, n).unwrap()
    }

    #[test]
    fn second_expression_normalises_to_first() {
        let p = g(3, 2);
        let cf = normalize(&[2, 1, 2, 2, 1], &p).unwrap();
        assert_eq!(cf.flatten().letters(), &[1, 2, 2, 1, 2]);
        assert_eq!(normalize(&[1, 2, 2, 1, 2], &p).unwrap(), cf);
    }

    #[test]
    fn empty_word() {
        let p = g(2, 3);
        assert_eq!(normalize(&[], &p).unwrap(), CanonicalForm::identity(&p));
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(normalize(&[5], &g(2, 4)).is_err());
    }

    #[test]
    fn reduced_checks() {
        let p = g(2, 3);
        assert!(!is_reduced(&[1, 1], &p).unwrap());
        assert!(is_reduced(&[3, 2, 1, 3, 2, 3], &p).unwrap());
        assert!(!is_reduced(&[3, 3], &p).unwrap());
        assert!(!is_reduced(&[3, 3, 3], &g(3, 3)).unwrap());
    }

    #[test]
    fn canonical_words_are_fixed_points() {
        for d in 1..=3 {
            for n in 2..=4 {
                let p = g(d, n);
                for cf in canonical_forms(&p) {
                    assert_eq!(normalize(&cf.flatten(), &p).unwrap(), cf);
                }
            }
        }
    }

    #[test]
    fn type_b_example_from_the_d4_embedding() {
        let p = g(2, 4);
        let w = [3, 4, 3, 4, 2, 1];
        let cf = normalize(&w, &p).unwrap();
        let idx = CayleyIndex::build(&p).unwrap();
        assert_eq!(eval(&cf.flatten(), &p), eval(&w, &p));
        assert_eq!(cf.length(), 6);
        assert_eq!(idx.length(&eval(&w, &p)), 6);
        assert_eq!(structure(&cf.flatten(), &p).unwrap(), cf);
    }
}
