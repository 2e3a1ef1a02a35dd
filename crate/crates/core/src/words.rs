//! Words over the generators `s_1, …, s_n` and the structured canonical form.
//!
//! A canonical word of `G(d, 1, n)` is a product
//!
//! ```text
//! s_{1,i_1} s_{2,i_2} … s_{n-1,i_{n-1}} · s^{(k_1)}_{n,j_1} … s^{(k_l)}_{n,j_l}
//! ```
//!
//! where `s_{p,i} = [p, p-1, …, i]` (empty when `i = p + 1`),
//! `s^{(k)}_{n,j} = [n^k, n-1, …, j]` (just `[n^k]` when `j = n`),
//! `1 <= i_p <= p + 1`, `j_1 < … < j_l` and `1 <= k_q <= d - 1`.
//! The left factor is the *prefix*, the right factor the *suffix*.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::GroupParams;

/// A finite sequence of generator letters. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Checks every letter against `1..=n`.
    pub fn validate(&self, params: &GroupParams) -> Result<()> {
        let n = params.n();
        match self.0.iter().find(|&&a| a == 0 || a as usize > n) {
            Some(&a) => Err(Error::LetterOutOfRange {
                letter: a as u64,
                n,
            }),
            None => Ok(()),
        }
    }

    /// Run-length display matching the notation `[3^2,2,3]`.
    pub fn to_compact_string(&self) -> String {
        compact(&self.0)
    }
}

impl Deref for Word {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Plain comma-separated letters; `parse_word` inverts it exactly.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_plain(f, &self.0)
    }
}

pub(crate) fn write_plain(f: &mut fmt::Formatter<'_>, letters: &[u8]) -> fmt::Result {
    for (i, a) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

pub(crate) fn compact(letters: &[u8]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < letters.len() {
        let a = letters[i];
        let mut run = 1;
        while i + run < letters.len() && letters[i + run] == a {
            run += 1;
        }
        if !out.is_empty() {
            out.push(',');
        }
        if run > 1 {
            out.push_str(&format!("{a}^{run}"));
        } else {
            out.push_str(&a.to_string());
        }
        i += run;
    }
    out
}

/// Deg-lex order: shorter words first, then lexicographic.
pub fn deglex_cmp(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Parses comma-separated non-negative integers with optional `a^m` runs.
/// Empty (or all-whitespace) text is the empty word.
pub(crate) fn parse_letters(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    let text = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(text)
        .trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        let (base, exp) = match item.split_once('^') {
            Some((b, e)) => (b.trim(), Some(e.trim())),
            None => (item, None),
        };
        let letter: u64 = parse_uint(base, item)?;
        let count = match exp {
            Some(e) => parse_uint(e, item)?,
            None => 1,
        };
        if count == 0 || count > 1 << 16 {
            return Err(Error::Syntax(format!("bad run length in {item:?}")));
        }
        out.extend(std::iter::repeat_n(letter, count as usize));
    }
    Ok(out)
}

fn parse_uint(s: &str, item: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax(format!(
            "expected a non-negative integer in {item:?}"
        )));
    }
    s.parse()
        .map_err(|_| Error::Syntax(format!("integer too large in {item:?}")))
}

/// Parses the text syntax `"3,2,1,3"` / `"3^2,2,3"` / `""` into a word of
/// `G(d, 1, n)`.
pub fn parse_word(text: &str, params: &GroupParams) -> Result<Word> {
    let n = params.n();
    parse_letters(text)?
        .into_iter()
        .map(|a| {
            if a == 0 || a > n as u64 {
                Err(Error::LetterOutOfRange { letter: a, n })
            } else {
                Ok(a as u8)
            }
        })
        .collect::<Result<Vec<u8>>>()
        .map(Word)
}

/// The factor `s^{(k)}_{n,j} = [n^k, n-1, …, j]`; `j = n` is the bare power `[n^k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u8, u32)", into = "(u8, u32)")]
pub struct SuffixFactor {
    pub j: u8,
    pub k: u32,
}

impl From<(u8, u32)> for SuffixFactor {
    fn from((j, k): (u8, u32)) -> Self {
        SuffixFactor { j, k }
    }
}

impl From<SuffixFactor> for (u8, u32) {
    fn from(f: SuffixFactor) -> Self {
        (f.j, f.k)
    }
}

impl SuffixFactor {
    pub fn new(j: u8, k: u32) -> Self {
        SuffixFactor { j, k }
    }

    pub fn write_letters(&self, n: u8, out: &mut Vec<u8>) {
        out.extend(std::iter::repeat_n(n, self.k as usize));
        out.extend((self.j..n).rev());
    }
}

/// Validates a suffix: `1 <= j <= n` strictly increasing, `1 <= k <= d - 1`.
pub fn validate_suffix(suffix: &[SuffixFactor], params: &GroupParams) -> Result<()> {
    let n = params.n();
    let mut last = 0u8;
    for f in suffix {
        if f.j == 0 || f.j as usize > n {
            return Err(Error::InvalidSuffix(format!(
                "index j={} outside 1..={n}",
                f.j
            )));
        }
        if f.j <= last {
            return Err(Error::InvalidSuffix(
                "indices j must strictly increase".into(),
            ));
        }
        if f.k == 0 || f.k >= params.d() {
            return Err(Error::InvalidSuffix(format!(
                "exponent k={} outside 1..={}",
                f.k,
                params.d() as i64 - 1
            )));
        }
        last = f.j;
    }
    Ok(())
}

pub fn flatten_suffix(suffix: &[SuffixFactor], n: u8) -> Word {
    let mut out = Vec::new();
    for f in suffix {
        f.write_letters(n, &mut out);
    }
    Word(out)
}

/// The unique normal form of an element of `G(d, 1, n)`.
///
/// `prefix[p - 1] = i_p` for `p = 1..n-1`; the value `p + 1` encodes an empty
/// segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub(crate) prefix: Vec<u8>,
    pub(crate) suffix: Vec<SuffixFactor>,
}

impl CanonicalForm {
    pub fn new(prefix: Vec<u8>, suffix: Vec<SuffixFactor>, params: &GroupParams) -> Result<Self> {
        let n = params.n();
        if prefix.len() != n - 1 {
            return Err(Error::TemplateMismatch(format!(
                "prefix has {} entries, expected {}",
                prefix.len(),
                n - 1
            )));
        }
        for (idx, &i) in prefix.iter().enumerate() {
            let p = idx + 1;
            if i == 0 || i as usize > p + 1 {
                return Err(Error::TemplateMismatch(format!(
                    "prefix entry i_{p}={i} outside 1..={}",
                    p + 1
                )));
            }
        }
        validate_suffix(&suffix, params)?;
        Ok(CanonicalForm { prefix, suffix })
    }

    pub fn identity(params: &GroupParams) -> Self {
        CanonicalForm {
            prefix: (2..=params.n() as u8).collect(),
            suffix: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.prefix.len() + 1
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn suffix(&self) -> &[SuffixFactor] {
        &self.suffix
    }

    /// `Σ k_q`, the total exponent of `s_n`.
    pub fn suffix_exponent_sum(&self) -> u64 {
        self.suffix.iter().map(|f| f.k as u64).sum()
    }

    pub fn prefix_word(&self) -> Word {
        let mut out = Vec::new();
        for (idx, &i) in self.prefix.iter().enumerate() {
            let p = idx as u8 + 1;
            out.extend((i..=p).rev());
        }
        Word(out)
    }

    pub fn suffix_word(&self) -> Word {
        flatten_suffix(&self.suffix, self.rank() as u8)
    }

    /// Letter-by-letter expansion, prefix then suffix.
    pub fn flatten(&self) -> Word {
        let mut w = self.prefix_word();
        w.0.extend(self.suffix_word().0);
        w
    }

    /// Length of the flattened word, without materialising it.
    pub fn length(&self) -> usize {
        let n = self.rank();
        let pre: usize = self
            .prefix
            .iter()
            .enumerate()
            .map(|(idx, &i)| idx + 2 - i as usize)
            .sum();
        let suf: usize = self
            .suffix
            .iter()
            .map(|f| f.k as usize + n - f.j as usize)
            .sum();
        pre + suf
    }

    /// Last letter of the flattened prefix, if any.
    pub fn last_prefix_letter(&self) -> Option<u8> {
        self.prefix
            .iter()
            .enumerate()
            .rev()
            .find(|(idx, &i)| (i as usize) <= idx + 1)
            .map(|(_, &i)| i)
    }
}

/// Recognises a word that is literally in canonical shape.
pub fn structure(w: &Word, params: &GroupParams) -> Result<CanonicalForm> {
    w.validate(params)?;
    let n = params.n() as u8;
    let letters = w.letters();
    let mismatch = |pos: usize, why: &str| {
        Error::TemplateMismatch(format!("{why} at position {pos} of [{w}]"))
    };
    let mut pos = 0;
    let mut prefix = Vec::with_capacity(n as usize - 1);
    for p in 1..n {
        if letters.get(pos) == Some(&p) {
            let mut low = p;
            pos += 1;
            while low > 1 && letters.get(pos) == Some(&(low - 1)) {
                low -= 1;
                pos += 1;
            }
            prefix.push(low);
        } else {
            prefix.push(p + 1);
        }
    }
    if pos < letters.len() && letters[pos] != n {
        return Err(mismatch(pos, "unexpected prefix letter"));
    }
    let mut suffix = Vec::new();
    while pos < letters.len() {
        if letters[pos] != n {
            return Err(mismatch(pos, "suffix factor must start with the letter n"));
        }
        let mut k = 0u32;
        while letters.get(pos) == Some(&n) {
            k += 1;
            pos += 1;
        }
        let mut j = n;
        while j > 1 && letters.get(pos) == Some(&(j - 1)) {
            j -= 1;
            pos += 1;
        }
        suffix.push(SuffixFactor { j, k });
    }
    CanonicalForm::new(prefix, suffix, params).map_err(|e| match e {
        Error::InvalidSuffix(msg) => Error::TemplateMismatch(msg),
        other => other,
    })
}

/// Every canonical form of `G(d, 1, n)` (`n! · d^n` of them), in a fixed
/// mixed-radix order.
pub fn canonical_forms(params: &GroupParams) -> CanonicalForms {
    let n = params.n();
    CanonicalForms {
        d: params.d(),
        prefix: (2..=n as u8).collect(),
        exps: vec![0; n],
        done: false,
    }
}

/// Iterator returned by [`canonical_forms`].
pub struct CanonicalForms {
    d: u32,
    prefix: Vec<u8>,
    exps: Vec<u32>,
    done: bool,
}

impl Iterator for CanonicalForms {
    type Item = CanonicalForm;

    fn next(&mut self) -> Option<CanonicalForm> {
        if self.done {
            return None;
        }
        let suffix = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(idx, &k)| SuffixFactor {
                j: idx as u8 + 1,
                k,
            })
            .collect();
        let out = CanonicalForm {
            prefix: self.prefix.clone(),
            suffix,
        };
        // Odometer: suffix exponents vary fastest.
        let mut carried = true;
        for e in self.exps.iter_mut() {
            *e += 1;
            if *e < self.d {
                carried = false;
                break;
            }
            *e = 0;
        }
        if carried {
            carried = true;
            for (idx, i) in self.prefix.iter_mut().enumerate() {
                if *i > 1 {
                    *i -= 1;
                    carried = false;
                    break;
                }
                *i = idx as u8 + 2;
            }
            if carried {
                self.done = true;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(d: u32, n: usize) -> GroupParams {
        GroupParams::full(d, n).unwrap()
    }

    fn f(j: u8, k: u32) -> SuffixFactor {
        SuffixFactor::new(j, k)
    }

    #[test]
    fn flatten_examples() {
        let p = g(2, 3);
        assert_eq!(CanonicalForm::identity(&p).flatten(), Word::empty());
        let cf = CanonicalForm::new(vec![2, 3], vec![f(2, 1)], &p).unwrap();
        assert_eq!(cf.flatten().letters(), &[3, 2]);

        let p = g(3, 2);
        let cf = CanonicalForm::new(vec![1], vec![f(1, 2), f(2, 1)], &p).unwrap();
        assert_eq!(cf.flatten().letters(), &[1, 2, 2, 1, 2]);
        assert_eq!(cf.length(), 5);
    }

    #[test]
    fn parse_examples() {
        let p = g(2, 3);
        assert_eq!(parse_word("3,2,1,3", &p).unwrap().letters(), &[3, 2, 1, 3]);
        assert_eq!(parse_word("3^2,2,3", &p).unwrap().letters(), &[3, 3, 2, 3]);
        assert_eq!(parse_word("", &p).unwrap(), Word::empty());
        assert_eq!(parse_word(" [1, 2] ", &p).unwrap().letters(), &[1, 2]);
        assert!(matches!(
            parse_word("4", &p),
            Err(Error::LetterOutOfRange { .. })
        ));
        assert!(matches!(
            parse_word("0", &p),
            Err(Error::LetterOutOfRange { .. })
        ));
        assert!(matches!(parse_word("1,,2", &p), Err(Error::Syntax(_))));
        assert!(matches!(parse_word("1^", &p), Err(Error::Syntax(_))));
        assert!(matches!(parse_word("a", &p), Err(Error::Syntax(_))));
        assert!(matches!(parse_word("2^0", &p), Err(Error::Syntax(_))));
    }

    #[test]
    fn compact_display() {
        let w = Word::new(vec![3, 3, 2, 1, 3, 3]);
        assert_eq!(w.to_compact_string(), "3^2,2,1,3^2");
        assert_eq!(w.to_string(), "3,3,2,1,3,3");
    }

    #[test]
    fn structure_examples() {
        let cf = structure(&Word::new(vec![1, 2, 2, 1, 2]), &g(3, 2)).unwrap();
        assert_eq!(cf.prefix(), &[1]);
        assert_eq!(cf.suffix(), &[f(1, 2), f(2, 1)]);

        let cf = structure(&Word::empty(), &g(2, 4)).unwrap();
        assert_eq!(cf, CanonicalForm::identity(&g(2, 4)));
        assert_eq!(cf.prefix(), &[2, 3, 4]);

        let cf = structure(&Word::new(vec![3, 2, 1, 3]), &g(2, 3)).unwrap();
        assert_eq!(cf.prefix(), &[2, 3]);
        assert_eq!(cf.suffix(), &[f(1, 1), f(3, 1)]);
    }

    #[test]
    fn structure_rejects_non_template() {
        let p = g(2, 3);
        for bad in [
            vec![2, 1, 2],
            vec![1, 1],
            vec![3, 3],
            vec![3, 2, 3, 2],
            vec![3, 1],
        ] {
            assert!(
                matches!(
                    structure(&Word::new(bad.clone()), &p),
                    Err(Error::TemplateMismatch(_))
                ),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn census_is_factorial_times_power() {
        for d in 1..=3u32 {
            for n in 2..=4usize {
                let p = g(d, n);
                let all: std::collections::HashSet<_> = canonical_forms(&p).collect();
                assert_eq!(all.len() as u128, p.order(), "G({d},1,{n})");
                for cf in &all {
                    assert_eq!(&structure(&cf.flatten(), &p).unwrap(), cf);
                    assert_eq!(cf.length(), cf.flatten().len());
                }
            }
        }
    }

    #[test]
    fn d_one_has_no_suffix() {
        let p = g(1, 3);
        assert!(canonical_forms(&p).all(|cf| cf.suffix().is_empty()));
        assert!(CanonicalForm::new(vec![2, 3], vec![f(3, 1)], &p).is_err());
    }

    #[test]
    fn json_shape() {
        let p = g(3, 2);
        let cf = CanonicalForm::new(vec![1], vec![f(1, 2), f(2, 1)], &p).unwrap();
        let s = serde_json::to_string(&cf).unwrap();
        assert_eq!(s, r#"{"prefix":[1],"suffix":[[1,2],[2,1]]}"#);
        let back: CanonicalForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cf);
    }

    #[test]
    fn last_prefix_letter() {
        let p = g(2, 4);
        let cf = CanonicalForm::new(vec![1, 3, 3], vec![], &p).unwrap();
        assert_eq!(cf.prefix_word().letters(), &[1, 3]);
        assert_eq!(cf.last_prefix_letter(), Some(3));
        assert_eq!(CanonicalForm::identity(&p).last_prefix_letter(), None);
    }
}
