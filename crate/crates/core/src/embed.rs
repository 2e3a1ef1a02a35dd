//! `G(d, r, n)` as a subgroup of `G(d, 1, n)`.
//!
//! The intrinsic generators `s~_1, …, s~_n` (and `s~` when `e = d/r > 1`) are
//! mapped by
//!
//! ```text
//! s~_i -> s_i (i < n),   s~_n -> s_n^{d-1} s_{n-1} s_n,   s~ -> s_n^r
//! ```
//!
//! and the image consists of the canonical forms whose suffix exponents sum
//! to a multiple of `r`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{check_relations, eval, ColoredPermutation, PresentationReport, Relation};
use crate::params::GroupParams;
use crate::words::{canonical_forms, deglex_cmp, parse_letters, write_plain, CanonicalForm, Word};

/// Letter reserved for the extra generator `s~`.
pub const EXTRA: u8 = 0;

/// A word over the intrinsic generators of `G(d, r, n)`: letters `1..=n` for
/// `s~_1, …, s~_n` and `0` for `s~`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntrinsicWord(Vec<u8>);

impl IntrinsicWord {
    pub fn new(letters: Vec<u8>) -> Self {
        IntrinsicWord(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, params: &GroupParams) -> Result<()> {
        for &a in &self.0 {
            if a == EXTRA {
                if params.e() == 1 {
                    return Err(Error::NoExtraGenerator);
                }
            } else if a as usize > params.n() {
                return Err(Error::LetterOutOfRange {
                    letter: a as u64,
                    n: params.n(),
                });
            }
        }
        Ok(())
    }

    /// Digit-string form used by the bundled data files (`[13123]`).
    pub fn to_digit_string(&self) -> String {
        self.0.iter().map(|a| a.to_string()).collect()
    }
}

impl fmt::Display for IntrinsicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_plain(f, &self.0)
    }
}

/// Same syntax as [`crate::words::parse_word`], with `0` standing for `s~`.
pub fn parse_intrinsic_word(text: &str, params: &GroupParams) -> Result<IntrinsicWord> {
    let letters = parse_letters(text)?;
    let w = letters
        .into_iter()
        .map(|a| {
            u8::try_from(a).map_err(|_| Error::LetterOutOfRange {
                letter: a,
                n: params.n(),
            })
        })
        .collect::<Result<Vec<u8>>>()?;
    let w = IntrinsicWord(w);
    w.validate(params)?;
    Ok(w)
}

fn parse_digits(s: &str) -> IntrinsicWord {
    IntrinsicWord(s.bytes().map(|b| b - b'0').collect())
}

fn image_letters(a: u8, params: &GroupParams, out: &mut Vec<u8>) {
    let n = params.top();
    if a == EXTRA {
        out.extend(std::iter::repeat_n(n, params.r() as usize));
    } else if a == n {
        out.extend(std::iter::repeat_n(n, params.d() as usize - 1));
        out.push(n - 1);
        out.push(n);
    } else {
        out.push(a);
    }
}

/// Letterwise image of an intrinsic word in `G(d, 1, n)`.
pub fn embed(w: &IntrinsicWord, params: &GroupParams) -> Result<Word> {
    w.validate(params)?;
    let mut out = Vec::new();
    for &a in &w.0 {
        image_letters(a, params, &mut out);
    }
    Ok(Word::new(out))
}

/// `Σ k_q ≡ 0 (mod r)`.
pub fn is_member(cf: &CanonicalForm, params: &GroupParams) -> bool {
    cf.suffix_exponent_sum().is_multiple_of(params.r() as u64)
}

/// An intrinsic word mapping onto the element of `cf`.
///
/// Peels the suffix left to right: with `K` the running exponent sum,
/// `s^{(K)}_{n,j} s^{(k)}_{n,j'} = τ((s~_{n-1} s~_n)^K s~_{n-1,j}) s^{(K+k)}_{n,j'}`,
/// and the last factor `s^{(K)}_{n,j}` is `τ(s~^{K/r} s~_{n-1,j})`.
pub fn preimage(cf: &CanonicalForm, params: &GroupParams) -> Result<IntrinsicWord> {
    if !is_member(cf, params) {
        return Err(Error::NotMember(cf.flatten().to_compact_string()));
    }
    let n = params.top();
    let d = params.d() as u64;
    let mut out: Vec<u8> = cf.prefix_word().into_letters();
    let suffix = cf.suffix();
    let mut acc = 0u64;
    for (idx, f) in suffix.iter().enumerate() {
        acc = (acc + f.k as u64) % d;
        if idx + 1 < suffix.len() {
            for _ in 0..acc {
                out.extend([n - 1, n]);
            }
        } else {
            let e_power = acc / params.r() as u64;
            out.extend(std::iter::repeat_n(EXTRA, e_power as usize));
        }
        out.extend((f.j..n).rev());
    }
    Ok(IntrinsicWord(out))
}

/// Canonical forms of `G(d, 1, n)` that lie in `G(d, r, n)`.
pub fn member_forms(params: &GroupParams) -> impl Iterator<Item = CanonicalForm> + '_ {
    canonical_forms(&params.ambient()).filter(move |cf| is_member(cf, params))
}

/// Number of member canonical forms; equals `n! · d^n / r`.
pub fn census(params: &GroupParams, budget: u64) -> Result<u64> {
    params.check_budget(budget)?;
    Ok(member_forms(params).count() as u64)
}

/// Elements reached by products of intrinsic generators, found by BFS on the
/// intrinsic Cayley graph. Each element is keyed by its image in
/// `G(d, 1, n)` and carries its deg-lex least geodesic word over `alphabet`
/// (letters tried in the order given).
pub fn intrinsic_normal_forms(
    params: &GroupParams,
    alphabet: &[u8],
) -> Result<BTreeMap<ColoredPermutation, IntrinsicWord>> {
    IntrinsicWord(alphabet.to_vec()).validate(params)?;
    let ambient = params.ambient();
    let gens: Vec<(u8, ColoredPermutation)> = alphabet
        .iter()
        .map(|&a| {
            let mut img = Vec::new();
            image_letters(a, params, &mut img);
            (a, eval(&img, &ambient))
        })
        .collect();
    let start = ColoredPermutation::identity(params.n(), params.d());
    let mut found = BTreeMap::new();
    found.insert(start.clone(), IntrinsicWord::default());
    // Parents are dequeued in deg-lex order and letters tried in order, so
    // the first word to reach an element is its deg-lex minimum.
    let mut queue = VecDeque::from([(start, Vec::<u8>::new())]);
    while let Some((x, w)) = queue.pop_front() {
        for (a, g) in &gens {
            let y = &x * g;
            if !found.contains_key(&y) {
                let mut v = w.clone();
                v.push(*a);
                found.insert(y.clone(), IntrinsicWord(v.clone()));
                queue.push_back((y, v));
            }
        }
    }
    Ok(found)
}

/// Deg-lex least reduced words of `G(3,3,3)` over `s~_1 < s~_2 < s~_3`.
pub fn appendix_g333() -> Vec<IntrinsicWord> {
    let params = GroupParams::new(3, 3, 3).expect("valid parameters");
    let mut words: Vec<IntrinsicWord> = intrinsic_normal_forms(&params, &[1, 2, 3])
        .expect("valid alphabet")
        .into_values()
        .collect();
    words.sort_by(|a, b| deglex_cmp(&a.0, &b.0));
    words
}

const G333_WORDS: &str = include_str!("../data/g333_reduced_words.txt");
const G333_RELATIONS: &str = include_str!("../data/g333_relations.txt");
const G333_FC_IMAGES: &str = include_str!("../data/g333_fc_images.txt");

/// The bundled list of 54 reduced words for `G(3,3,3)`.
pub fn g333_expected_words() -> Vec<IntrinsicWord> {
    G333_WORDS
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| parse_digits(l.trim()))
        .collect()
}

/// Word-by-word comparison of [`appendix_g333`] with the bundled list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixComparison {
    pub computed: usize,
    pub expected: usize,
    pub matched: usize,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
}

impl AppendixComparison {
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty() && self.computed == self.expected
    }
}

pub fn compare_appendix() -> AppendixComparison {
    let computed = appendix_g333();
    let expected = g333_expected_words();
    let missing = expected
        .iter()
        .filter(|w| !computed.contains(w))
        .map(IntrinsicWord::to_digit_string)
        .collect();
    let unexpected = computed
        .iter()
        .filter(|w| !expected.contains(w))
        .map(IntrinsicWord::to_digit_string)
        .collect();
    let matched = computed.iter().filter(|w| expected.contains(w)).count();
    AppendixComparison {
        computed: computed.len(),
        expected: expected.len(),
        matched,
        missing,
        unexpected,
    }
}

/// A named identity between two intrinsic words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntrinsicRelation {
    pub name: String,
    pub lhs: IntrinsicWord,
    pub rhs: IntrinsicWord,
}

impl IntrinsicRelation {
    fn new(name: impl Into<String>, lhs: Vec<u8>, rhs: Vec<u8>) -> Self {
        IntrinsicRelation {
            name: name.into(),
            lhs: IntrinsicWord(lhs),
            rhs: IntrinsicWord(rhs),
        }
    }
}

fn repeat(parts: &[u8], times: u32) -> Vec<u8> {
    parts.repeat(times as usize)
}

/// Defining relations of the intrinsic presentation of `G(d, r, n)`
/// (`n >= 3`), plus the bundled derived relations when the group is
/// `G(3,3,3)`.
pub fn intrinsic_relations(params: &GroupParams) -> Vec<IntrinsicRelation> {
    let n = params.top();
    let (d, r, e) = (params.d(), params.r(), params.e());
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(IntrinsicRelation::new(
            format!("order s~_{i}^2"),
            vec![i, i],
            vec![],
        ));
    }
    out.push(IntrinsicRelation::new(
        format!("order (s~_{n} s~_{})^{d}", n - 1),
        repeat(&[n, n - 1], d),
        vec![],
    ));
    for i in 1..n {
        for j in 1..i.saturating_sub(1) {
            out.push(IntrinsicRelation::new(
                format!("commute s~_{i} s~_{j}"),
                vec![i, j],
                vec![j, i],
            ));
        }
    }
    for j in 1..n.saturating_sub(2) {
        out.push(IntrinsicRelation::new(
            format!("commute s~_{n} s~_{j}"),
            vec![n, j],
            vec![j, n],
        ));
    }
    for i in 1..n - 1 {
        out.push(IntrinsicRelation::new(
            format!("braid s~_{i} s~_{}", i + 1),
            vec![i + 1, i, i + 1],
            vec![i, i + 1, i],
        ));
    }
    out.push(IntrinsicRelation::new(
        format!("braid s~_{n} s~_{}", n - 2),
        vec![n, n - 2, n],
        vec![n - 2, n, n - 2],
    ));
    out.push(IntrinsicRelation::new(
        "six-term",
        repeat(&[n, n - 1, n - 2], 2),
        repeat(&[n - 2, n, n - 1], 2),
    ));
    if e > 1 {
        let s = EXTRA;
        out.push(IntrinsicRelation::new(
            format!("order s~^{e}"),
            vec![s; e as usize],
            vec![],
        ));
        for j in 1..n - 1 {
            out.push(IntrinsicRelation::new(
                format!("commute s~ s~_{j}"),
                vec![s, j],
                vec![j, s],
            ));
        }
        out.push(IntrinsicRelation::new(
            "s~ past s~_n s~_{n-1}",
            vec![s, n, n - 1],
            vec![n, n - 1, s],
        ));
        let mut lhs = vec![s, n];
        lhs.extend(repeat(&[n - 1, n], r - 1));
        out.push(IntrinsicRelation::new(
            "twisted exchange",
            lhs,
            vec![n - 1, s],
        ));
    }
    if (d, r, n) == (3, 3, 3) {
        for line in G333_RELATIONS.lines().filter(|l| !l.starts_with('#')) {
            if let Some((a, b)) = line.split_once('=') {
                let (a, b) = (a.trim(), b.trim());
                out.push(IntrinsicRelation::new(
                    format!("derived {a}={b}"),
                    parse_digits(a).0,
                    parse_digits(b).0,
                ));
            }
        }
    }
    out
}

/// Evaluates the intrinsic relations through the embedding, together with the
/// identities that convert suffix factor pairs into intrinsic products.
pub fn verify_intrinsic_presentation(params: &GroupParams) -> Result<PresentationReport> {
    let ambient = params.ambient();
    let mut rels = Vec::new();
    for rel in intrinsic_relations(params) {
        rels.push(Relation {
            name: rel.name,
            lhs: embed(&rel.lhs, params)?,
            rhs: embed(&rel.rhs, params)?,
        });
    }
    let n = params.top();
    let d = params.d();
    let factor = |j: u8, k: u32| {
        let mut v = Vec::new();
        crate::words::SuffixFactor::new(j, k % d).write_letters(n, &mut v);
        v
    };
    for k in 1..d {
        // τ(s~_n s~_{n-1})^k = s_{n-1} s^{(k)}_{n,n-1} s_n^{d-k}
        let lhs = embed(&IntrinsicWord(repeat(&[n, n - 1], k)), params)?;
        let mut rhs = vec![n - 1];
        rhs.extend(factor(n - 1, k));
        rhs.extend(std::iter::repeat_n(n, (d - k) as usize));
        rels.push(Relation {
            name: format!("pair power k={k}"),
            lhs,
            rhs: Word::new(rhs),
        });
    }
    for k1 in 1..d {
        for k2 in 1..d {
            for j1 in 1..n {
                for j2 in j1 + 1..=n {
                    let lhs = [factor(j1, k1), factor(j2, k2)].concat();
                    let mut head = repeat(&[n - 1, n], k1);
                    head.extend((j1..n).rev());
                    let mut rhs = embed(&IntrinsicWord(head), params)?.into_letters();
                    rhs.extend(factor(j2, k1 + k2));
                    rels.push(Relation {
                        name: format!("factor pair j1={j1} j2={j2} k1={k1} k2={k2}"),
                        lhs: Word::new(lhs),
                        rhs: Word::new(rhs),
                    });
                }
            }
        }
    }
    Ok(check_relations(&rels, &ambient))
}

/// One row of the bundled `G(3,3,3)` image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageRow {
    pub intrinsic: IntrinsicWord,
    pub images: Vec<Word>,
}

pub fn g333_fc_image_table() -> Vec<ImageRow> {
    let params = GroupParams::full(3, 3).expect("valid parameters");
    G333_FC_IMAGES
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|line| {
            let (lhs, rhs) = line.split_once('|').expect("row has a separator");
            let images = rhs
                .split('=')
                .map(|t| crate::words::parse_word(t, &params).expect("valid image word"))
                .collect();
            ImageRow {
                intrinsic: parse_digits(lhs.trim()),
                images,
            }
        })
        .collect()
}
