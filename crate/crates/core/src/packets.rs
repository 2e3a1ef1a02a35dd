//! Collections, packets and the Catalan-triangle counts.
//!
//! A collection is the set of fully commutative canonical forms sharing a
//! suffix. Collections are grouped into packets `P(n, k)`, `0 <= k <= n`, by
//! the shape of their suffix alone:
//!
//! * `P(n, 0)`: at least two factors, the first with `j = 1`;
//! * `P(n, k)`, `1 <= k <= n-2`: the single factor `s^{(t)}_{nk}`, or at least
//!   two factors with the first at `j = k + 1`;
//! * `P(n, n-1)`: the single factor `[n^t]` or `[n^t, n-1]`;
//! * `P(n, n)`: the empty suffix.
//!
//! Every collection in `P(n, k)` has `C(n, k)` elements. For `r > 1` the
//! packets of `G(d, r, n)` are those of `G(d, 1, n)` restricted to member
//! suffixes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::embed::is_member;
use crate::error::{Error, Result};
use crate::fc::{cf_is_fully_commutative, enumerate_fc_with_budget, DEFAULT_CLASS_BUDGET};
use crate::params::GroupParams;
use crate::words::{
    canonical_forms, flatten_suffix, validate_suffix, CanonicalForm, SuffixFactor, Word,
};

/// Rows `0..=max_n` of the Catalan triangle, built from
/// `C(n, k) = C(n, k-1) + C(n-1, k)` with `C(n, k) = 0` outside `0 <= k <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalanTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl CatalanTriangle {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row: Vec<BigUint> = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let left = if k == 0 {
                    BigUint::zero()
                } else {
                    row[k - 1].clone()
                };
                let up = if n == 0 {
                    BigUint::one()
                } else {
                    rows[n - 1].get(k).cloned().unwrap_or_default()
                };
                row.push(left + up);
            }
            rows.push(row);
        }
        CatalanTriangle { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.rows.get(n)?.get(k)
    }

    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigUint]> {
        self.rows.iter().map(Vec::as_slice)
    }
}

fn check_index(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::OutOfRange(format!("k={k} exceeds n={n}")));
    }
    Ok(())
}

/// `C(n, k) = (n+k)! (n-k+1) / (k! (n+1)!)`.
pub fn catalan_triangle(n: usize, k: usize) -> Result<BigUint> {
    check_index(n, k)?;
    Ok(CatalanTriangle::new(n).rows.swap_remove(n).swap_remove(k))
}

/// `C_n = C(n, n)`.
pub fn catalan_number(n: usize) -> BigUint {
    CatalanTriangle::new(n).rows.swap_remove(n).swap_remove(n)
}

/// `F_{n,k}(x) = Σ_{s=0}^{k} C(n, s) x^{k-s}`.
pub fn catalan_poly(n: usize, k: usize, x: i64) -> Result<BigInt> {
    check_index(n, k)?;
    let row = CatalanTriangle::new(n).rows.swap_remove(n);
    let x = BigInt::from(x);
    // Horner from s = 0 upwards
    Ok(row[..=k]
        .iter()
        .fold(BigInt::zero(), |acc, c| acc * &x + BigInt::from(c.clone())))
}

/// Packet `P(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PacketLabel {
    pub n: usize,
    pub k: usize,
}

impl fmt::Display for PacketLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{})", self.n, self.k)
    }
}

/// The suffix labelling a collection. Ordered by its flattened word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollectionLabel {
    n: u8,
    suffix: Vec<SuffixFactor>,
}

impl CollectionLabel {
    pub fn new(suffix: Vec<SuffixFactor>, params: &GroupParams) -> Result<Self> {
        validate_suffix(&suffix, params)?;
        Ok(CollectionLabel {
            n: params.top(),
            suffix,
        })
    }

    pub fn of(cf: &CanonicalForm) -> Self {
        CollectionLabel {
            n: cf.rank() as u8,
            suffix: cf.suffix().to_vec(),
        }
    }

    pub fn suffix(&self) -> &[SuffixFactor] {
        &self.suffix
    }

    pub fn word(&self) -> Word {
        flatten_suffix(&self.suffix, self.n)
    }
}

impl Ord for CollectionLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word()
            .cmp(&other.word())
            .then_with(|| self.suffix.cmp(&other.suffix))
    }
}

impl PartialOrd for CollectionLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CollectionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.word().to_compact_string())
    }
}

/// Reads the packet off the suffix.
pub fn classify_packet(suffix: &[SuffixFactor], params: &GroupParams) -> Result<PacketLabel> {
    validate_suffix(suffix, params)?;
    let n = params.n();
    let k = match suffix {
        [] => n,
        [f] if f.j as usize >= n - 1 => n - 1,
        [f] => f.j as usize,
        [first, ..] => first.j as usize - 1,
    };
    Ok(PacketLabel { n, k })
}

/// Every valid suffix of `G(d, 1, n)` lying in `G(d, r, n)`, sorted by
/// flattened word.
pub fn member_suffixes(params: &GroupParams) -> Vec<CollectionLabel> {
    let n = params.n();
    let d = params.d();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let js: Vec<u8> = (1..=n as u8).filter(|j| mask >> (j - 1) & 1 == 1).collect();
        let choices = (d as u64 - 1).pow(js.len() as u32);
        for code in 0..choices {
            // exponents 1..d-1 read off in base d-1
            let mut rest = code;
            let suffix: Vec<SuffixFactor> = js
                .iter()
                .map(|&j| {
                    let k = (rest % (d as u64 - 1)) as u32 + 1;
                    rest /= d as u64 - 1;
                    SuffixFactor::new(j, k)
                })
                .collect();
            let sum: u64 = suffix.iter().map(|f| f.k as u64).sum();
            if sum.is_multiple_of(params.r() as u64) {
                out.push(CollectionLabel { n: n as u8, suffix });
            }
        }
    }
    out.sort();
    out
}

/// Number of collections in `P(n, k)` by the closed-form case analysis.
pub fn packet_size(params: &GroupParams, k: usize) -> Result<BigUint> {
    let n = params.n();
    check_index(n, k)?;
    let (d, r) = (params.d(), params.r());
    let big = |x: u64| BigUint::from(x);
    let pow = |e: usize| BigUint::from(d).pow(e as u32);
    let dm1 = big(d as u64 - 1);
    if k == n {
        return Ok(BigUint::one());
    }
    if r == 1 {
        return Ok(match k {
            0 => (pow(n - 1) - 1u32) * dm1,
            k if k <= n - 2 => pow(n - k - 1) * dm1,
            _ => big(2) * dm1,
        });
    }
    if r == d {
        return Ok(match k {
            k if k <= n - 2 => pow(n - k - 2) * dm1,
            _ => BigUint::zero(),
        });
    }
    let e = big(params.e() as u64);
    Ok(match k {
        0 => pow(n - 1) * dm1 / r - (e - 1u32),
        k if k <= n - 2 => pow(n - k - 1) * dm1 / r,
        _ => big(2) * (e - 1u32),
    })
}

/// `Σ_k C(n, k) |P(n, k)|`.
pub fn count_fc_by_packets(params: &GroupParams) -> Result<BigUint> {
    let n = params.n();
    let tri = CatalanTriangle::new(n);
    let mut total = BigUint::zero();
    for k in 0..=n {
        total += tri.get(n, k).expect("row exists") * packet_size(params, k)?;
    }
    Ok(total)
}

fn require_rank_three(params: &GroupParams) -> Result<()> {
    if params.n() < 3 {
        return Err(Error::OutOfRange(format!(
            "closed forms need n >= 3, got {}",
            params.n()
        )));
    }
    Ok(())
}

fn to_unsigned(x: BigInt) -> BigUint {
    x.to_biguint().expect("count is non-negative")
}

/// Closed form for the number of fully commutative elements of `G(d, r, n)`,
/// `n >= 3`.
pub fn count_fc_closed(params: &GroupParams) -> Result<BigUint> {
    require_rank_three(params)?;
    let n = params.n();
    let (d, r) = (BigInt::from(params.d()), BigInt::from(params.r()));
    let f = catalan_poly(n, n - 2, params.d() as i64)?;
    let c = BigInt::from(catalan_number(n));
    let one = BigInt::one();
    let value = if params.r() == 1 {
        &d * (&d - 1) * f + (2 * &d - 1) * c - (&d - 1)
    } else if params.r() == params.d() {
        (&d - 1) * f + c
    } else {
        let e = &d / &r;
        &d * (&d - 1) * f / &r + (2 * &e - &one) * c - (e - one)
    };
    Ok(to_unsigned(value))
}

/// Coxeter types covered by the classical counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A,
    B,
    D,
}

/// Number of fully commutative elements of the Coxeter group `X_n` with its
/// own generators: `C_{n+1}`, `(n+2) C_n - 1` and `(n+3)/2 · C_n - 1`.
pub fn coxeter_fc_count(kind: CoxeterType, n: usize) -> Result<BigUint> {
    let min = match kind {
        CoxeterType::A => 1,
        CoxeterType::B => 2,
        CoxeterType::D => 4,
    };
    if n < min {
        return Err(Error::OutOfRange(format!(
            "{kind:?}_{n} needs rank at least {min}"
        )));
    }
    Ok(match kind {
        CoxeterType::A => catalan_number(n + 1),
        CoxeterType::B => BigUint::from(n + 2) * catalan_number(n) - 1u32,
        CoxeterType::D => BigUint::from(n + 3) * catalan_number(n) / 2u32 - 1u32,
    })
}

/// Coefficients `0..=max_n` of `(1 - (d-1) x c(x)) / (1 - d x c(x))`, where
/// `c(x)` is the Catalan generating function.
pub fn fc_generating_function(d: u32, max_n: usize) -> Vec<BigInt> {
    // x c(x) = Σ_{m >= 1} C_{m-1} x^m
    let mut y = vec![BigInt::zero(); max_n + 1];
    for (m, slot) in y.iter_mut().enumerate().skip(1) {
        *slot = BigInt::from(catalan_number(m - 1));
    }
    let d = BigInt::from(d);
    let num: Vec<BigInt> = y
        .iter()
        .enumerate()
        .map(|(m, c)| {
            if m == 0 {
                BigInt::one()
            } else {
                -(&d - BigInt::one()) * c
            }
        })
        .collect();
    let den: Vec<BigInt> = y
        .iter()
        .enumerate()
        .map(|(m, c)| if m == 0 { BigInt::one() } else { -(&d) * c })
        .collect();
    // den[0] = 1, so q_m = num_m - Σ_{i=1}^{m} den_i q_{m-i}
    let mut q: Vec<BigInt> = Vec::with_capacity(max_n + 1);
    for m in 0..=max_n {
        let mut v = num[m].clone();
        for i in 1..=m {
            v -= &den[i] * &q[m - i];
        }
        q.push(v);
    }
    q
}

/// Fully commutative elements grouped by packet and collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub params: GroupParams,
    pub packets: BTreeMap<PacketLabel, BTreeMap<CollectionLabel, Vec<CanonicalForm>>>,
}

impl Decomposition {
    pub fn packet(&self, k: usize) -> Option<&BTreeMap<CollectionLabel, Vec<CanonicalForm>>> {
        self.packets.get(&PacketLabel {
            n: self.params.n(),
            k,
        })
    }

    pub fn collection(&self, suffix: &[SuffixFactor]) -> Option<&[CanonicalForm]> {
        let label = CollectionLabel {
            n: self.params.top(),
            suffix: suffix.to_vec(),
        };
        self.packets
            .values()
            .find_map(|p| p.get(&label))
            .map(Vec::as_slice)
    }

    pub fn total(&self) -> usize {
        self.packets
            .values()
            .flat_map(|p| p.values())
            .map(Vec::len)
            .sum()
    }

    /// Number of collections in each packet.
    pub fn packet_sizes(&self) -> BTreeMap<usize, usize> {
        self.packets.iter().map(|(l, p)| (l.k, p.len())).collect()
    }
}

pub fn decompose(params: &GroupParams) -> Result<Decomposition> {
    decompose_with_budget(params, crate::group::DEFAULT_BUDGET, DEFAULT_CLASS_BUDGET)
}

/// Groups [`enumerate_fc_with_budget`] by suffix and then by packet. Members
/// of a collection are sorted by prefix word.
pub fn decompose_with_budget(
    params: &GroupParams,
    budget: u64,
    class_budget: usize,
) -> Result<Decomposition> {
    let mut packets: BTreeMap<PacketLabel, BTreeMap<CollectionLabel, Vec<CanonicalForm>>> =
        BTreeMap::new();
    for cf in enumerate_fc_with_budget(params, budget, class_budget)? {
        let label = CollectionLabel::of(&cf);
        let packet = classify_packet(&label.suffix, &params.ambient())?;
        packets
            .entry(packet)
            .or_default()
            .entry(label)
            .or_default()
            .push(cf);
    }
    for coll in packets.values_mut().flat_map(|p| p.values_mut()) {
        coll.sort_by_cached_key(|cf| cf.prefix_word());
    }
    Ok(Decomposition {
        params: *params,
        packets,
    })
}

/// All fully commutative canonical forms of `G(d, 1, n)` with the given
/// suffix, sorted by prefix word.
pub fn collection(params: &GroupParams, suffix: &[SuffixFactor]) -> Result<Vec<CanonicalForm>> {
    let ambient = params.ambient();
    validate_suffix(suffix, &ambient)?;
    let prefixes = canonical_forms(&GroupParams::full(1, ambient.n())?);
    let mut out = Vec::new();
    for p in prefixes {
        let cf = CanonicalForm {
            prefix: p.prefix,
            suffix: suffix.to_vec(),
        };
        if cf_is_fully_commutative(&cf, &ambient, DEFAULT_CLASS_BUDGET)? {
            out.push(cf);
        }
    }
    out.sort_by_cached_key(|cf| cf.prefix_word());
    Ok(out)
}

fn not_in(cf: &CanonicalForm, what: &str) -> Error {
    Error::NotInCollection(format!(
        "{} is not in {what}",
        cf.flatten().to_compact_string()
    ))
}

fn check_fc(cf: &CanonicalForm, params: &GroupParams, what: &str) -> Result<()> {
    if cf_is_fully_commutative(cf, params, DEFAULT_CLASS_BUDGET)? {
        Ok(())
    } else {
        Err(not_in(cf, what))
    }
}

fn check_k(params: &GroupParams, k: usize) -> Result<()> {
    if k < 1 || k + 2 > params.n() {
        return Err(Error::OutOfRange(format!(
            "k={k} outside 1..={}",
            params.n() as i64 - 2
        )));
    }
    Ok(())
}

/// Maps the collection of `s^{(t')}_{nk}` onto that of `s^{(t1)}_{n,k+1} s_n`.
///
/// A prefix ending below `k` is kept. A prefix ending with the run
/// `[m, m+1, …, n-1]`, `m >= k` least, has that run replaced by `s_{mk}`.
pub fn bijection_sigma(
    w: &CanonicalForm,
    k: usize,
    t1: u32,
    params: &GroupParams,
) -> Result<CanonicalForm> {
    let params = params.ambient();
    check_k(&params, k)?;
    let n = params.n();
    let what = format!("the collection of s^(t')_{{{n},{k}}}");
    match w.suffix() {
        [f] if f.j as usize == k => {}
        _ => return Err(not_in(w, &what)),
    }
    check_fc(w, &params, &what)?;
    let target = vec![
        SuffixFactor::new(k as u8 + 1, t1),
        SuffixFactor::new(n as u8, 1),
    ];
    validate_suffix(&target, &params)?;
    let mut prefix = w.prefix().to_vec();
    match w.last_prefix_letter() {
        Some(r) if r as usize >= k => {
            if r as usize != n - 1 {
                return Err(not_in(w, &what));
            }
            // segments m..n-1 are the singletons [p]
            let mut m = n - 1;
            while m > k && prefix[m - 2] as usize == m - 1 {
                m -= 1;
            }
            prefix[m - 1] = k as u8;
            for p in m + 1..n {
                prefix[p - 1] = p as u8 + 1;
            }
        }
        _ => {}
    }
    Ok(CanonicalForm {
        prefix,
        suffix: target,
    })
}

/// Inverse of [`bijection_sigma`]: maps the collection of
/// `s^{(t1)}_{n,k+1} s_n` onto that of `s^{(t')}_{nk}`.
pub fn bijection_eta(
    w: &CanonicalForm,
    k: usize,
    t_prime: u32,
    params: &GroupParams,
) -> Result<CanonicalForm> {
    let params = params.ambient();
    check_k(&params, k)?;
    let n = params.n();
    let what = format!("the collection of s^(t1)_{{{n},{}}} s_{n}", k + 1);
    match w.suffix() {
        [a, b] if a.j as usize == k + 1 && b.j as usize == n && b.k == 1 => {}
        _ => return Err(not_in(w, &what)),
    }
    check_fc(w, &params, &what)?;
    let target = vec![SuffixFactor::new(k as u8, t_prime)];
    validate_suffix(&target, &params)?;
    let mut prefix = w.prefix().to_vec();
    match w.last_prefix_letter() {
        Some(r) if r as usize >= k => {
            if r as usize != k {
                return Err(not_in(w, &what));
            }
            let m = (1..n)
                .rev()
                .find(|&p| prefix[p - 1] as usize <= p)
                .expect("prefix is nonempty");
            for p in m..n {
                prefix[p - 1] = p as u8;
            }
        }
        _ => {}
    }
    Ok(CanonicalForm {
        prefix,
        suffix: target,
    })
}

/// An element of the disjoint union `c_n([n..k, n]) ⊔ c_{n-1}([n-1..k])`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PhiDomain {
    /// Rank `n`, suffix `[n, n-1, …, k, n]`.
    Upper(CanonicalForm),
    /// Rank `n - 1`, suffix `[n-1, …, k]`.
    Lower(CanonicalForm),
}

/// The bijection `φ` and its inverse `ρ` realising
/// `C(n, k) = C(n, k-1) + C(n-1, k)` on collections of `G(d, 1, n)`,
/// `n >= 4`, `1 <= k <= n-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiRho {
    upper: GroupParams,
    lower: GroupParams,
    k: usize,
}

impl PhiRho {
    pub fn new(params: &GroupParams, k: usize) -> Result<Self> {
        let upper = params.ambient();
        if upper.n() < 4 {
            return Err(Error::OutOfRange(format!(
                "needs n >= 4, got {}",
                upper.n()
            )));
        }
        if upper.d() < 2 {
            return Err(Error::OutOfRange("needs d >= 2".into()));
        }
        check_k(&upper, k)?;
        let lower = GroupParams::full(upper.d(), upper.n() - 1)?;
        Ok(PhiRho { upper, lower, k })
    }

    /// `[n, …, k, n]`
    pub fn suffix_upper(&self) -> Vec<SuffixFactor> {
        vec![
            SuffixFactor::new(self.k as u8, 1),
            SuffixFactor::new(self.upper.top(), 1),
        ]
    }

    /// `[n, …, k]`
    pub fn suffix_target(&self) -> Vec<SuffixFactor> {
        vec![SuffixFactor::new(self.k as u8, 1)]
    }

    /// `[n-1, …, k]` over rank `n - 1`
    pub fn suffix_lower(&self) -> Vec<SuffixFactor> {
        vec![SuffixFactor::new(self.k as u8, 1)]
    }

    pub fn domain(&self) -> Result<Vec<PhiDomain>> {
        let mut out: Vec<PhiDomain> = collection(&self.upper, &self.suffix_upper())?
            .into_iter()
            .map(PhiDomain::Upper)
            .collect();
        out.extend(
            collection(&self.lower, &self.suffix_lower())?
                .into_iter()
                .map(PhiDomain::Lower),
        );
        Ok(out)
    }

    pub fn codomain(&self) -> Result<Vec<CanonicalForm>> {
        collection(&self.upper, &self.suffix_target())
    }

    pub fn phi(&self, x: &PhiDomain) -> Result<CanonicalForm> {
        match x {
            PhiDomain::Upper(cf) => {
                if cf.rank() != self.upper.n() || cf.suffix() != self.suffix_upper() {
                    return Err(not_in(cf, "the upper collection"));
                }
                check_fc(cf, &self.upper, "the upper collection")?;
                Ok(CanonicalForm {
                    prefix: cf.prefix().to_vec(),
                    suffix: self.suffix_target(),
                })
            }
            PhiDomain::Lower(cf) => {
                if cf.rank() != self.lower.n() || cf.suffix() != self.suffix_lower() {
                    return Err(not_in(cf, "the lower collection"));
                }
                check_fc(cf, &self.lower, "the lower collection")?;
                let mut prefix = cf.prefix().to_vec();
                prefix.push(self.lower.top());
                Ok(CanonicalForm {
                    prefix,
                    suffix: self.suffix_target(),
                })
            }
        }
    }

    pub fn rho(&self, w: &CanonicalForm) -> Result<PhiDomain> {
        if w.rank() != self.upper.n() || w.suffix() != self.suffix_target() {
            return Err(not_in(w, "the target collection"));
        }
        check_fc(w, &self.upper, "the target collection")?;
        let n = self.upper.n();
        if w.last_prefix_letter() == Some(n as u8 - 1) {
            let prefix = w.prefix()[..n - 2].to_vec();
            Ok(PhiDomain::Lower(CanonicalForm {
                prefix,
                suffix: self.suffix_lower(),
            }))
        } else {
            Ok(PhiDomain::Upper(CanonicalForm {
                prefix: w.prefix().to_vec(),
                suffix: self.suffix_upper(),
            }))
        }
    }
}

/// Whether the label lies in `G(d, r, n)`.
pub fn label_is_member(label: &CollectionLabel, params: &GroupParams) -> bool {
    let cf = CanonicalForm {
        prefix: Vec::new(),
        suffix: label.suffix.clone(),
    };
    is_member(&cf, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn g(d: u32, r: u32, n: usize) -> GroupParams {
        GroupParams::new(d, r, n).unwrap()
    }

    fn sf(j: u8, k: u32) -> SuffixFactor {
        SuffixFactor::new(j, k)
    }

    #[test]
    fn triangle_matches_factorial_formula() {
        let tri = CatalanTriangle::new(12);
        for n in 0..=12u64 {
            for k in 0..=n {
                // (n+k)! (n-k+1) / (k! (n+1)!) = binom(n+k, k) (n-k+1) / (n+1)
                let v = binomial(BigUint::from(n + k), BigUint::from(k)) * (n - k + 1) / (n + 1);
                assert_eq!(tri.get(n as usize, k as usize).unwrap(), &v);
            }
        }
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(catalan_triangle(3, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(catalan_triangle(4, 2).unwrap(), BigUint::from(9u32));
        assert_eq!(catalan_triangle(9, 0).unwrap(), BigUint::one());
        assert!(catalan_triangle(2, 3).is_err());
        let last: Vec<u32> = vec![1, 7, 27, 75, 165, 297, 429, 429];
        let row: Vec<BigUint> = last.into_iter().map(BigUint::from).collect();
        assert_eq!(CatalanTriangle::new(7).row(7).unwrap(), row.as_slice());
        assert_eq!(catalan_number(5), BigUint::from(42u32));
    }

    #[test]
    fn poly_examples() {
        assert_eq!(catalan_poly(3, 1, 2).unwrap(), BigInt::from(5));
        assert_eq!(catalan_poly(3, 1, 3).unwrap(), BigInt::from(6));
        assert_eq!(catalan_poly(6, 0, 17).unwrap(), BigInt::one());
        assert!(catalan_poly(3, 4, 2).is_err());
    }

    #[test]
    fn classify_examples() {
        let p = g(2, 1, 3);
        assert_eq!(classify_packet(&[sf(1, 1), sf(3, 1)], &p).unwrap().k, 0);
        assert_eq!(classify_packet(&[sf(3, 1)], &p).unwrap().k, 2);
        assert_eq!(classify_packet(&[sf(2, 1)], &p).unwrap().k, 2);
        assert_eq!(classify_packet(&[sf(1, 1)], &p).unwrap().k, 1);
        assert_eq!(classify_packet(&[sf(2, 1), sf(3, 1)], &p).unwrap().k, 1);
        assert_eq!(
            classify_packet(&[], &p).unwrap(),
            PacketLabel { n: 3, k: 3 }
        );
        assert!(matches!(
            classify_packet(&[sf(2, 1), sf(1, 1)], &p),
            Err(Error::InvalidSuffix(_))
        ));
    }

    #[test]
    fn packet_size_examples() {
        assert_eq!(packet_size(&g(3, 1, 3), 0).unwrap(), BigUint::from(16u32));
        assert_eq!(packet_size(&g(3, 3, 3), 0).unwrap(), BigUint::from(6u32));
        assert_eq!(packet_size(&g(2, 1, 3), 2).unwrap(), BigUint::from(2u32));
        assert!(packet_size(&g(2, 1, 3), 4).is_err());
    }

    #[test]
    fn packet_sizes_sum_to_suffix_count() {
        for d in 1..=5u32 {
            for r in (1..=d).filter(|r| d % r == 0) {
                for n in 3..=6 {
                    let p = g(d, r, n);
                    let total: BigUint = (0..=n).map(|k| packet_size(&p, k).unwrap()).sum();
                    assert_eq!(total, BigUint::from(d).pow(n as u32) / r, "{p}");
                    let labels = member_suffixes(&p);
                    assert_eq!(BigUint::from(labels.len()), total, "{p}");
                    let mut by_k = vec![0usize; n + 1];
                    for l in &labels {
                        by_k[classify_packet(l.suffix(), &p).unwrap().k] += 1;
                    }
                    for (k, c) in by_k.into_iter().enumerate() {
                        assert_eq!(BigUint::from(c), packet_size(&p, k).unwrap(), "{p} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_fc_closed(&g(3, 1, 3)).unwrap(), BigUint::from(59u32));
        assert_eq!(count_fc_closed(&g(3, 3, 3)).unwrap(), BigUint::from(17u32));
        assert_eq!(count_fc_closed(&g(2, 2, 4)).unwrap(), BigUint::from(35u32));
        assert!(count_fc_closed(&g(2, 1, 2)).is_err());
        for n in 3..=10 {
            let c = catalan_number(n);
            let b = count_fc_closed(&g(2, 1, n)).unwrap();
            assert_eq!(b, BigUint::from(n + 2) * &c - 1u32);
            let dd = count_fc_closed(&g(2, 2, n)).unwrap();
            assert_eq!(dd, BigUint::from(n + 1) * &c / 2u32);
        }
        for d in 1..=6u32 {
            for r in (1..=d).filter(|r| d % r == 0) {
                for n in 3..=8 {
                    let p = g(d, r, n);
                    assert_eq!(
                        count_fc_closed(&p).unwrap(),
                        count_fc_by_packets(&p).unwrap(),
                        "{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn coxeter_examples() {
        assert_eq!(
            coxeter_fc_count(CoxeterType::D, 4).unwrap(),
            BigUint::from(48u32)
        );
        assert_eq!(
            coxeter_fc_count(CoxeterType::B, 3).unwrap(),
            BigUint::from(24u32)
        );
        assert_eq!(
            coxeter_fc_count(CoxeterType::A, 1).unwrap(),
            BigUint::from(2u32)
        );
        assert!(coxeter_fc_count(CoxeterType::D, 3).is_err());
    }

    #[test]
    fn generating_function_matches_closed_form() {
        for d in 2..=4 {
            let coeffs = fc_generating_function(d, 8);
            assert_eq!(coeffs[0], BigInt::one());
            for (n, c) in coeffs.iter().enumerate().skip(3) {
                let closed = count_fc_closed(&g(d, d, n)).unwrap();
                assert_eq!(c, &BigInt::from(closed), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn table_one_collections() {
        let dec = decompose(&g(2, 1, 3)).unwrap();
        let words: Vec<String> = dec
            .collection(&[sf(2, 1)])
            .unwrap()
            .iter()
            .map(|cf| cf.flatten().to_compact_string())
            .collect();
        assert_eq!(words, ["3,2", "1,3,2", "1,2,3,2", "2,3,2", "2,1,3,2"]);
        assert_eq!(dec.total(), 24);
        let sizes: Vec<usize> = dec.packet_sizes().into_values().collect();
        assert_eq!(sizes, [3, 2, 2, 1]);
    }

    #[test]
    fn g313_and_g333_collections() {
        let dec = decompose(&g(3, 1, 3)).unwrap();
        let words: Vec<String> = dec
            .collection(&[sf(2, 1), sf(3, 1)])
            .unwrap()
            .iter()
            .map(|cf| cf.flatten().to_compact_string())
            .collect();
        assert_eq!(words, ["3,2,3", "1,3,2,3", "2,1,3,2,3"]);
        let dec = decompose(&g(3, 3, 3)).unwrap();
        let top = dec.packet(3).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top.values().next().unwrap().len(), 5);
        assert_eq!(dec.packet(0).unwrap().len(), 6);
        assert!(dec.packet(2).is_none());
    }

    #[test]
    fn sigma_eta_round_trip_small() {
        for d in 2..=3 {
            for n in 3..=4 {
                let p = g(d, 1, n);
                for k in 1..=n - 2 {
                    for t in 1..d {
                        let c2 = collection(&p, &[sf(k as u8, t)]).unwrap();
                        let c1 = collection(&p, &[sf(k as u8 + 1, t), sf(n as u8, 1)]).unwrap();
                        assert_eq!(c1.len(), c2.len());
                        for w in &c2 {
                            let s = bijection_sigma(w, k, t, &p).unwrap();
                            assert!(c1.contains(&s), "{p} k={k}: {}", s.flatten());
                            assert_eq!(&bijection_eta(&s, k, t, &p).unwrap(), w);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi_rho_round_trip() {
        let p = g(2, 1, 4);
        let pr = PhiRho::new(&p, 2).unwrap();
        let dom = pr.domain().unwrap();
        let cod = pr.codomain().unwrap();
        assert_eq!((dom.len(), cod.len()), (9, 9));
        for x in &dom {
            let y = pr.phi(x).unwrap();
            assert!(cod.contains(&y));
            assert_eq!(&pr.rho(&y).unwrap(), x);
        }
        assert!(PhiRho::new(&g(2, 1, 3), 1).is_err());
    }
}
