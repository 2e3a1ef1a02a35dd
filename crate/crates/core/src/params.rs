use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported rank. Letters are stored as `u8`.
pub const MAX_RANK: usize = 64;

/// The triple `(d, r, n)` naming the group `G(d, r, n)`, with `r | d`.
///
/// `G(d, 1, n)` is the wreath product `Z/dZ ≀ S_n` on generators
/// `s_1, …, s_n`; for `r > 1` the group is handled as a subgroup of index `r`
/// inside `G(d, 1, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct GroupParams {
    d: u32,
    r: u32,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    d: u32,
    r: u32,
    n: usize,
}

impl TryFrom<RawParams> for GroupParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        GroupParams::new(raw.d, raw.r, raw.n)
    }
}

impl From<GroupParams> for RawParams {
    fn from(p: GroupParams) -> Self {
        RawParams {
            d: p.d,
            r: p.r,
            n: p.n,
        }
    }
}

impl GroupParams {
    pub fn new(d: u32, r: u32, n: usize) -> Result<Self> {
        if d == 0 || r == 0 {
            return Err(Error::InvalidParams(format!(
                "d={d} and r={r} must be positive"
            )));
        }
        if !d.is_multiple_of(r) {
            return Err(Error::InvalidParams(format!("r={r} does not divide d={d}")));
        }
        if n < 2 {
            return Err(Error::InvalidParams(format!(
                "rank n={n} must be at least 2"
            )));
        }
        if r > 1 && n < 3 {
            return Err(Error::InvalidParams(format!(
                "G({d},{r},{n}) needs n >= 3 when r > 1"
            )));
        }
        if n > MAX_RANK {
            return Err(Error::InvalidParams(format!(
                "rank n={n} exceeds {MAX_RANK}"
            )));
        }
        Ok(GroupParams { d, r, n })
    }

    /// `G(d, 1, n)`.
    pub fn full(d: u32, n: usize) -> Result<Self> {
        Self::new(d, 1, n)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `e = d / r`, the order of the extra generator of `G(d, r, n)`.
    pub fn e(&self) -> u32 {
        self.d / self.r
    }

    /// The special generator `s_n` as a letter.
    pub fn top(&self) -> u8 {
        self.n as u8
    }

    /// The ambient group `G(d, 1, n)`.
    pub fn ambient(&self) -> GroupParams {
        GroupParams {
            d: self.d,
            r: 1,
            n: self.n,
        }
    }

    pub fn is_full(&self) -> bool {
        self.r == 1
    }

    /// `n! · d^n / r`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for i in 2..=self.n as u128 {
            acc = acc.saturating_mul(i);
        }
        for _ in 0..self.n {
            acc = acc.saturating_mul(self.d as u128);
        }
        if acc == u128::MAX {
            acc
        } else {
            acc / self.r as u128
        }
    }

    pub(crate) fn check_budget(&self, budget: u64) -> Result<()> {
        let order = self.ambient().order();
        if order > budget as u128 {
            Err(Error::BudgetExceeded { order, budget })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.d, self.r, self.n)
    }
}

/// Accepts `"d,r,n"`, `"G(d,r,n)"`, or the Coxeter shortcuts `A<m>`
/// (`G(1,1,m+1)`), `B<m>` (`G(2,1,m)`) and `D<m>` (`G(2,2,m)`).
impl FromStr for GroupParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParams(format!("cannot parse group {s:?}"));
        if let Some(rest) = s.strip_prefix(['A', 'B', 'D']) {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let m: usize = rest.parse().map_err(|_| bad())?;
                return match s.as_bytes()[0] {
                    b'A' => GroupParams::new(1, 1, m + 1),
                    b'B' => GroupParams::new(2, 1, m),
                    _ => GroupParams::new(2, 2, m),
                };
            }
        }
        let inner = s
            .strip_prefix("G(")
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let d = parts[0].parse().map_err(|_| bad())?;
        let r = parts[1].parse().map_err(|_| bad())?;
        let n = parts[2].parse().map_err(|_| bad())?;
        GroupParams::new(d, r, n)
    }
}
