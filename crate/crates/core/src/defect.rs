//! The defect `δ(n) = ||n|| - 3 log_3 n` and everything built on it.
//!
//! Defects are irrational in general, so they are never materialized for
//! ordering. A [`DefectKey`] keeps the pair `(c, n)` and comparisons clear
//! the logarithms: `δ(n1) <= δ(n2)` iff `3^c1 * n2^3 <= 3^c2 * n1^3`.
//! Floats appear only in [`DefectKey::to_f64`] for display.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::complexity::ComplexityTable;
use crate::error::{Error, Result};
use crate::exact::{ceil_log3, cmp_scaled, log3_big};

/// Largest denominator accepted by [`DefectThreshold`].
pub const MAX_DENOMINATOR: u64 = 64;

/// Exact handle on the defect-like quantity `c - 3 log_3 n`.
///
/// Also used for `δ(f, C)` (with `n` the leading coefficient) and for
/// `δ_{f,C}` at a point (with `n` the polynomial's value).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefectKey {
    pub complexity: u64,
    pub n: BigUint,
}

impl DefectKey {
    pub fn new(complexity: u64, n: impl Into<BigUint>) -> Self {
        Self {
            complexity,
            n: n.into(),
        }
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        self.complexity as f64 - 3.0 * log3_big(&self.n)
    }

    pub fn cmp_defect(&self, other: &DefectKey) -> Ordering {
        compare_defects(self, other)
    }

    /// `n` as a `u64`, when it fits.
    pub fn n_u64(&self) -> Option<u64> {
        self.n.to_u64()
    }

    /// Largest integer not exceeding the value, or `None` if the value is
    /// negative.
    pub fn floor(&self) -> Option<u64> {
        // c - ceil(log_3 n^3)
        let t = ceil_log3(&self.n.pow(3)) as u64;
        self.complexity.checked_sub(t)
    }

    /// `Some(v)` when the value is exactly the integer `v`.
    ///
    /// `c - 3 log_3 n` is an integer exactly when `n^3` is a power of 3,
    /// that is, when `n` itself is one.
    pub fn integer_value(&self) -> Option<i64> {
        let mut n = self.n.clone();
        let mut k = 0i64;
        let three = BigUint::from(3u32);
        while n > BigUint::one() {
            let (q, r) = n.div_rem(&three);
            if r != BigUint::default() {
                return None;
            }
            n = q;
            k += 1;
        }
        if n != BigUint::one() {
            return None;
        }
        Some(self.complexity as i64 - 3 * k)
    }
}

/// Strict upper bound `δ(n) < p/q`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DefectThreshold {
    p: u64,
    q: u64,
}

impl DefectThreshold {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Threshold(String::from("zero denominator")));
        }
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        if q > MAX_DENOMINATOR {
            return Err(Error::Threshold(format!(
                "denominator {q} exceeds {MAX_DENOMINATOR}"
            )));
        }
        Ok(Self { p, q })
    }

    pub fn integer(p: u64) -> Self {
        Self { p, q: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.p
    }

    pub fn denom(&self) -> u64 {
        self.q
    }

    pub fn floor(&self) -> u64 {
        self.p / self.q
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }
}

impl fmt::Display for DefectThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for DefectThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Threshold(format!("expected p/q, got {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse().map_err(|_| bad())?;
                let q = q.trim().parse().map_err(|_| bad())?;
                Self::new(p, q)
            }
            None => Ok(Self::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// `(||n||, n)`.
pub fn defect_key(table: &ComplexityTable, n: u64) -> Result<DefectKey> {
    Ok(DefectKey::new(table.complexity(n)? as u64, n))
}

/// Exact total preorder on defects.
pub fn compare_defects(a: &DefectKey, b: &DefectKey) -> Ordering {
    // δa <= δb  iff  3^ca * nb^3 <= 3^cb * na^3
    cmp_scaled(a.complexity, &b.n, 3, b.complexity, &a.n, 3)
}

/// Exact test `c - 3 log_3 n < p/q`, i.e. `3^(qc) < 3^p * n^(3q)`.
pub fn defect_less_than(key: &DefectKey, r: DefectThreshold) -> bool {
    let qc = r.q * key.complexity;
    let one = BigUint::one();
    cmp_scaled(qc, &one, 1, r.p, &key.n, (3 * r.q) as u32) == Ordering::Less
}

/// Smallest number with its defect: `3 ∤ n`, or `||n|| < 3 + ||n/3||`.
pub fn is_leader(table: &ComplexityTable, n: u64) -> Result<bool> {
    let c = table.complexity(n)?;
    Ok(!n.is_multiple_of(3) || c < 3 + table.get(n / 3))
}

/// `A_r ∩ [1, bound]`, ascending.
pub fn enumerate_a_r(table: &ComplexityTable, r: DefectThreshold, bound: u64) -> Result<Vec<u64>> {
    if bound > table.limit() {
        return Err(Error::OutOfRange {
            n: bound,
            limit: table.limit(),
        });
    }
    Ok((1..=bound)
        .filter(|&n| defect_less_than(&DefectKey::new(table.get(n) as u64, n), r))
        .collect())
}

/// `B_r ∩ [1, bound]`: the leaders of [`enumerate_a_r`], ascending.
pub fn enumerate_b_r(table: &ComplexityTable, r: DefectThreshold, bound: u64) -> Result<Vec<u64>> {
    let all = enumerate_a_r(table, r, bound)?;
    Ok(all
        .into_iter()
        .filter(|&n| n % 3 != 0 || table.get(n) < 3 + table.get(n / 3))
        .collect())
}

/// `||n|| mod 3`, with 1 excluded from every class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DefectClass {
    Residue(u8),
    Excluded,
}

impl fmt::Display for DefectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefectClass::Residue(a) => write!(f, "{a}"),
            DefectClass::Excluded => f.write_str("Excluded"),
        }
    }
}

pub fn defect_class(table: &ComplexityTable, n: u64) -> Result<DefectClass> {
    let c = table.complexity(n)?;
    Ok(if n == 1 {
        DefectClass::Excluded
    } else {
        DefectClass::Residue((c % 3) as u8)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `||3^k n|| = 3k + ||n||` for every checkable `k >= 1`.
    StableWithinHorizon,
    /// Some checkable `k` has `||3^k n|| < 3k + ||n||`.
    UnstableProven,
    /// `3n` is already past the table limit.
    HorizonExhausted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::StableWithinHorizon => "StableWithinHorizon",
            Verdict::UnstableProven => "UnstableProven",
            Verdict::HorizonExhausted => "HorizonExhausted",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabilityStatus {
    pub verdict: Verdict,
    /// Largest `k` with `3^k n <= limit`.
    pub k_checked: u32,
    /// Smallest `k` witnessing instability.
    pub witness: Option<u32>,
}

fn horizon(table: &ComplexityTable, n: u64) -> u32 {
    let mut k = 0;
    let mut m = n;
    while let Some(next) = m.checked_mul(3) {
        if next > table.limit() {
            break;
        }
        m = next;
        k += 1;
    }
    k
}

pub fn stability(table: &ComplexityTable, n: u64) -> Result<StabilityStatus> {
    let c = table.complexity(n)?;
    let k_checked = horizon(table, n);
    let mut m = n;
    for k in 1..=k_checked {
        m *= 3;
        if table.get(m) < 3 * k + c {
            return Ok(StabilityStatus {
                verdict: Verdict::UnstableProven,
                k_checked,
                witness: Some(k),
            });
        }
    }
    let verdict = if k_checked == 0 {
        Verdict::HorizonExhausted
    } else {
        Verdict::StableWithinHorizon
    };
    Ok(StabilityStatus {
        verdict,
        k_checked,
        witness: None,
    })
}

/// `min_k (||3^k n|| - 3k)` over the checkable `k`, with the first `k`
/// attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableComplexity {
    pub value: u32,
    pub argmin_k: u32,
    pub status: StabilityStatus,
}

pub fn stable_complexity(table: &ComplexityTable, n: u64) -> Result<StableComplexity> {
    let status = stability(table, n)?;
    let mut best = table.get(n);
    let mut argmin_k = 0;
    let mut m = n;
    for k in 1..=status.k_checked {
        m *= 3;
        let v = table.get(m) - 3 * k;
        if v < best {
            best = v;
            argmin_k = k;
        }
    }
    Ok(StableComplexity {
        value: best,
        argmin_k,
        status,
    })
}

/// Key of `3^k n` at the minimizing `k`; its value is `δ_st(n)` whenever
/// the chain stabilizes inside the table.
pub fn stable_defect_key(table: &ComplexityTable, n: u64) -> Result<DefectKey> {
    let sc = stable_complexity(table, n)?;
    let m = n * 3u64.pow(sc.argmin_k);
    Ok(DefectKey::new(table.get(m) as u64, m))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DefectFilters {
    pub class: Option<u8>,
    pub stable_only: bool,
    pub threshold: Option<DefectThreshold>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectEntry {
    pub key: DefectKey,
    pub leader: u64,
    pub class: DefectClass,
    pub status: StabilityStatus,
}

/// One entry per distinct defect among `1..=bound`, represented by its
/// leader and sorted by exact defect order.
///
/// `stable_only` keeps chains verified stable within the table horizon;
/// chains whose stability cannot be checked are dropped.
pub fn sorted_defects(
    table: &ComplexityTable,
    bound: u64,
    filters: DefectFilters,
) -> Result<Vec<DefectEntry>> {
    if bound > table.limit() {
        return Err(Error::OutOfRange {
            n: bound,
            limit: table.limit(),
        });
    }
    let mut out = Vec::new();
    for n in 1..=bound {
        let c = table.get(n);
        if n % 3 == 0 && c == 3 + table.get(n / 3) {
            continue;
        }
        let class = if n == 1 {
            DefectClass::Excluded
        } else {
            DefectClass::Residue((c % 3) as u8)
        };
        if let Some(a) = filters.class {
            if class != DefectClass::Residue(a) {
                continue;
            }
        }
        let key = DefectKey::new(c as u64, n);
        if let Some(r) = filters.threshold {
            if !defect_less_than(&key, r) {
                continue;
            }
        }
        let status = stability(table, n)?;
        if filters.stable_only && status.verdict != Verdict::StableWithinHorizon {
            continue;
        }
        out.push(DefectEntry {
            key,
            leader: n,
            class,
            status,
        });
    }
    out.sort_by(|a, b| compare_defects(&a.key, &b.key).then(a.leader.cmp(&b.leader)));
    Ok(out)
}
