//! Integer complexity: the least number of 1s needed to write `n` using
//! `+`, `*` and parentheses.
//!
//! [`ComplexityTable`] is built bottom-up. Every `n` starts from the upper
//! bound `||n-1|| + 1` and the best factorization pushed forward by a
//! multiplicative sieve; additive splits are then searched only among
//! summands whose complexity can still beat that bound. Selfridge's formula
//! for the largest number writable with `k` ones drives the pruning.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest bound accepted by [`oracle_complexity`].
pub const ORACLE_MAX: u64 = 10_000;

/// Largest number writable with `k` ones (`E(k)`), exactly.
///
/// `E(0)` is not meaningful; it is returned as 0.
pub fn selfridge_e(k: u32) -> BigUint {
    match k {
        0 => BigUint::default(),
        1 => BigUint::one(),
        _ => {
            let (factor, power) = selfridge_parts(k);
            BigUint::from(factor) * BigUint::from(3u32).pow(power)
        }
    }
}

/// `E(k)` saturated to `u64::MAX`.
pub fn selfridge_e_saturating(k: u32) -> u64 {
    match k {
        0 => 0,
        1 => 1,
        _ => {
            let (factor, power) = selfridge_parts(k);
            let mut v = factor as u64;
            for _ in 0..power {
                v = match v.checked_mul(3) {
                    Some(x) => x,
                    None => return u64::MAX,
                };
            }
            v
        }
    }
}

// E(k) = factor * 3^power for k >= 2.
fn selfridge_parts(k: u32) -> (u32, u32) {
    match k % 3 {
        0 => (1, k / 3),
        2 => (2, k / 3),
        _ => (4, (k - 4) / 3),
    }
}

/// How [`ComplexityTable::build_with`] searches additive splits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BuildMode {
    /// Only summands that can still improve the current bound.
    #[default]
    Pruned,
    /// Every split `a + (n - a)` with `a <= n/2`. Quadratic; audit use only.
    Paranoid,
}

/// Dense table of `||n||` for `1 <= n <= limit`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexityTable {
    limit: u64,
    // entries[0] is unused and always 0.
    entries: Vec<u8>,
}

impl core::fmt::Debug for ComplexityTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ComplexityTable").field("limit", &self.limit).finish()
    }
}

impl ComplexityTable {
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with(limit, BuildMode::Pruned)
    }

    pub fn build_with(limit: u64, mode: BuildMode) -> Result<Self> {
        if limit == 0 {
            return Err(Error::ZeroLimit);
        }
        let len = usize::try_from(limit)
            .ok()
            .and_then(|l| l.checked_add(1))
            .ok_or(Error::Allocation { limit })?;
        let mut entries: Vec<u8> = Vec::new();
        entries
            .try_reserve_exact(len)
            .map_err(|_| Error::Allocation { limit })?;
        entries.resize(len, 0);

        let limit_us = len - 1;
        entries[1] = 1;
        // Numbers of each complexity, ascending; fed by the pruned search.
        let mut by_cpx: Vec<Vec<u32>> = vec![Vec::new(); 256];
        by_cpx[1].push(1);
        let e: Vec<u64> = (0..256).map(selfridge_e_saturating).collect();

        for n in 2..=limit_us {
            // entries[n] currently holds the best product bound, or 0.
            let mut best = entries[n - 1] as u32 + 1;
            if entries[n] != 0 {
                best = best.min(entries[n] as u32);
            }
            match mode {
                BuildMode::Paranoid => {
                    for a in 1..=n / 2 {
                        let c = entries[a] as u32 + entries[n - a] as u32;
                        if c < best {
                            best = c;
                        }
                    }
                }
                BuildMode::Pruned => {
                    let n64 = n as u64;
                    let mut j = 1u32;
                    // An improving split s + (n-s) with ||s|| = j <= ||n-s|| = t.
                    while 2 * j < best {
                        let t = best - 1 - j;
                        let hi_s = e[j as usize].min(n64 - 1);
                        let lo_s = n64.saturating_sub(e[t as usize]).max(1);
                        if lo_s <= hi_s {
                            let list = &by_cpx[j as usize];
                            let start = list.partition_point(|&s| (s as u64) < lo_s);
                            for &s in &list[start..] {
                                let s = s as usize;
                                if s as u64 > hi_s {
                                    break;
                                }
                                let c = j + entries[n - s] as u32;
                                if c < best {
                                    best = c;
                                }
                            }
                        }
                        j += 1;
                    }
                }
            }
            debug_assert!(best < 256);
            let best8 = best as u8;
            entries[n] = best8;
            if mode == BuildMode::Pruned {
                by_cpx[best as usize].push(n as u32);
            }
            // Push products d*n with 2 <= d <= n forward.
            let max_d = (limit_us / n).min(n);
            for d in 2..=max_d {
                let m = d * n;
                let c = entries[d] + best8;
                if entries[m] == 0 || c < entries[m] {
                    entries[m] = c;
                }
            }
        }
        Ok(Self {
            limit,
            entries,
        })
    }

    /// Wraps raw entries for `1..=limit` (as stored on disk) without
    /// checking them.
    pub fn from_entries(raw: &[u8]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::ZeroLimit);
        }
        let mut entries = Vec::new();
        entries
            .try_reserve_exact(raw.len() + 1)
            .map_err(|_| Error::Allocation { limit: raw.len() as u64 })?;
        entries.push(0);
        entries.extend_from_slice(raw);
        Ok(Self {
            limit: raw.len() as u64,
            entries,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Entries for `1..=limit`.
    pub fn as_bytes(&self) -> &[u8] {
        &self.entries[1..]
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= 1 && n <= self.limit
    }

    pub fn check(&self, n: u64) -> Result<()> {
        if self.contains(n) {
            Ok(())
        } else {
            Err(Error::OutOfRange { n, limit: self.limit })
        }
    }

    /// `||n||`, or a range error.
    pub fn complexity(&self, n: u64) -> Result<u32> {
        self.check(n)?;
        Ok(self.entries[n as usize] as u32)
    }

    /// `||n||` without the range check. Panics when `n > limit`.
    #[inline]
    pub fn get(&self, n: u64) -> u32 {
        self.entries[n as usize] as u32
    }

    /// Largest `n <= limit` with `||n|| <= k`, found by scanning the table.
    pub fn e_from_table(&self, k: u32) -> Result<u64> {
        let expected = selfridge_e_saturating(k);
        if k == 0 || expected > self.limit {
            return Err(Error::OutOfRange {
                n: expected,
                limit: self.limit,
            });
        }
        let found = (1..=self.limit)
            .rev()
            .find(|&n| self.get(n) <= k)
            .expect("||1|| = 1 <= k");
        Ok(found)
    }

    /// All `(a, b)` with `a + b = n`, `a <= b` and `||a|| + ||b|| = ||n||`.
    pub fn good_addition_splits(&self, n: u64) -> Result<Vec<(u64, u64)>> {
        self.check(n)?;
        let c = self.get(n);
        Ok((1..=n / 2)
            .filter(|&a| self.get(a) + self.get(n - a) == c)
            .map(|a| (a, n - a))
            .collect())
    }

    /// All `(d, n/d)` with `1 < d <= sqrt(n)` and `||d|| + ||n/d|| = ||n||`.
    pub fn good_factorizations(&self, n: u64) -> Result<Vec<(u64, u64)>> {
        self.check(n)?;
        let c = self.get(n);
        let mut out = Vec::new();
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) && self.get(d) + self.get(n / d) == c {
                out.push((d, n / d));
            }
            d += 1;
        }
        Ok(out)
    }

    pub fn is_solid(&self, n: u64) -> Result<bool> {
        self.check(n)?;
        let c = self.get(n);
        Ok(!(1..=n / 2).any(|a| self.get(a) + self.get(n - a) == c))
    }

    pub fn is_m_irreducible(&self, n: u64) -> Result<bool> {
        self.check(n)?;
        let c = self.get(n);
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) && self.get(d) + self.get(n / d) == c {
                return Ok(false);
            }
            d += 1;
        }
        Ok(true)
    }
}

/// Brute-force `||n||` for every `n <= bound`, independent of the table
/// builder.
///
/// Grows the sets `S_k` of numbers whose minimal expression uses exactly `k`
/// ones from `S_i` and `S_j` with `i + j = k`. Any subexpression of a minimal
/// expression is itself minimal and no larger than its parent, so values
/// above `bound` are never needed. Index 0 of the result is unused.
pub fn oracle_complexity(bound: u64) -> Result<Vec<u8>> {
    if bound == 0 {
        return Err(Error::ZeroLimit);
    }
    if bound > ORACLE_MAX {
        return Err(Error::OracleBound {
            bound,
            max: ORACLE_MAX,
        });
    }
    let b = bound as usize;
    let mut cpx = vec![0u8; b + 1];
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(), vec![1]];
    cpx[1] = 1;
    let mut remaining = b - 1;
    let mut k = 1usize;
    while remaining > 0 {
        k += 1;
        let mut fresh = Vec::new();
        for i in 1..=k / 2 {
            let j = k - i;
            for &x in &levels[i] {
                for &y in &levels[j] {
                    for v in [x + y, x.saturating_mul(y)] {
                        if v <= b && cpx[v] == 0 {
                            cpx[v] = k as u8;
                            fresh.push(v);
                        }
                    }
                }
            }
        }
        remaining -= fresh.len();
        fresh.sort_unstable();
        levels.push(fresh);
    }
    Ok(cpx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_ten() {
        let t = ComplexityTable::build(10).unwrap();
        assert_eq!(t.as_bytes(), &[1, 2, 3, 4, 5, 5, 6, 6, 6, 7]);
    }

    #[test]
    fn eleven_and_five_to_the_sixth() {
        let t = ComplexityTable::build(15625).unwrap();
        assert_eq!(t.complexity(11).unwrap(), 8);
        assert_eq!(t.complexity(15625).unwrap(), 29);
        assert_eq!(t.complexity(3u64.pow(7)).unwrap(), 21);
        assert_eq!(t.complexity(1).unwrap(), 1);
    }

    #[test]
    fn zero_limit_rejected() {
        assert_eq!(ComplexityTable::build(0), Err(Error::ZeroLimit));
    }

    #[test]
    fn out_of_range() {
        let t = ComplexityTable::build(20).unwrap();
        assert!(matches!(t.complexity(21), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.complexity(0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn pruned_matches_paranoid() {
        let a = ComplexityTable::build_with(3000, BuildMode::Pruned).unwrap();
        let b = ComplexityTable::build_with(3000, BuildMode::Paranoid).unwrap();
        assert_eq!(a.as_bytes(), b.as_bytes());
    }

    #[test]
    fn oracle_small_values() {
        let o = oracle_complexity(11).unwrap();
        assert_eq!(o[11], 8);
        assert_eq!(o[6], 5);
        assert_eq!(oracle_complexity(1).unwrap()[1], 1);
        assert!(matches!(
            oracle_complexity(ORACLE_MAX + 1),
            Err(Error::OracleBound { .. })
        ));
    }

    #[test]
    fn oracle_agrees_with_table() {
        let o = oracle_complexity(2000).unwrap();
        let t = ComplexityTable::build(2000).unwrap();
        assert_eq!(&o[1..], t.as_bytes());
    }

    #[test]
    fn selfridge_values() {
        let want = [(1, 1u64), (3, 3), (5, 6), (7, 12), (36, 531_441)];
        for (k, v) in want {
            assert_eq!(selfridge_e(k), BigUint::from(v), "E({k})");
            assert_eq!(selfridge_e_saturating(k), v);
        }
        assert_eq!(selfridge_e(4), BigUint::from(4u32));
        assert_eq!(selfridge_e_saturating(400), u64::MAX);
    }

    #[test]
    fn e_from_table_small() {
        let t = ComplexityTable::build(2000).unwrap();
        assert_eq!(t.e_from_table(7).unwrap(), 12);
        assert_eq!(t.e_from_table(1).unwrap(), 1);
        for k in 2..=20 {
            assert_eq!(t.e_from_table(k).unwrap(), selfridge_e_saturating(k));
        }
        assert!(t.e_from_table(30).is_err());
    }

    #[test]
    fn splits_and_factorizations() {
        let t = ComplexityTable::build(100).unwrap();
        assert_eq!(t.good_addition_splits(2).unwrap(), vec![(1, 1)]);
        assert_eq!(t.good_addition_splits(8).unwrap(), vec![]);
        assert_eq!(t.good_addition_splits(7).unwrap(), vec![(1, 6)]);
        assert_eq!(t.good_factorizations(6).unwrap(), vec![(2, 3)]);
        assert_eq!(t.good_factorizations(7).unwrap(), vec![]);
        assert_eq!(t.good_factorizations(9).unwrap(), vec![(3, 3)]);
        assert!(t.is_solid(1).unwrap());
        assert!(!t.is_solid(2).unwrap());
        assert!(t.is_solid(6).unwrap());
        assert!(t.is_m_irreducible(7).unwrap());
        assert!(!t.is_m_irreducible(6).unwrap());
        assert!(t.is_m_irreducible(1).unwrap());
        assert!(t.good_addition_splits(101).is_err());
    }

    #[test]
    fn sandwich_bound() {
        let t = ComplexityTable::build(50_000).unwrap();
        for n in 2..=50_000u64 {
            let c = t.get(n) as f64;
            let ln = libm::log(n as f64);
            assert!(c + 1e-9 >= 3.0 * ln / libm::log(3.0), "{n}");
            assert!(c <= 3.0 * ln / libm::log(2.0) + 1e-9, "{n}");
        }
    }
}
