//! Finite covering sets of low-defect pairs.
//!
//! `S_{1,α}` holds the constants `(N, ||N||)` for the leaders `N` with
//! `δ(N) < α`. Level `i + 1` is built from levels `1..=i` by five rules:
//! products of earlier pairs, `f ⊗ x + b` for solid `b` with small
//! complexity, those extensions scaled by a base leader `v`, the small
//! exceptional numbers `T_α`, and `T_α` scaled by base leaders. `S_r` is
//! `S_{k,α}` with `k = ⌊r⌋ + 1` and `α = r / k`.
//!
//! Nothing here certifies that `B_α` is finite at a known bound; the base
//! enumeration runs to the table limit and is rejected when it lands
//! within [`BASE_HORIZON_FACTOR`] of that limit.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::complexity::{selfridge_e_saturating, ComplexityTable};
use crate::defect::{defect_less_than, enumerate_b_r, stable_complexity, DefectKey, DefectThreshold};
use crate::error::{Error, Result};
use crate::exact::cmp_scaled;
use crate::ldp::{LdpExpr, LowDefectPair};
use crate::ordinal::OrdinalCnf;

/// The largest base leader times this factor must fit in the table.
pub const BASE_HORIZON_FACTOR: u64 = 27;

/// Which construction rule produced a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    BaseBAlpha,
    Case1Product,
    Case2Extend,
    Case3TimesV,
    Case4TAlpha,
    Case5TAlphaTimesV,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::BaseBAlpha => "Base-BAlpha",
            Provenance::Case1Product => "Case1-Product",
            Provenance::Case2Extend => "Case2-Extend",
            Provenance::Case3TimesV => "Case3-TimesV",
            Provenance::Case4TAlpha => "Case4-TAlpha",
            Provenance::Case5TAlphaTimesV => "Case5-TAlphaTimesV",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [
            Provenance::BaseBAlpha,
            Provenance::Case1Product,
            Provenance::Case2Extend,
            Provenance::Case3TimesV,
            Provenance::Case4TAlpha,
            Provenance::Case5TAlphaTimesV,
        ]
        .into_iter()
        .find(|p| p.tag() == tag)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEntry {
    pub pair: LowDefectPair,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSet {
    pub r: DefectThreshold,
    pub k: u32,
    pub alpha: DefectThreshold,
    /// Table limit the base leaders were enumerated to.
    pub base_bound: u64,
    pub entries: Vec<CoverEntry>,
}

impl CoverSet {
    pub fn max_degree(&self) -> usize {
        self.entries.iter().map(|e| e.pair.degree()).max().unwrap_or(0)
    }

    pub fn contains(&self, expr: &LdpExpr, base_complexity: u64) -> bool {
        let Ok(want) = expr.coefficients() else {
            return false;
        };
        self.entries.iter().any(|e| {
            e.pair.base_complexity == base_complexity
                && e.pair.expr.coefficients().map(|c| c == want).unwrap_or(false)
        })
    }
}

pub fn is_solid(table: &ComplexityTable, n: u64) -> Result<bool> {
    table.is_solid(n)
}

pub fn is_m_irreducible(table: &ComplexityTable, n: u64) -> Result<bool> {
    table.is_m_irreducible(n)
}

fn check_alpha(alpha: DefectThreshold) -> Result<()> {
    if alpha.is_zero() || alpha.numer() >= alpha.denom() {
        Err(Error::Alpha)
    } else {
        Ok(())
    }
}

/// `1/(n-1) > 3^((1-α)/3) - 1`, decided exactly as
/// `n^(3q) > 3^(q-p) (n-1)^(3q)` for `α = p/q`.
fn below_size_bound(n: u64, alpha: DefectThreshold) -> bool {
    if n <= 1 {
        return true;
    }
    let (p, q) = (alpha.numer(), alpha.denom());
    let pw = (3 * q) as u32;
    cmp_scaled(0, &BigUint::from(n), pw, q - p, &BigUint::from(n - 1), pw) == Ordering::Greater
}

/// `T_α`: 1 together with the m-irreducible `n` below the size bound that
/// are not `(n - b) + b` most-efficiently for any solid `1 < b <= n/2`.
pub fn compute_t_alpha(table: &ComplexityTable, alpha: DefectThreshold) -> Result<Vec<u64>> {
    check_alpha(alpha)?;
    let mut out = vec![1];
    let mut n = 2u64;
    while below_size_bound(n, alpha) {
        table.check(n)?;
        let c = table.get(n);
        let solid_split = (2..=n / 2)
            .any(|b| table.get(n - b) + table.get(b) == c && table.is_solid(b).unwrap_or(false));
        if table.is_m_irreducible(n)? && !solid_split {
            out.push(n);
        }
        n += 1;
    }
    Ok(out)
}

/// Largest complexity `c` with `c < kα + 3 log_3 2`, i.e.
/// `3^(qc) < 3^(kp) 2^(3q)`.
fn max_addend_complexity(k: u32, alpha: DefectThreshold) -> u32 {
    let (p, q) = (alpha.numer(), alpha.denom());
    let two = BigUint::from(2u32);
    let one = BigUint::from(1u32);
    let mut c = 0u32;
    while cmp_scaled(q * (c as u64 + 1), &one, 1, k as u64 * p, &two, (3 * q) as u32)
        == Ordering::Less
    {
        c += 1;
    }
    c
}

/// Solid numbers `b` with `||b|| < kα + 3 log_3 2`.
fn solid_addends(table: &ComplexityTable, k: u32, alpha: DefectThreshold) -> Result<Vec<u64>> {
    let max_c = max_addend_complexity(k, alpha);
    let top = selfridge_e_saturating(max_c);
    table.check(top.max(1))?;
    let mut out = Vec::new();
    for b in 1..=top {
        if table.get(b) <= max_c && table.is_solid(b)? {
            out.push(b);
        }
    }
    Ok(out)
}

fn const_pair(table: &ComplexityTable, n: u64) -> Result<LowDefectPair> {
    LowDefectPair::make_const(n, table.complexity(n)? as u64, Some(table))
}

// Dedup by coefficient map; keep the smaller C, then the smaller rendering.
#[derive(Default)]
struct Level {
    by_poly: BTreeMap<crate::ldp::MultilinearPoly, (CoverEntry, String)>,
}

impl Level {
    fn insert(&mut self, pair: LowDefectPair, provenance: Provenance) {
        let key = pair.expr.coefficients().expect("grammar-built pair is valid");
        let text = pair.to_string();
        let entry = CoverEntry { pair, provenance };
        match self.by_poly.get(&key) {
            Some((old, old_text))
                if (old.pair.base_complexity, old_text) <= (entry.pair.base_complexity, &text) => {}
            _ => {
                self.by_poly.insert(key, (entry, text));
            }
        }
    }

    fn into_entries(self) -> Vec<CoverEntry> {
        let mut v: Vec<(CoverEntry, String)> = self.by_poly.into_values().collect();
        v.sort_by(|a, b| {
            a.0.pair
                .degree()
                .cmp(&b.0.pair.degree())
                .then(a.0.pair.base_complexity.cmp(&b.0.pair.base_complexity))
                .then(a.1.cmp(&b.1))
        });
        v.into_iter().map(|(e, _)| e).collect()
    }
}

/// `S_{k,α}`.
pub fn build_s_k_alpha(table: &ComplexityTable, k: u32, alpha: DefectThreshold) -> Result<CoverSet> {
    check_alpha(alpha)?;
    if k == 0 {
        return Err(Error::Threshold("k must be at least 1".to_string()));
    }
    let limit = table.limit();
    let base = enumerate_b_r(table, alpha, limit)?;
    let largest = base.last().copied().unwrap_or(1);
    if largest.saturating_mul(BASE_HORIZON_FACTOR) > limit {
        return Err(Error::BaseHorizon { largest, limit });
    }
    let base_pairs: Vec<LowDefectPair> = base
        .iter()
        .map(|&n| const_pair(table, n))
        .collect::<Result<_>>()?;
    let t_alpha = compute_t_alpha(table, alpha)?;

    let mut levels: Vec<Vec<LowDefectPair>> = Vec::new();
    let mut first = Level::default();
    for p in &base_pairs {
        first.insert(p.clone(), Provenance::BaseBAlpha);
    }
    let mut current = first.into_entries();
    levels.push(current.iter().map(|e| e.pair.clone()).collect());

    for i in 1..k {
        // Building level i + 1 from levels 1..=i.
        let mut next = Level::default();
        if i + 1 == 2 {
            let s1 = &levels[0];
            for a in 0..s1.len() {
                for b in a..s1.len() {
                    let ab = LowDefectPair::tensor(&s1[a], &s1[b]);
                    for c in b..s1.len() {
                        next.insert(LowDefectPair::tensor(&ab, &s1[c]), Provenance::Case1Product);
                    }
                    next.insert(ab, Provenance::Case1Product);
                }
            }
        } else {
            // i_ + j_ = i + 2 with 2 <= i_ <= j_ <= i.
            for li in 2..=i {
                let lj = i + 2 - li;
                if lj < li || lj > i {
                    continue;
                }
                let (fs, gs) = (&levels[li as usize - 1], &levels[lj as usize - 1]);
                for (x, f) in fs.iter().enumerate() {
                    let start = if li == lj { x } else { 0 };
                    for g in &gs[start..] {
                        next.insert(LowDefectPair::tensor(f, g), Provenance::Case1Product);
                    }
                }
            }
        }
        let addends = solid_addends(table, i + 1, alpha)?;
        for f in &levels[i as usize - 1] {
            for &b in &addends {
                let ext = f.extend(b, table.get(b) as u64, Some(table))?;
                for v in &base_pairs {
                    next.insert(LowDefectPair::tensor(v, &ext), Provenance::Case3TimesV);
                }
                next.insert(ext, Provenance::Case2Extend);
            }
        }
        for &n in &t_alpha {
            next.insert(const_pair(table, n)?, Provenance::Case4TAlpha);
            for &v in &base {
                next.insert(const_pair(table, v * n)?, Provenance::Case5TAlphaTimesV);
            }
        }
        current = next.into_entries();
        levels.push(current.iter().map(|e| e.pair.clone()).collect());
    }

    Ok(CoverSet {
        r: DefectThreshold::new(alpha.numer() * k as u64, alpha.denom())?,
        k,
        alpha,
        base_bound: limit,
        entries: current,
    })
}

/// `S_r = S_{⌊r⌋+1, r/(⌊r⌋+1)}`.
pub fn build_s_r(table: &ComplexityTable, r: DefectThreshold) -> Result<CoverSet> {
    if r.is_zero() {
        return Err(Error::Threshold("r must be positive".to_string()));
    }
    let k = r.floor() + 1;
    let alpha = DefectThreshold::new(r.numer(), r.denom() * k)?;
    let mut cover = build_s_k_alpha(table, k as u32, alpha)?;
    cover.r = r;
    Ok(cover)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureForm {
    /// A leader not efficiently 3-represented by any pair.
    Leader,
    /// A number not efficiently 3-represented by any augmented pair.
    Augmented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverFailure {
    pub n: u64,
    pub form: FailureForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub bound: u64,
    /// Numbers `n <= bound` with `δ(n) < r`.
    pub checked: u64,
    /// Those with every required representation found.
    pub covered: u64,
    pub failures: Vec<CoverFailure>,
    /// Numbers efficiently 3-represented by some pair but outside `B_r`.
    pub extraneous_hits: u64,
    /// Per pair, how many numbers `<= bound` it efficiently 3-represents.
    pub pair_hits: Vec<u64>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every leader `N <= bound` with `δ(N) < r` is efficiently
/// 3-represented by a pair, and every such `N` (leader or not) by an
/// augmented pair.
pub fn verify_cover(table: &ComplexityTable, cover: &CoverSet, bound: u64) -> Result<CoverReport> {
    table.check(bound)?;
    let b = bound as usize;
    let mut plain = vec![false; b + 1];
    let mut augmented = vec![false; b + 1];
    let mut pair_hits = Vec::with_capacity(cover.entries.len());
    let big_bound = BigUint::from(bound);
    let cap = crate::exact::ceil_log3(&big_bound);
    for entry in &cover.entries {
        let c0 = entry.pair.base_complexity;
        let mut hits = 0u64;
        for (value, tuple) in entry.pair.expr.values_up_to(&big_bound, cap) {
            let v = value.to_u64().expect("value <= bound");
            let sum: u64 = tuple.iter().map(|&e| e as u64).sum();
            if table.get(v) as u64 == c0 + 3 * sum {
                if !plain[v as usize] {
                    plain[v as usize] = true;
                }
                hits += 1;
            }
            let mut m = v;
            let mut extra = 0u64;
            while m <= bound {
                if table.get(m) as u64 == c0 + 3 * (sum + extra) {
                    augmented[m as usize] = true;
                }
                m *= 3;
                extra += 1;
            }
        }
        pair_hits.push(hits);
    }

    let r = cover.r;
    let mut checked = 0;
    let mut covered = 0;
    let mut failures = Vec::new();
    let mut extraneous = 0;
    for n in 1..=bound {
        let c = table.get(n);
        let leader = n % 3 != 0 || c < 3 + table.get(n / 3);
        let small = defect_less_than(&DefectKey::new(c as u64, n), r);
        if plain[n as usize] && !(small && leader) {
            extraneous += 1;
        }
        if !small {
            continue;
        }
        checked += 1;
        let mut ok = true;
        if leader && !plain[n as usize] {
            failures.push(CoverFailure {
                n,
                form: FailureForm::Leader,
            });
            ok = false;
        }
        if !augmented[n as usize] {
            failures.push(CoverFailure {
                n,
                form: FailureForm::Augmented,
            });
            ok = false;
        }
        if ok {
            covered += 1;
        }
    }
    Ok(CoverReport {
        bound,
        checked,
        covered,
        failures,
        extraneous_hits: extraneous,
        pair_hits,
    })
}

/// `ω^r (⌊δ(f, C)⌋ + 1)` for a pair of degree `r`.
pub fn order_type_bound(pair: &LowDefectPair) -> OrdinalCnf {
    let coefficient = pair.delta().floor().map(|f| f + 1).unwrap_or(0);
    OrdinalCnf::omega_power(pair.degree()).scale(&BigUint::from(coefficient))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalPoint {
    pub tuple: Vec<u32>,
    pub value: u64,
    /// `||value||_st < C + 3 Σe` was witnessed inside the table.
    pub flagged: bool,
}

/// Grid points of a pair with value at most `bound`, flagging those whose
/// stable complexity falls below `C + 3 Σe`.
///
/// Only meaningful for `δ(f, C) < degree + 1`; other pairs are rejected.
pub fn exceptional_points(
    table: &ComplexityTable,
    pair: &LowDefectPair,
    bound: u64,
) -> Result<Vec<ExceptionalPoint>> {
    table.check(bound)?;
    let r = pair.degree() as u64;
    if !defect_less_than(&pair.delta(), DefectThreshold::integer(r + 1)) {
        return Err(Error::Threshold("pair defect must be below degree + 1".to_string()));
    }
    let big_bound = BigUint::from(bound);
    let cap = crate::exact::ceil_log3(&big_bound);
    let mut out = Vec::new();
    for (value, tuple) in pair.expr.values_up_to(&big_bound, cap) {
        let v = value.to_u64().expect("value <= bound");
        let sum: u64 = tuple.iter().map(|&e| e as u64).sum();
        let st = stable_complexity(table, v)?;
        out.push(ExceptionalPoint {
            flagged: (st.value as u64) < pair.base_complexity + 3 * sum,
            tuple,
            value: v,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::ldp::chain_polynomial;

    fn th(p: u64, q: u64) -> DefectThreshold {
        DefectThreshold::new(p, q).unwrap()
    }

    #[test]
    fn t_alpha_half() {
        let t = ComplexityTable::build(10_000).unwrap();
        assert_eq!(compute_t_alpha(&t, th(1, 2)).unwrap(), vec![1, 2, 3, 5]);
        for (p, q) in [(1, 64), (1, 3), (3, 4), (63, 64)] {
            let ta = compute_t_alpha(&t, th(p, q)).unwrap();
            assert_eq!(ta[0], 1);
        }
        assert_eq!(compute_t_alpha(&t, th(1, 1)), Err(Error::Alpha));
        assert_eq!(compute_t_alpha(&t, th(0, 1)), Err(Error::Alpha));
    }

    #[test]
    fn size_bound_is_exact() {
        // 3^(1/6) ≈ 1.2009: 1/(n-1) > 0.2009 for n <= 5 only.
        assert!(below_size_bound(5, th(1, 2)));
        assert!(!below_size_bound(6, th(1, 2)));
    }

    #[test]
    fn addend_bound() {
        // 2 * 1/2 + 3 log_3 2 ≈ 2.893
        assert_eq!(max_addend_complexity(2, th(1, 2)), 2);
        // 2 * 3/4 + 1.893 ≈ 3.393
        assert_eq!(max_addend_complexity(2, th(3, 4)), 3);
    }

    #[test]
    fn s1_half() {
        let t = ComplexityTable::build(10_000).unwrap();
        let s = build_s_k_alpha(&t, 1, th(1, 2)).unwrap();
        let consts: Vec<_> = s.entries.iter().map(|e| e.pair.to_string()).collect();
        for want in ["(2, 2)", "(3, 3)", "(4, 4)", "(8, 6)", "(16, 8)"] {
            assert!(consts.iter().any(|c| c == want), "{want} missing from {consts:?}");
        }
    }

    #[test]
    fn s2_half_known_members() {
        let t = ComplexityTable::build(10_000).unwrap();
        let s = build_s_k_alpha(&t, 2, th(1, 2)).unwrap();
        let f16 = LdpExpr::extend(LdpExpr::constant(16u32), 1u32);
        assert!(s.contains(&f16, 9));
        assert!(s.contains(&LdpExpr::constant(9u32), 6));
        assert!(s.contains(&LdpExpr::constant(27u32), 9));
        assert!(s.max_degree() <= 1);
        let s_r = build_s_r(&t, th(1, 1)).unwrap();
        assert_eq!(s_r.entries, s.entries);
        assert_eq!(s_r.k, 2);
        assert_eq!(s_r.alpha, th(1, 2));
    }

    #[test]
    fn s_half_is_constants() {
        let t = ComplexityTable::build(10_000).unwrap();
        let s = build_s_r(&t, th(1, 2)).unwrap();
        assert_eq!(s.k, 1);
        assert_eq!(s.max_degree(), 0);
    }

    #[test]
    fn horizon_guard() {
        let t = ComplexityTable::build(200).unwrap();
        assert!(matches!(
            build_s_k_alpha(&t, 1, th(1, 2)),
            Err(Error::BaseHorizon { .. })
        ));
    }

    #[test]
    fn coverage_small() {
        let t = ComplexityTable::build(20_000).unwrap();
        for r in [th(1, 2), th(1, 1)] {
            let s = build_s_r(&t, r).unwrap();
            let report = verify_cover(&t, &s, 20_000).unwrap();
            assert!(report.passed(), "r={r}: {:?}", &report.failures[..report.failures.len().min(10)]);
            assert_eq!(report.checked, report.covered);
        }
    }

    #[test]
    fn removing_pairs_breaks_coverage() {
        let t = ComplexityTable::build(10_000).unwrap();
        let mut s = build_s_r(&t, th(1, 1)).unwrap();
        let before = verify_cover(&t, &s, 10_000).unwrap();
        assert!(before.passed());
        // The constant 2 is the only way to reach leader 2.
        s.entries.retain(|e| e.pair.to_string() != "(2, 2)");
        let after = verify_cover(&t, &s, 10_000).unwrap();
        assert!(after.failures.contains(&CoverFailure { n: 2, form: FailureForm::Leader }));
    }

    #[test]
    fn extraneous_17() {
        let t = ComplexityTable::build(10_000).unwrap();
        let s = build_s_r(&t, th(1, 1)).unwrap();
        let report = verify_cover(&t, &s, 10_000).unwrap();
        assert!(report.extraneous_hits > 0);
    }

    #[test]
    fn order_type_bounds() {
        let three = LowDefectPair::make_const(3u32, 3, None).unwrap();
        assert_eq!(order_type_bound(&three).to_string(), "1");
        let f16 = LowDefectPair {
            expr: LdpExpr::extend(LdpExpr::constant(16u32), 1u32),
            base_complexity: 9,
        };
        assert_eq!(order_type_bound(&f16).to_string(), "ω·2");
        for k in 0..=5usize {
            let p = LowDefectPair {
                expr: chain_polynomial(3, k),
                base_complexity: 3 + k as u64,
            };
            let want = OrdinalCnf::omega_power(k).scale(&BigUint::from(k as u64 + 1));
            assert_eq!(order_type_bound(&p), want);
        }
    }

    #[test]
    fn exceptional_minority() {
        let t = ComplexityTable::build(10_000).unwrap();
        let p = LowDefectPair {
            expr: chain_polynomial(3, 1),
            base_complexity: 4,
        };
        let pts = exceptional_points(&t, &p, 10_000).unwrap();
        let flagged = pts.iter().filter(|p| p.flagged).count();
        assert!(!pts.is_empty());
        assert!(2 * flagged < pts.len(), "{flagged} of {}", pts.len());
    }
}
