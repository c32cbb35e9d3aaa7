//! The verification suite behind `selftest` and the acceptance tests.
//!
//! Every check reads a shared table and clips its ranges to the table
//! limit; the detail line says what was actually covered.

use std::cmp::Ordering;
use std::time::Instant;

use defect_forge_core::complexity::{oracle_complexity, selfridge_e_saturating, ORACLE_MAX};
use defect_forge_core::cover::order_type_bound;
use defect_forge_core::defect::{stability, stable_complexity, stable_defect_key};
use defect_forge_core::ldp::chain_polynomial;
use defect_forge_core::{
    build_s_r, compare_defects, defect_key, verify_cover, ComplexityTable, CoverSet, DefectKey,
    DefectThreshold, LdpExpr, LowDefectPair, OrdinalCnf, Verdict,
};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::gen::random_pair;
use crate::json::cover_to_json;

pub const DEFAULT_SEED: u64 = 20_240_601;

pub const CHECKS: [(u32, &str); 9] = [
    (1, "oracle-equivalence"),
    (2, "known-values"),
    (3, "selfridge"),
    (4, "integer-defects"),
    (5, "cover-sets"),
    (6, "pair-properties"),
    (7, "stable-defects"),
    (8, "ordinal-algebra"),
    (9, "determinism"),
];

/// Thresholds and verification bounds for the cover check.
pub const COVER_CASES: [(u64, u64, u64); 3] = [(1, 2, 100_000), (1, 1, 100_000), (3, 2, 10_000)];

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub checks_run: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckOutcome>,
}

type CheckResult = Result<String, String>;

pub fn run_check(id: u32, table: &ComplexityTable, seed: u64) -> CheckOutcome {
    let (_, name) = CHECKS
        .iter()
        .copied()
        .find(|&(i, _)| i == id)
        .expect("known check id");
    let start = Instant::now();
    let result = match id {
        1 => oracle_equivalence(table),
        2 => known_values(table),
        3 => selfridge(table),
        4 => integer_defects(table),
        5 => cover_sets(table).map(|(d, _)| d),
        6 => pair_properties(table, seed, 1000),
        7 => stable_defects(table),
        8 => ordinal_algebra(seed, 1000),
        _ => determinism(table),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        id,
        name,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every check; results come back in id order whatever the thread
/// count.
pub fn run_all(table: &ComplexityTable, seed: u64) -> Summary {
    let checks: Vec<CheckOutcome> = CHECKS
        .par_iter()
        .map(|&(id, _)| run_check(id, table, seed))
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    Summary {
        checks_run: checks.len(),
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

fn oracle_equivalence(table: &ComplexityTable) -> CheckResult {
    let bound = table.limit().min(5000).min(ORACLE_MAX);
    let oracle = oracle_complexity(bound).map_err(|e| e.to_string())?;
    let fresh = ComplexityTable::build(bound).map_err(|e| e.to_string())?;
    let bad: Vec<u64> = (1..=bound)
        .filter(|&n| table.get(n) != oracle[n as usize] as u32 || fresh.get(n) != oracle[n as usize] as u32)
        .collect();
    if bad.is_empty() {
        Ok(format!("table agrees with the oracle for n <= {bound}"))
    } else {
        Err(format!("{} mismatches, first at n = {}", bad.len(), bad[0]))
    }
}

fn known_values(table: &ComplexityTable) -> CheckResult {
    let mut errors = Vec::new();
    let mut expect = |n: u64, want: u32, label: String| {
        if table.contains(n) && table.get(n) != want {
            errors.push(format!("||{label}|| = {}, expected {want}", table.get(n)));
        }
    };
    expect(11, 8, "11".into());
    expect(15_625, 29, "5^6".into());
    let mut top2 = 0;
    for k in 1..=20u32 {
        let n = 1u64 << k;
        if table.contains(n) {
            top2 = k;
        }
        expect(n, 2 * k, format!("2^{k}"));
    }
    let mut top3 = 0;
    let mut n = 3u64;
    for k in 1.. {
        if !table.contains(n) {
            break;
        }
        top3 = k;
        expect(n, 3 * k, format!("3^{k}"));
        n *= 3;
    }
    if errors.is_empty() {
        Ok(format!("11, 5^6, 2^k for k <= {top2}, 3^k for k <= {top3}"))
    } else {
        Err(errors.join("; "))
    }
}

fn selfridge(table: &ComplexityTable) -> CheckResult {
    let mut top = 1;
    for k in 2..=37u32 {
        let want = selfridge_e_saturating(k);
        if want > table.limit() {
            break;
        }
        let got = table.e_from_table(k).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("E({k}) from table is {got}, formula gives {want}"));
        }
        top = k;
    }
    Ok(format!("E(k) matches for 2 <= k <= {top}"))
}

fn integer_defects(table: &ComplexityTable) -> CheckResult {
    let bound = table.limit().min(1_000_000);
    let mut near = 0;
    for n in 1..=bound {
        let key = DefectKey::new(table.get(n) as u64, n);
        let power = is_power_of_three(n);
        let want = match (n, power) {
            (1, _) => Some(1),
            (_, true) => Some(0),
            _ => None,
        };
        if key.integer_value() != want {
            return Err(format!("n = {n}: integer value {:?}, expected {want:?}", key.integer_value()));
        }
        let d = key.to_f64();
        if (d - d.round()).abs() < 1e-9 {
            near += 1;
            if want.is_none() {
                return Err(format!("n = {n} has defect {d} within 1e-9 of an integer"));
            }
        }
    }
    Ok(format!(
        "n <= {bound}: integer defects only at 1 and powers of 3 ({near} points)"
    ))
}

fn is_power_of_three(mut n: u64) -> bool {
    if n < 3 {
        return false;
    }
    while n.is_multiple_of(3) {
        n /= 3;
    }
    n == 1
}

/// The covers for the standard thresholds, in [`COVER_CASES`] order.
pub fn standard_covers(table: &ComplexityTable) -> Result<Vec<CoverSet>, String> {
    COVER_CASES
        .iter()
        .map(|&(p, q, _)| {
            let r = DefectThreshold::new(p, q).map_err(|e| e.to_string())?;
            build_s_r(table, r).map_err(|e| format!("S_{r}: {e}"))
        })
        .collect()
}

fn cover_sets(table: &ComplexityTable) -> Result<(String, Vec<CoverSet>), String> {
    let covers = standard_covers(table)?;
    let mut parts = Vec::new();
    for (cover, &(_, _, bound)) in covers.iter().zip(COVER_CASES.iter()) {
        let bound = bound.min(table.limit());
        let report = verify_cover(table, cover, bound).map_err(|e| e.to_string())?;
        if !report.passed() {
            let first = report.failures[0];
            return Err(format!(
                "S_{}: {} failures up to {bound}, first n = {} ({:?})",
                cover.r,
                report.failures.len(),
                first.n,
                first.form
            ));
        }
        if cover.max_degree() as u64 > cover.r.floor() {
            return Err(format!("S_{} has a pair of degree {}", cover.r, cover.max_degree()));
        }
        parts.push(format!(
            "S_{}: {} pairs, {} covered to {bound}",
            cover.r,
            cover.entries.len(),
            report.covered
        ));
    }
    let s1 = &covers[1];
    let f16 = LdpExpr::extend(LdpExpr::constant(16u32), 1u32);
    for (expr, c, label) in [
        (f16, 9, "(16x1+1, 9)"),
        (LdpExpr::constant(9u32), 6, "(9, 6)"),
        (LdpExpr::constant(27u32), 9, "(27, 9)"),
    ] {
        if !s1.contains(&expr, c) {
            return Err(format!("S_1 lacks {label}"));
        }
    }
    Ok((parts.join("; "), covers))
}

fn grid(r: usize, top: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=top).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

fn pair_violations(table: &ComplexityTable, pair: &LowDefectPair) -> Vec<String> {
    const TOP: u32 = 6;
    const FAR: u32 = 30;
    let mut bad = Vec::new();
    let r = pair.degree();
    let c0 = pair.base_complexity;
    let whole = pair.delta();
    for e in grid(r, TOP) {
        let at = pair.delta_at(&e).expect("arity");
        let sum: u64 = e.iter().map(|&x| x as u64).sum();
        if let Some(v) = at.n_u64() {
            let mut m = v;
            let mut extra = 0u64;
            while table.contains(m) {
                let budget = c0 + 3 * (sum + extra);
                let actual = table.get(m) as u64;
                let key = DefectKey::new(actual, m);
                let bound = DefectKey::new(budget, m);
                if actual > budget || compare_defects(&key, &bound) == Ordering::Greater {
                    bad.push(format!("{pair} at {e:?}*3^{extra}: ||{m}|| = {actual} > {budget}"));
                }
                m *= 3;
                extra += 1;
            }
        }
        if r > 0 && compare_defects(&at, &whole) != Ordering::Less {
            bad.push(format!("{pair}: defect at {e:?} not below the pair defect"));
        }
        for i in 0..r {
            if e[i] == TOP {
                continue;
            }
            let mut up = e.clone();
            up[i] += 1;
            let next = pair.delta_at(&up).expect("arity");
            if compare_defects(&next, &at) != Ordering::Greater {
                bad.push(format!("{pair}: not increasing in x{} at {e:?}", i + 1));
            }
        }
    }
    for i in 0..r {
        let dropped = pair.expr.drop_variable(i + 1).expect("variable in range");
        for rest in grid(r - 1, TOP) {
            let mut full = rest.clone();
            full.insert(i, FAR);
            let far = pair.delta_at(&full).expect("arity").to_f64();
            let limit = dropped.defect_at(c0, &rest).expect("arity").to_f64();
            if (far - limit).abs() >= 1e-6 {
                bad.push(format!("{pair}: x{} = {FAR} at {rest:?} gives {far}, limit {limit}", i + 1));
            }
        }
    }
    bad
}

fn pair_properties(table: &ComplexityTable, seed: u64, count: usize) -> CheckResult {
    let mut rng = StdRng::seed_from_u64(seed);
    let pairs: Vec<LowDefectPair> = (0..count)
        .map(|_| {
            let d = rng.gen_range(0..=3);
            random_pair(&mut rng, table, d)
        })
        .collect();
    let bad: Vec<String> = pairs.par_iter().flat_map(|p| pair_violations(table, p)).collect();
    if bad.is_empty() {
        Ok(format!("{count} random pairs, grid [0,6], no violations"))
    } else {
        Err(format!("{} violations, first: {}", bad.len(), bad[0]))
    }
}

const STABLE_LIMIT: u64 = 1_000_000;

fn stable_defects(table: &ComplexityTable) -> CheckResult {
    let owned;
    let t = if table.limit() > STABLE_LIMIT {
        owned = ComplexityTable::from_entries(&table.as_bytes()[..STABLE_LIMIT as usize])
            .map_err(|e| e.to_string())?;
        &owned
    } else {
        table
    };
    let bound = (t.limit() / 3).min(10_000);
    let mut stable = 0;
    for n in 1..=bound {
        let d = defect_key(t, n).map_err(|e| e.to_string())?;
        let st = stable_defect_key(t, n).map_err(|e| e.to_string())?;
        let status = stability(t, n).map_err(|e| e.to_string())?;
        let order = compare_defects(&st, &d);
        if order == Ordering::Greater {
            return Err(format!("n = {n}: stable defect exceeds defect"));
        }
        let verified = status.verdict == Verdict::StableWithinHorizon && status.witness.is_none();
        if (order == Ordering::Equal) != verified {
            return Err(format!("n = {n}: equality {:?} but status {}", order, status.verdict));
        }
        stable += verified as u64;
        let mut best = d.clone();
        let mut m = n;
        while let Some(next) = m.checked_mul(3).filter(|&x| x <= t.limit()) {
            m = next;
            let k = defect_key(t, m).map_err(|e| e.to_string())?;
            if compare_defects(&k, &best) == Ordering::Less {
                best = k;
            }
        }
        if compare_defects(&best, &st) != Ordering::Equal {
            return Err(format!("n = {n}: stable defect is not the chain minimum"));
        }
        let sc = stable_complexity(t, n).map_err(|e| e.to_string())?;
        if st.complexity - 3 * sc.argmin_k as u64 != sc.value as u64 {
            return Err(format!("n = {n}: stable complexity disagrees with its key"));
        }
    }
    Ok(format!(
        "n <= {bound} at limit {}: {stable} stable within horizon",
        t.limit()
    ))
}

fn random_ordinal(rng: &mut StdRng) -> OrdinalCnf {
    let len = rng.gen_range(0..=4);
    OrdinalCnf::from_coeffs((0..len).map(|_| BigUint::from(rng.gen_range(0u32..=20))).collect())
}

fn ordinal_algebra(seed: u64, count: usize) -> CheckResult {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    for i in 0..count {
        let (a, b, c) = (random_ordinal(&mut rng), random_ordinal(&mut rng), random_ordinal(&mut rng));
        let fail = |law: &str| Err(format!("triple {i} ({a}; {b}; {c}) breaks {law}"));
        if a.nat_sum(&b) != b.nat_sum(&a) {
            return fail("sum commutativity");
        }
        if a.nat_prod(&b) != b.nat_prod(&a) {
            return fail("product commutativity");
        }
        if a.nat_sum(&b).nat_sum(&c) != a.nat_sum(&b.nat_sum(&c)) {
            return fail("sum associativity");
        }
        if a.nat_prod(&b).nat_prod(&c) != a.nat_prod(&b.nat_prod(&c)) {
            return fail("product associativity");
        }
        if a.nat_prod(&b.nat_sum(&c)) != a.nat_prod(&b).nat_sum(&a.nat_prod(&c)) {
            return fail("distributivity");
        }
        if a < b {
            if a.nat_sum(&c) >= b.nat_sum(&c) {
                return fail("sum monotonicity");
            }
            if !c.is_zero() && a.nat_prod(&c) >= b.nat_prod(&c) {
                return fail("product monotonicity");
            }
        }
    }
    for k in 0..=5usize {
        let pair = LowDefectPair {
            expr: chain_polynomial(3, k),
            base_complexity: 3 + k as u64,
        };
        let want = OrdinalCnf::omega_power(k).scale(&BigUint::from(k as u64 + 1));
        let got = order_type_bound(&pair);
        if got != want {
            return Err(format!("order type bound for k = {k} is {got}, expected {want}"));
        }
    }
    Ok(format!("{count} random triples; order type bounds for k <= 5"))
}

fn determinism(table: &ComplexityTable) -> CheckResult {
    let rebuilt = ComplexityTable::build(table.limit()).map_err(|e| e.to_string())?;
    if let Some(i) = rebuilt
        .as_bytes()
        .iter()
        .zip(table.as_bytes())
        .position(|(a, b)| a != b)
    {
        return Err(format!("rebuilt table differs at n = {}", i + 1));
    }
    let first = standard_covers(table)?;
    let second = standard_covers(&rebuilt)?;
    for (a, b) in first.iter().zip(&second) {
        if cover_to_json(a) != cover_to_json(b) {
            return Err(format!("S_{} serializes differently on rebuild", a.r));
        }
    }
    Ok(format!(
        "rebuild to {} is byte-identical; {} cover files identical",
        table.limit(),
        first.len()
    ))
}
