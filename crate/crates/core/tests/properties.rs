use defect_forge_core::complexity::ComplexityTable;
use defect_forge_core::defect::{compare_defects, defect_key, stability, DefectKey, Verdict};
use defect_forge_core::{Form, LdpExpr};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use std::cmp::Ordering;
use std::sync::OnceLock;

fn table() -> &'static ComplexityTable {
    static T: OnceLock<ComplexityTable> = OnceLock::new();
    T.get_or_init(|| ComplexityTable::build(100_000).unwrap())
}

fn expr(max_degree: u32) -> impl Strategy<Value = LdpExpr> {
    let leaf = (1u32..20).prop_map(LdpExpr::constant);
    leaf.prop_recursive(4, 12, 2, move |inner| {
        prop_oneof![
            (inner.clone(), 1u32..10).prop_map(|(b, c)| LdpExpr::extend(b, c)),
            (inner.clone(), inner).prop_map(|(a, b)| LdpExpr::tensor(a, b)),
        ]
    })
    .prop_filter("degree", move |e| e.degree() as u32 <= max_degree)
}

fn grid(r: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=cap).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn structure(e in expr(4)) {
        let poly = e.coefficients().unwrap();
        let r = e.degree();
        prop_assert!(!poly.constant_term().is_zero());
        prop_assert!(!poly.leading_coefficient().is_zero());
        prop_assert_eq!(poly.leading_coefficient(), e.leading_coefficient());
        let point: Vec<u32> = (0..r as u32).map(|i| i % 3).collect();
        prop_assert_eq!(poly.evaluate(&point).unwrap(), e.evaluate(&point).unwrap());
    }

    #[test]
    fn decompose_round_trip(e in expr(4).prop_filter("nonconstant", |e| e.degree() > 0)) {
        let (h, g, c) = e.decompose_maxvar().unwrap();
        let back = LdpExpr::recompose(h, g, c);
        prop_assert_eq!(back.coefficients().unwrap(), e.coefficients().unwrap());
    }

    #[test]
    fn representations_match_grid(e in expr(3), n in 1u64..100_000) {
        let target = BigUint::from(n);
        let found = e.find_3_representations(&target, None, Form::Plain);
        let cap = {
            let mut t = 0;
            let mut p = 1u64;
            while p < n { p *= 3; t += 1; }
            t
        };
        let brute: Vec<Vec<u32>> = grid(e.degree(), cap)
            .into_iter()
            .filter(|t| e.evaluate(t).unwrap() == target)
            .collect();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn represented_values_are_hit(e in expr(3), seed in 0u32..4) {
        let point: Vec<u32> = (0..e.degree() as u32).map(|i| (i + seed) % 4).collect();
        let v = e.evaluate(&point).unwrap();
        let found = e.find_3_representations(&v, None, Form::Plain);
        prop_assert!(found.contains(&point));
        let aug = e.augment_evaluate(&{ let mut p = point.clone(); p.push(1); p }).unwrap();
        let found = e.find_3_representations(&aug, None, Form::Augmented);
        prop_assert!(found.iter().any(|t| t[..point.len()] == point[..] && t[point.len()] == 1));
    }

    #[test]
    fn defect_order_agrees_with_floats(a in 1u64..100_000, b in 1u64..100_000) {
        let ka = defect_key(table(), a).unwrap();
        let kb = defect_key(table(), b).unwrap();
        let (fa, fb) = (ka.to_f64(), kb.to_f64());
        if (fa - fb).abs() > 1e-9 {
            prop_assert_eq!(compare_defects(&ka, &kb), fa.partial_cmp(&fb).unwrap());
        }
    }
}

#[test]
fn tripling_lowers_defect_by_an_integer() {
    let t = table();
    for n in 1..=t.limit() / 3 {
        let drop = 3 + t.get(n) as i64 - t.get(3 * n) as i64;
        assert!(drop >= 0, "{n}");
        let order = compare_defects(&defect_key(t, 3 * n).unwrap(), &defect_key(t, n).unwrap());
        assert_eq!(order == Ordering::Equal, drop == 0, "{n}");
    }
}

#[test]
fn equal_defects_differ_by_powers_of_three() {
    let t = table();
    let bound = 3000u64;
    let keys: Vec<DefectKey> = (1..=bound).map(|n| defect_key(t, n).unwrap()).collect();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if compare_defects(&keys[i], &keys[j]) != Ordering::Equal {
                continue;
            }
            let (a, b) = (i as u64 + 1, j as u64 + 1);
            assert_eq!(t.get(a) % 3, t.get(b) % 3);
            let mut q = b / a;
            assert_eq!(b % a, 0);
            while q % 3 == 0 {
                q /= 3;
            }
            assert_eq!(q, 1, "{a} {b}");
        }
    }
}

#[test]
fn defect_via_selfridge() {
    let t = table();
    let d2 = defect_key(t, 2).unwrap().to_f64();
    for n in 2..=t.limit() {
        let c = t.get(n);
        let e = defect_forge_core::selfridge_e(c).to_f64().unwrap();
        let extra = match c % 3 {
            0 => 0.0,
            1 => 2.0 * d2,
            _ => d2,
        };
        let via = 3.0 * (e / n as f64).ln() / 3f64.ln() + extra;
        assert!((via - defect_key(t, n).unwrap().to_f64()).abs() < 1e-9, "{n}");
    }
}

#[test]
fn stability_horizon_is_respected() {
    let t = table();
    assert_eq!(stability(t, t.limit()).unwrap().verdict, Verdict::HorizonExhausted);
    assert_eq!(stability(t, 1).unwrap().verdict, Verdict::UnstableProven);
    assert_eq!(stability(t, 2).unwrap().verdict, Verdict::StableWithinHorizon);
}
