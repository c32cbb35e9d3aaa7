//! Random low-defect pairs drawn from the construction grammar, with every
//! constant carrying its table complexity.

use defect_forge_core::{ComplexityTable, LowDefectPair};
use rand::Rng;

const MAX_CONSTANT: u64 = 12;
const MAX_ADDEND: u64 = 6;

/// A pair of exactly `degree` variables.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, table: &ComplexityTable, degree: usize) -> LowDefectPair {
    if degree == 0 {
        let k = rng.gen_range(1..=MAX_CONSTANT);
        return LowDefectPair::make_const(k, table.get(k) as u64, None).expect("positive constant");
    }
    match rng.gen_range(0..3) {
        0 => {
            let inner = random_pair(rng, table, degree - 1);
            let c = rng.gen_range(1..=MAX_ADDEND);
            inner
                .extend(c, table.get(c) as u64, None)
                .expect("positive addend")
        }
        1 => {
            let left = random_pair(rng, table, 0);
            let right = random_pair(rng, table, degree);
            if rng.gen_bool(0.5) {
                LowDefectPair::tensor(&left, &right)
            } else {
                LowDefectPair::tensor(&right, &left)
            }
        }
        _ => {
            let split = rng.gen_range(0..=degree);
            if split == 0 || split == degree {
                return random_pair(rng, table, degree);
            }
            let left = random_pair(rng, table, split);
            let right = random_pair(rng, table, degree - split);
            LowDefectPair::tensor(&left, &right)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn degrees_and_budgets() {
        let t = ComplexityTable::build(100).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for d in 0..=3 {
            for _ in 0..200 {
                let p = random_pair(&mut rng, &t, d);
                assert_eq!(p.degree(), d);
                p.expr.validate().unwrap();
                assert!(p.base_complexity >= 1);
            }
        }
    }
}
