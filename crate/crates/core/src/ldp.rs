//! Low-defect polynomials and pairs.
//!
//! A polynomial is kept as the expression tree it was built from:
//! constants, `⊗` products, and `f ⊗ x + c` extensions. Variables are
//! implicit and numbered `x1, x2, ...` in left-to-right tree order, so the
//! variable introduced by an [`LdpExpr::Extend`] node comes after every
//! variable of its base, and the right factor of a product follows the left.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::complexity::ComplexityTable;
use crate::defect::DefectKey;
use crate::error::{Error, Result};
use crate::exact::ceil_log3;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LdpExpr {
    Const(BigUint),
    Product(Box<LdpExpr>, Box<LdpExpr>),
    /// `base ⊗ x + addend`.
    Extend { base: Box<LdpExpr>, addend: BigUint },
}

/// Which numbers a polynomial is asked to 3-represent: `f(3^n1, ..)` or the
/// augmented `f(3^n1, ..) * 3^n_{r+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Plain,
    Augmented,
}

fn pow3(e: u32) -> BigUint {
    BigUint::from(3u32).pow(e)
}

impl LdpExpr {
    pub fn constant(k: impl Into<BigUint>) -> Self {
        LdpExpr::Const(k.into())
    }

    /// `a ⊗ b`, folding constant factors.
    pub fn tensor(a: LdpExpr, b: LdpExpr) -> LdpExpr {
        match (a, b) {
            (LdpExpr::Const(x), LdpExpr::Const(y)) => LdpExpr::Const(x * y),
            (LdpExpr::Const(x), other) | (other, LdpExpr::Const(x)) if x.is_one() => other,
            (a, b) => LdpExpr::Product(Box::new(a), Box::new(b)),
        }
    }

    /// `base ⊗ x + addend`.
    pub fn extend(base: LdpExpr, addend: impl Into<BigUint>) -> LdpExpr {
        LdpExpr::Extend {
            base: Box::new(base),
            addend: addend.into(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            LdpExpr::Const(_) => 0,
            LdpExpr::Product(l, r) => l.degree() + r.degree(),
            LdpExpr::Extend { base, .. } => base.degree() + 1,
        }
    }

    /// Rejects zero constants and zero addends, the only way a tree can
    /// escape the low-defect grammar.
    pub fn validate(&self) -> Result<()> {
        match self {
            LdpExpr::Const(k) if k.is_zero() => Err(Error::InvalidPolynomial("zero constant")),
            LdpExpr::Const(_) => Ok(()),
            LdpExpr::Product(l, r) => {
                l.validate()?;
                r.validate()
            }
            LdpExpr::Extend { addend, .. } if addend.is_zero() => {
                Err(Error::InvalidPolynomial("zero addend"))
            }
            LdpExpr::Extend { base, .. } => base.validate(),
        }
    }

    /// Coefficient of `x1 ... xr`.
    pub fn leading_coefficient(&self) -> BigUint {
        match self {
            LdpExpr::Const(k) => k.clone(),
            LdpExpr::Product(l, r) => l.leading_coefficient() * r.leading_coefficient(),
            LdpExpr::Extend { base, .. } => base.leading_coefficient(),
        }
    }

    /// Value at `x1 = ... = xr = 1`, the smallest value the polynomial takes
    /// at powers of 3.
    pub fn min_value(&self) -> BigUint {
        match self {
            LdpExpr::Const(k) => k.clone(),
            LdpExpr::Product(l, r) => l.min_value() * r.min_value(),
            LdpExpr::Extend { base, addend } => base.min_value() + addend,
        }
    }

    pub fn coefficients(&self) -> Result<MultilinearPoly> {
        self.validate()?;
        let mut terms = BTreeMap::new();
        for (set, c) in coeff_terms(self, 0) {
            terms.insert(set, c);
        }
        let poly = MultilinearPoly {
            vars: (1..=self.degree() as u32).collect(),
            terms,
        };
        let full: Vec<u32> = poly.vars.clone();
        if !poly.terms.contains_key(&Vec::new()) || !poly.terms.contains_key(&full) {
            return Err(Error::InvalidPolynomial("vanishing constant or leading term"));
        }
        Ok(poly)
    }

    /// `f(3^e1, ..., 3^er)`.
    pub fn evaluate(&self, exps: &[u32]) -> Result<BigUint> {
        if exps.len() != self.degree() {
            return Err(Error::Arity {
                expected: self.degree(),
                got: exps.len(),
            });
        }
        let mut at = 0;
        Ok(eval_node(self, exps, &mut at))
    }

    /// `f(3^e1, ..., 3^er) * 3^e_{r+1}`.
    pub fn augment_evaluate(&self, exps: &[u32]) -> Result<BigUint> {
        let r = self.degree();
        if exps.len() != r + 1 {
            return Err(Error::Arity {
                expected: r + 1,
                got: exps.len(),
            });
        }
        Ok(self.evaluate(&exps[..r])? * pow3(exps[r]))
    }

    /// Splits off the last variable: `f = h ⊗ (g ⊗ x + c)`.
    ///
    /// Recomposing with [`LdpExpr::recompose`] gives back `f` with the same
    /// variable numbering.
    pub fn decompose_maxvar(&self) -> Result<(LdpExpr, LdpExpr, BigUint)> {
        match self {
            LdpExpr::Const(_) => Err(Error::ZeroDegree),
            LdpExpr::Extend { base, addend } => {
                Ok((LdpExpr::constant(1u32), (**base).clone(), addend.clone()))
            }
            LdpExpr::Product(l, r) => {
                if r.degree() > 0 {
                    let (h, g, c) = r.decompose_maxvar()?;
                    Ok((LdpExpr::tensor((**l).clone(), h), g, c))
                } else {
                    // r is constant, so moving it to the front keeps the order.
                    let (h, g, c) = l.decompose_maxvar()?;
                    Ok((LdpExpr::tensor((**r).clone(), h), g, c))
                }
            }
        }
    }

    pub fn recompose(h: LdpExpr, g: LdpExpr, c: BigUint) -> LdpExpr {
        LdpExpr::tensor(h, LdpExpr::extend(g, c))
    }

    /// Coefficient polynomial of `x_index` (1-based), keeping the remaining
    /// variables' names.
    pub fn drop_variable(&self, index: usize) -> Result<MultilinearPoly> {
        self.coefficients()?.derivative(index)
    }

    /// Every exponent tuple at which the polynomial (or its augmented form)
    /// equals `n`, in ascending lexicographic order.
    ///
    /// `cap` bounds each exponent and defaults to `ceil(log_3 n)`, past which
    /// no variable can be raised without exceeding `n`.
    pub fn find_3_representations(&self, n: &BigUint, cap: Option<u32>, form: Form) -> Vec<Vec<u32>> {
        if n.is_zero() {
            return Vec::new();
        }
        let cap = cap.unwrap_or_else(|| ceil_log3(n));
        let mut out = match form {
            Form::Plain => search(self, n, cap),
            Form::Augmented => {
                let mut out = Vec::new();
                let mut m = n.clone();
                let three = BigUint::from(3u32);
                for e in 0..=cap {
                    for mut t in search(self, &m, cap) {
                        t.push(e);
                        out.push(t);
                    }
                    let (q, r) = m.div_rem(&three);
                    if !r.is_zero() {
                        break;
                    }
                    m = q;
                }
                out
            }
        };
        out.sort();
        out
    }

    /// Every `(value, tuple)` with value at most `bound` and each exponent at
    /// most `cap`, sorted by tuple.
    pub fn values_up_to(&self, bound: &BigUint, cap: u32) -> Vec<(BigUint, Vec<u32>)> {
        let mut out = values_node(self, bound, cap);
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }
}

fn coeff_terms(node: &LdpExpr, offset: u32) -> Vec<(Vec<u32>, BigUint)> {
    match node {
        LdpExpr::Const(k) => vec![(Vec::new(), k.clone())],
        LdpExpr::Product(l, r) => {
            let left = coeff_terms(l, offset);
            let right = coeff_terms(r, offset + l.degree() as u32);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for (ls, lc) in &left {
                for (rs, rc) in &right {
                    let mut s = ls.clone();
                    s.extend_from_slice(rs);
                    out.push((s, lc * rc));
                }
            }
            out
        }
        LdpExpr::Extend { base, addend } => {
            let var = offset + base.degree() as u32 + 1;
            let mut out: Vec<_> = coeff_terms(base, offset)
                .into_iter()
                .map(|(mut s, c)| {
                    s.push(var);
                    (s, c)
                })
                .collect();
            out.push((Vec::new(), addend.clone()));
            out
        }
    }
}

fn eval_node(node: &LdpExpr, exps: &[u32], at: &mut usize) -> BigUint {
    match node {
        LdpExpr::Const(k) => k.clone(),
        LdpExpr::Product(l, r) => {
            let a = eval_node(l, exps, at);
            a * eval_node(r, exps, at)
        }
        LdpExpr::Extend { base, addend } => {
            let b = eval_node(base, exps, at);
            let e = exps[*at];
            *at += 1;
            b * pow3(e) + addend
        }
    }
}

fn search(node: &LdpExpr, n: &BigUint, cap: u32) -> Vec<Vec<u32>> {
    match node {
        LdpExpr::Const(k) => {
            if k == n {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        }
        LdpExpr::Extend { base, addend } => {
            if n <= addend {
                return Vec::new();
            }
            let three = BigUint::from(3u32);
            let mut m = n - addend;
            let mut out = Vec::new();
            for e in 0..=cap {
                if m < base.min_value() {
                    break;
                }
                for mut t in search(base, &m, cap) {
                    t.push(e);
                    out.push(t);
                }
                let (q, r) = m.div_rem(&three);
                if !r.is_zero() {
                    break;
                }
                m = q;
            }
            out
        }
        LdpExpr::Product(l, r) => {
            let mut out = Vec::new();
            if r.degree() == 0 && l.degree() > 0 {
                let k = r.min_value();
                let (q, rem) = n.div_rem(&k);
                if rem.is_zero() {
                    out = search(l, &q, cap);
                }
                return out;
            }
            // Enumerate the left factor's values and divide them out.
            for (v, lt) in values_node(l, n, cap) {
                let (q, rem) = n.div_rem(&v);
                if !rem.is_zero() {
                    continue;
                }
                for rt in search(r, &q, cap) {
                    let mut t = lt.clone();
                    t.extend_from_slice(&rt);
                    out.push(t);
                }
            }
            out
        }
    }
}

fn values_node(node: &LdpExpr, bound: &BigUint, cap: u32) -> Vec<(BigUint, Vec<u32>)> {
    match node {
        LdpExpr::Const(k) => {
            if k <= bound {
                vec![(k.clone(), Vec::new())]
            } else {
                Vec::new()
            }
        }
        LdpExpr::Extend { base, addend } => {
            if addend >= bound {
                return Vec::new();
            }
            let room = bound - addend;
            let mut out = Vec::new();
            for (v, t) in values_node(base, &room, cap) {
                let mut scaled = v;
                for e in 0..=cap {
                    if scaled > room {
                        break;
                    }
                    let mut tt = t.clone();
                    tt.push(e);
                    out.push((&scaled + addend, tt));
                    scaled *= 3u32;
                }
            }
            out
        }
        LdpExpr::Product(l, r) => {
            let rmin = r.min_value();
            let lvals = values_node(l, &(bound / &rmin), cap);
            let mut out = Vec::new();
            for (lv, lt) in &lvals {
                for (rv, rt) in values_node(r, &(bound / lv), cap) {
                    let mut t = lt.clone();
                    t.extend_from_slice(&rt);
                    out.push((lv * rv, t));
                }
            }
            out
        }
    }
}

fn fmt_node(node: &LdpExpr, offset: &mut u32, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let wrapped = |node: &LdpExpr, offset: &mut u32, f: &mut fmt::Formatter<'_>| {
        if matches!(node, LdpExpr::Extend { .. }) {
            f.write_str("(")?;
            fmt_node(node, offset, f)?;
            f.write_str(")")
        } else {
            fmt_node(node, offset, f)
        }
    };
    match node {
        LdpExpr::Const(k) => write!(f, "{k}"),
        LdpExpr::Product(l, r) => {
            wrapped(l, offset, f)?;
            f.write_str("*")?;
            wrapped(r, offset, f)
        }
        LdpExpr::Extend { base, addend } => {
            let unit = matches!(&**base, LdpExpr::Const(k) if k.is_one());
            if !unit {
                wrapped(base, offset, f)?;
                f.write_str("*")?;
            }
            *offset += 1;
            write!(f, "x{}+{addend}", *offset)
        }
    }
}

impl fmt::Display for LdpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut offset = 0;
        fmt_node(self, &mut offset, f)
    }
}

/// Expanded multilinear polynomial with named variables (1-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultilinearPoly {
    /// Variables in use, ascending.
    pub vars: Vec<u32>,
    /// Sorted variable set to coefficient; zero coefficients omitted.
    pub terms: BTreeMap<Vec<u32>, BigUint>,
}

impl MultilinearPoly {
    pub fn coefficient(&self, vars: &[u32]) -> BigUint {
        self.terms.get(vars).cloned().unwrap_or_default()
    }

    pub fn leading_coefficient(&self) -> BigUint {
        self.coefficient(&self.vars)
    }

    pub fn constant_term(&self) -> BigUint {
        self.coefficient(&[])
    }

    /// Value with `vars[i] = 3^exps[i]`.
    pub fn evaluate(&self, exps: &[u32]) -> Result<BigUint> {
        if exps.len() != self.vars.len() {
            return Err(Error::Arity {
                expected: self.vars.len(),
                got: exps.len(),
            });
        }
        let mut total = BigUint::zero();
        for (set, c) in &self.terms {
            let e: u32 = set
                .iter()
                .map(|v| exps[self.vars.binary_search(v).expect("term uses known var")])
                .sum();
            total += c * pow3(e);
        }
        Ok(total)
    }

    /// Partial derivative in `x_var`, which for a multilinear polynomial is
    /// the coefficient of `x_var`.
    pub fn derivative(&self, var: usize) -> Result<MultilinearPoly> {
        let v = u32::try_from(var).unwrap_or(u32::MAX);
        if !self.vars.contains(&v) {
            return Err(Error::Variable {
                index: var,
                degree: self.vars.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(s, _)| s.contains(&v))
            .map(|(s, c)| (s.iter().copied().filter(|&x| x != v).collect(), c.clone()))
            .collect();
        Ok(MultilinearPoly {
            vars: self.vars.iter().copied().filter(|&x| x != v).collect(),
            terms,
        })
    }

    /// Exact key of `C + 3 Σe - 3 log_3 f(3^e)`.
    pub fn defect_at(&self, base_complexity: u64, exps: &[u32]) -> Result<DefectKey> {
        let value = self.evaluate(exps)?;
        let sum: u64 = exps.iter().map(|&e| e as u64).sum();
        Ok(DefectKey::new(base_complexity + 3 * sum, value))
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest-degree terms first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        let mut first = true;
        for (set, c) in terms {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if set.is_empty() || !c.is_one() {
                write!(f, "{c}")?;
            }
            for v in set {
                write!(f, "x{v}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A low-defect polynomial with its base complexity `C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LowDefectPair {
    pub expr: LdpExpr,
    pub base_complexity: u64,
}

fn certify(table: Option<&ComplexityTable>, k: &BigUint, given: u64) -> Result<()> {
    if let Some(t) = table {
        if let Some(v) = k.to_u64() {
            if t.contains(v) {
                let certified = t.get(v) as u64;
                if given < certified {
                    return Err(Error::BelowComplexity {
                        value: v,
                        given,
                        certified,
                    });
                }
            }
        }
    }
    Ok(())
}

impl LowDefectPair {
    /// `(k, C)`; with a table, `C >= ||k||` is enforced when `k` is in range.
    pub fn make_const(k: impl Into<BigUint>, c: u64, table: Option<&ComplexityTable>) -> Result<Self> {
        let k = k.into();
        if k.is_zero() {
            return Err(Error::InvalidPolynomial("zero constant"));
        }
        certify(table, &k, c)?;
        Ok(Self {
            expr: LdpExpr::Const(k),
            base_complexity: c,
        })
    }

    /// `(f1 ⊗ f2, C1 + C2)`.
    pub fn tensor(a: &LowDefectPair, b: &LowDefectPair) -> Self {
        Self {
            expr: LdpExpr::tensor(a.expr.clone(), b.expr.clone()),
            base_complexity: a.base_complexity + b.base_complexity,
        }
    }

    /// `(f ⊗ x + c, C + D)`; with a table, `D >= ||c||` is enforced when `c`
    /// is in range.
    pub fn extend(&self, c: impl Into<BigUint>, d: u64, table: Option<&ComplexityTable>) -> Result<Self> {
        let c = c.into();
        if c.is_zero() {
            return Err(Error::InvalidPolynomial("zero addend"));
        }
        certify(table, &c, d)?;
        Ok(Self {
            expr: LdpExpr::extend(self.expr.clone(), c),
            base_complexity: self.base_complexity + d,
        })
    }

    pub fn degree(&self) -> usize {
        self.expr.degree()
    }

    /// `δ(f, C) = C - 3 log_3 a` as the exact key `(C, a)`.
    pub fn delta(&self) -> DefectKey {
        DefectKey::new(self.base_complexity, self.expr.leading_coefficient())
    }

    /// `δ_{f,C}(e)` as the exact key `(C + 3 Σe, f(3^e))`.
    pub fn delta_at(&self, exps: &[u32]) -> Result<DefectKey> {
        let value = self.expr.evaluate(exps)?;
        let sum: u64 = exps.iter().map(|&e| e as u64).sum();
        Ok(DefectKey::new(self.base_complexity + 3 * sum, value))
    }

    pub fn augment_evaluate(&self, exps: &[u32]) -> Result<BigUint> {
        self.expr.augment_evaluate(exps)
    }

    /// A tuple `e` with value `n` and `||n|| = C + 3 Σe`, if any.
    pub fn is_efficiently_represented(
        &self,
        table: &ComplexityTable,
        n: u64,
        form: Form,
    ) -> Result<Option<Vec<u32>>> {
        let c = table.complexity(n)? as u64;
        if c < self.base_complexity || !(c - self.base_complexity).is_multiple_of(3) {
            return Ok(None);
        }
        let budget = (c - self.base_complexity) / 3;
        let target = BigUint::from(n);
        let cap = ceil_log3(&target).min(budget as u32);
        Ok(self
            .expr
            .find_3_representations(&target, Some(cap), form)
            .into_iter()
            .find(|t| t.iter().map(|&e| e as u64).sum::<u64>() == budget))
    }
}

impl fmt::Display for LowDefectPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.expr, self.base_complexity)
    }
}

/// `(...((a x1 + 1) x2 + 1)...) xk + 1`.
pub fn chain_polynomial(a: u64, k: usize) -> LdpExpr {
    let mut e = LdpExpr::constant(a);
    for _ in 0..k {
        e = LdpExpr::extend(e, 1u32);
    }
    e
}

/// Renders an exponent tuple as `(1,2)`.
pub fn format_tuple(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(|e| format!("{e}")).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn figure() -> LdpExpr {
        // (2x1+1)x2+1
        LdpExpr::extend(LdpExpr::extend(LdpExpr::constant(2u32), 1u32), 1u32)
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn construction() {
        let t = ComplexityTable::build(100).unwrap();
        let one = LowDefectPair::make_const(1u32, 1, Some(&t)).unwrap();
        let two = LowDefectPair::make_const(2u32, 2, Some(&t)).unwrap();
        let three = LowDefectPair::make_const(3u32, 3, Some(&t)).unwrap();
        let p17 = LowDefectPair::make_const(17u32, 9, Some(&t)).unwrap();
        assert_eq!(p17.base_complexity, 9);
        assert!(matches!(
            LowDefectPair::make_const(17u32, 8, Some(&t)),
            Err(Error::BelowComplexity { .. })
        ));
        let six = LowDefectPair::tensor(&two, &three);
        assert_eq!(six.expr, LdpExpr::constant(6u32));
        assert_eq!(six.base_complexity, 5);

        let f = two.extend(1u32, 1, Some(&t)).unwrap();
        assert_eq!(f.to_string(), "(2*x1+1, 3)");
        let g = f.extend(1u32, 1, Some(&t)).unwrap();
        assert_eq!(g.expr, figure());
        assert_eq!(g.base_complexity, 4);
        let h = one.extend(1u32, 1, None).unwrap();
        assert_eq!(h.to_string(), "(x1+1, 2)");
        assert!(two.extend(7u32, 1, Some(&t)).is_err());

        let p = LowDefectPair::tensor(&f, &three);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.base_complexity, 6);
        assert_eq!(p.to_string(), "((2*x1+1)*3, 6)");
    }

    #[test]
    fn coefficient_maps() {
        let c = figure().coefficients().unwrap();
        assert_eq!(c.coefficient(&[]), big(1));
        assert_eq!(c.coefficient(&[2]), big(1));
        assert_eq!(c.coefficient(&[1, 2]), big(2));
        assert!(!c.terms.contains_key(&vec![1]));
        assert_eq!(c.terms.len(), 3);
        assert_eq!(c.to_string(), "2x1x2+x2+1");
        let k = LdpExpr::constant(7u32).coefficients().unwrap();
        assert_eq!(k.terms.len(), 1);
        assert_eq!(k.constant_term(), big(7));
        let x = LdpExpr::extend(LdpExpr::constant(1u32), 1u32).coefficients().unwrap();
        assert_eq!(x.to_string(), "x1+1");
        assert!(LdpExpr::constant(0u32).coefficients().is_err());
        assert!(LdpExpr::extend(LdpExpr::constant(2u32), 0u32).coefficients().is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(figure().evaluate(&[1, 2]).unwrap(), big(64));
        assert_eq!(figure().evaluate(&[0, 0]).unwrap(), big(4));
        let f16 = LdpExpr::extend(LdpExpr::constant(16u32), 1u32);
        assert_eq!(f16.evaluate(&[0]).unwrap(), big(17));
        assert_eq!(figure().evaluate(&[1]), Err(Error::Arity { expected: 2, got: 1 }));
        assert_eq!(LdpExpr::constant(2u32).augment_evaluate(&[3]).unwrap(), big(54));
        let f = LdpExpr::extend(LdpExpr::constant(2u32), 1u32);
        assert_eq!(f.augment_evaluate(&[1, 1]).unwrap(), big(21));
        assert_eq!(LdpExpr::constant(1u32).augment_evaluate(&[0]).unwrap(), big(1));
        assert!(f.augment_evaluate(&[1]).is_err());
    }

    #[test]
    fn pair_defects() {
        let p = LowDefectPair::make_const(3u32, 3, None).unwrap();
        assert_eq!(p.delta().to_f64(), 0.0);
        let g = LowDefectPair {
            expr: figure(),
            base_complexity: 4,
        };
        assert!((g.delta().to_f64() - 2.107_210_6).abs() < 1e-6);
        let f16 = LowDefectPair {
            expr: LdpExpr::extend(LdpExpr::constant(16u32), 1u32),
            base_complexity: 9,
        };
        assert!((f16.delta().to_f64() - 1.428_843).abs() < 1e-5);
        let at = g.delta_at(&[1, 2]).unwrap();
        assert_eq!(at, DefectKey::new(13, 64u32));
        assert!((at.to_f64() - 1.643_264).abs() < 1e-5);
        assert_eq!(p.delta_at(&[]).unwrap().to_f64(), 0.0);
        let k17 = f16.delta_at(&[0]).unwrap();
        assert_eq!(k17, DefectKey::new(9, 17u32));
        assert!((k17.to_f64() - 1.263_294).abs() < 1e-5);
    }

    #[test]
    fn decomposition() {
        let (h, g, c) = figure().decompose_maxvar().unwrap();
        assert_eq!(h, LdpExpr::constant(1u32));
        assert_eq!(g, LdpExpr::extend(LdpExpr::constant(2u32), 1u32));
        assert_eq!(c, big(1));
        let x1 = LdpExpr::extend(LdpExpr::constant(1u32), 1u32);
        let (h, g, c) = x1.decompose_maxvar().unwrap();
        assert_eq!((h, g, c), (LdpExpr::constant(1u32), LdpExpr::constant(1u32), big(1)));
        let prod = LdpExpr::tensor(LdpExpr::constant(3u32), LdpExpr::extend(LdpExpr::constant(2u32), 1u32));
        let (h, g, c) = prod.decompose_maxvar().unwrap();
        assert_eq!((h, g, c), (LdpExpr::constant(3u32), LdpExpr::constant(2u32), big(1)));
        assert_eq!(LdpExpr::constant(5u32).decompose_maxvar(), Err(Error::ZeroDegree));
    }

    #[test]
    fn dropping_variables() {
        assert_eq!(figure().drop_variable(2).unwrap().to_string(), "2x1+1");
        let d1 = figure().drop_variable(1).unwrap();
        assert_eq!(d1.to_string(), "2x2");
        assert_eq!(d1.vars, vec![2]);
        let x1 = LdpExpr::extend(LdpExpr::constant(1u32), 1u32);
        assert_eq!(x1.drop_variable(1).unwrap().to_string(), "1");
        assert!(matches!(figure().drop_variable(3), Err(Error::Variable { .. })));
        assert!(matches!(figure().drop_variable(0), Err(Error::Variable { .. })));
    }

    #[test]
    fn representations() {
        let f16 = LdpExpr::extend(LdpExpr::constant(16u32), 1u32);
        assert_eq!(f16.find_3_representations(&big(17), None, Form::Plain), vec![vec![0]]);
        assert_eq!(figure().find_3_representations(&big(64), None, Form::Plain), vec![vec![1, 2]]);
        let x1 = LdpExpr::extend(LdpExpr::constant(1u32), 1u32);
        assert!(x1.find_3_representations(&big(5), None, Form::Plain).is_empty());
        assert_eq!(
            x1.find_3_representations(&big(10), None, Form::Plain),
            vec![vec![2]]
        );
        assert_eq!(
            LdpExpr::constant(2u32).find_3_representations(&big(54), None, Form::Augmented),
            vec![vec![3]]
        );
    }

    #[test]
    fn efficiency() {
        let t = ComplexityTable::build(1000).unwrap();
        let f16 = LowDefectPair {
            expr: LdpExpr::extend(LdpExpr::constant(16u32), 1u32),
            base_complexity: 9,
        };
        assert_eq!(
            f16.is_efficiently_represented(&t, 17, Form::Plain).unwrap(),
            Some(vec![0])
        );
        assert_eq!(t.get(54), 11);
        let two = LowDefectPair::make_const(2u32, 2, None).unwrap();
        assert_eq!(
            two.is_efficiently_represented(&t, 54, Form::Augmented).unwrap(),
            Some(vec![3])
        );
        let one = LowDefectPair::make_const(1u32, 1, None).unwrap();
        assert_eq!(one.is_efficiently_represented(&t, 1, Form::Plain).unwrap(), Some(vec![]));
        assert!(one.is_efficiently_represented(&t, 1001, Form::Plain).is_err());
    }

    #[test]
    fn chain() {
        let f = chain_polynomial(3, 2);
        assert_eq!(f.to_string(), "(3*x1+1)*x2+1");
        assert_eq!(f.degree(), 2);
        assert_eq!(format_tuple(&[1, 2]), "(1,2)");
    }
}
