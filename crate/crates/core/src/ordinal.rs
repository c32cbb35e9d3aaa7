//! Ordinals below ω^ω in Cantor normal form, with natural (Hessenberg)
//! sum and product.
//!
//! With finite exponents the natural sum is coefficientwise addition and the
//! natural product is polynomial multiplication in ω. ω^ω itself has no
//! representation here.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;

/// `coeffs[i]` is the coefficient of ω^i; no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrdinalCnf {
    coeffs: Vec<BigUint>,
}

impl OrdinalCnf {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Self {
        let mut o = Self { coeffs };
        o.trim();
        o
    }

    pub fn natural(n: u64) -> Self {
        Self::from_coeffs(vec![BigUint::from(n)])
    }

    /// ω^k.
    pub fn omega_power(k: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); k + 1];
        coeffs[k] = BigUint::one();
        Self { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Right multiplication by a natural number, which scales every
    /// coefficient.
    pub fn scale(&self, c: &BigUint) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `a ⊕ b`.
    pub fn nat_sum(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigUint::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `a ⊗ b`.
    pub fn nat_prod(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }
}

impl Ord for OrdinalCnf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for OrdinalCnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn nat_sum(a: &OrdinalCnf, b: &OrdinalCnf) -> OrdinalCnf {
    a.nat_sum(b)
}

pub fn nat_prod(a: &OrdinalCnf, b: &OrdinalCnf) -> OrdinalCnf {
    a.nat_prod(b)
}

pub fn compare_ordinals(a: &OrdinalCnf, b: &OrdinalCnf) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => f.write_str("ω")?,
                _ => write!(f, "ω^{i}")?,
            }
            if i > 0 && !c.is_one() {
                write!(f, "·{c}")?;
            }
        }
        Ok(())
    }
}

fn parse_term(term: &str) -> Result<(usize, BigUint), Error> {
    let bad = || Error::Parse(format!("bad ordinal term {term:?}"));
    let t = term.trim();
    let Some(rest) = t.strip_prefix('ω').or_else(|| t.strip_prefix('w')) else {
        return Ok((0, t.parse::<BigUint>().map_err(|_| bad())?));
    };
    let (exp, coeff) = match rest.find(['·', '*', '.']) {
        Some(at) => {
            let sep = rest[at..].chars().next().expect("found separator");
            (&rest[..at], Some(&rest[at + sep.len_utf8()..]))
        }
        None => (rest, None),
    };
    let exp = match exp.trim().strip_prefix('^') {
        Some(e) => e.trim().parse::<usize>().map_err(|_| bad())?,
        None if exp.trim().is_empty() => 1,
        None => return Err(bad()),
    };
    let coeff = match coeff {
        Some(c) => c.trim().parse::<BigUint>().map_err(|_| bad())?,
        None => BigUint::one(),
    };
    Ok((exp, coeff))
}

impl FromStr for OrdinalCnf {
    type Err = Error;

    /// Accepts the display grammar (`ω^3·2 + ω·5 + 7`), with `w` for `ω`
    /// and `*` for `·` as ASCII fallbacks.
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim().is_empty() {
            return Err(Error::Parse(String::from("empty ordinal")));
        }
        let mut acc = OrdinalCnf::zero();
        for term in s.split('+') {
            let (exp, coeff) = parse_term(term)?;
            acc = acc.nat_sum(&OrdinalCnf::omega_power(exp).scale(&coeff));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn o(s: &str) -> OrdinalCnf {
        s.parse().unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(nat_sum(&o("ω + 2"), &o("ω·2 + 1")), o("ω·3 + 3"));
        assert_eq!(nat_sum(&OrdinalCnf::zero(), &o("ω^2 + 7")), o("ω^2 + 7"));
        assert_eq!(nat_sum(&o("ω^2"), &o("ω")).to_string(), "ω^2 + ω");
    }

    #[test]
    fn products() {
        assert_eq!(nat_prod(&o("ω + 1"), &o("ω + 1")).to_string(), "ω^2 + ω·2 + 1");
        assert_eq!(nat_prod(&o("ω"), &o("3")).to_string(), "ω·3");
        assert!(nat_prod(&o("ω^4 + 1"), &OrdinalCnf::zero()).is_zero());
    }

    #[test]
    fn comparisons() {
        assert_eq!(compare_ordinals(&o("ω"), &o("1000000")), Ordering::Greater);
        assert_eq!(compare_ordinals(&o("ω^2 + 1"), &o("ω^2 + ω")), Ordering::Less);
        assert_eq!(compare_ordinals(&o("ω·2"), &o("ω·2")), Ordering::Equal);
    }

    #[test]
    fn powers_and_display() {
        assert_eq!(OrdinalCnf::omega_power(0).to_string(), "1");
        assert_eq!(OrdinalCnf::omega_power(1).to_string(), "ω");
        assert_eq!(OrdinalCnf::omega_power(3).to_string(), "ω^3");
        assert_eq!(OrdinalCnf::zero().to_string(), "0");
        let x = o("ω^3·2 + ω·5 + 7");
        assert_eq!(x.to_string(), "ω^3·2 + ω·5 + 7");
        assert_eq!(o("w^3*2 + w*5 + 7"), x);
        assert_eq!(o("0"), OrdinalCnf::zero());
    }

    #[test]
    fn parse_errors() {
        for s in ["", "ω^", "ω^x", "x", "ω·", "ω2"] {
            assert!(s.parse::<OrdinalCnf>().is_err(), "{s:?}");
        }
    }
}
