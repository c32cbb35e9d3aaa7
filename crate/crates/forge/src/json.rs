//! Canonical JSON for expressions, pairs, cover sets and reports.
//!
//! Integers below 2^53 are JSON numbers; larger ones are decimal strings.

use std::str::FromStr;

use defect_forge_core::cover::{CoverEntry, CoverFailure, FailureForm};
use defect_forge_core::{CoverReport, CoverSet, DefectThreshold, LdpExpr, LowDefectPair, Provenance};
use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ForgeError, Result};

const SAFE_INTEGER: u64 = 1 << 53;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub BigUint);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match u64::try_from(&self.0) {
            Ok(v) if v < SAFE_INTEGER => s.serialize_u64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Num(BigUint::from(v))),
            Raw::Text(s) => BigUint::from_str(&s)
                .map(Num)
                .map_err(|_| D::Error::custom(format!("bad integer {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExprJson {
    Const {
        value: Num,
    },
    Product {
        left: Box<ExprJson>,
        right: Box<ExprJson>,
    },
    Extend {
        base: Box<ExprJson>,
        addend: Num,
    },
}

impl From<&LdpExpr> for ExprJson {
    fn from(e: &LdpExpr) -> Self {
        match e {
            LdpExpr::Const(k) => ExprJson::Const { value: Num(k.clone()) },
            LdpExpr::Product(l, r) => ExprJson::Product {
                left: Box::new(l.as_ref().into()),
                right: Box::new(r.as_ref().into()),
            },
            LdpExpr::Extend { base, addend } => ExprJson::Extend {
                base: Box::new(base.as_ref().into()),
                addend: Num(addend.clone()),
            },
        }
    }
}

impl ExprJson {
    /// Rebuilds the tree exactly as written, then validates it.
    pub fn to_expr(&self) -> Result<LdpExpr> {
        let e = self.raw();
        e.validate()?;
        Ok(e)
    }

    fn raw(&self) -> LdpExpr {
        match self {
            ExprJson::Const { value } => LdpExpr::Const(value.0.clone()),
            ExprJson::Product { left, right } => {
                LdpExpr::Product(Box::new(left.raw()), Box::new(right.raw()))
            }
            ExprJson::Extend { base, addend } => LdpExpr::Extend {
                base: Box::new(base.raw()),
                addend: addend.0.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub poly: ExprJson,
    pub base_complexity: u64,
}

impl From<&LowDefectPair> for PairJson {
    fn from(p: &LowDefectPair) -> Self {
        PairJson {
            poly: (&p.expr).into(),
            base_complexity: p.base_complexity,
        }
    }
}

impl PairJson {
    pub fn to_pair(&self) -> Result<LowDefectPair> {
        Ok(LowDefectPair {
            expr: self.poly.to_expr()?,
            base_complexity: self.base_complexity,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntryJson {
    pub poly: ExprJson,
    pub base_complexity: u64,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub r: String,
    pub k: u32,
    pub alpha: String,
    pub pairs: Vec<CoverEntryJson>,
    pub base_bound: u64,
}

impl From<&CoverSet> for CoverJson {
    fn from(c: &CoverSet) -> Self {
        CoverJson {
            r: c.r.to_string(),
            k: c.k,
            alpha: c.alpha.to_string(),
            pairs: c
                .entries
                .iter()
                .map(|e| CoverEntryJson {
                    poly: (&e.pair.expr).into(),
                    base_complexity: e.pair.base_complexity,
                    provenance: e.provenance.tag().to_string(),
                })
                .collect(),
            base_bound: c.base_bound,
        }
    }
}

impl CoverJson {
    pub fn to_cover(&self) -> Result<CoverSet> {
        let r = DefectThreshold::from_str(&self.r)?;
        let alpha = DefectThreshold::from_str(&self.alpha)?;
        let entries = self
            .pairs
            .iter()
            .map(|p| {
                let provenance = Provenance::from_tag(&p.provenance).ok_or_else(|| {
                    ForgeError::Format(format!("unknown provenance {:?}", p.provenance))
                })?;
                Ok(CoverEntry {
                    pair: LowDefectPair {
                        expr: p.poly.to_expr()?,
                        base_complexity: p.base_complexity,
                    },
                    provenance,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoverSet {
            r,
            k: self.k,
            alpha,
            base_bound: self.base_bound,
            entries,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureJson {
    pub n: u64,
    pub form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub bound: u64,
    pub checked: u64,
    pub covered: u64,
    pub failures: Vec<FailureJson>,
    pub extraneous_hits: u64,
    pub pair_hits: Vec<u64>,
}

impl From<&CoverReport> for ReportJson {
    fn from(r: &CoverReport) -> Self {
        ReportJson {
            bound: r.bound,
            checked: r.checked,
            covered: r.covered,
            failures: r.failures.iter().map(failure_json).collect(),
            extraneous_hits: r.extraneous_hits,
            pair_hits: r.pair_hits.clone(),
        }
    }
}

fn failure_json(f: &CoverFailure) -> FailureJson {
    FailureJson {
        n: f.n,
        form: match f.form {
            FailureForm::Leader => "leader",
            FailureForm::Augmented => "augmented",
        }
        .to_string(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("wire types serialize");
    s.push('\n');
    s
}

pub fn cover_to_json(c: &CoverSet) -> String {
    to_pretty(&CoverJson::from(c))
}

pub fn cover_from_json(text: &str) -> Result<CoverSet> {
    serde_json::from_str::<CoverJson>(text)?.to_cover()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expr_shape() {
        let e = LdpExpr::extend(LdpExpr::extend(LdpExpr::constant(2u32), 1u32), 1u32);
        let v = serde_json::to_value(ExprJson::from(&e)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"kind":"extend","base":{"kind":"extend","base":{"kind":"const","value":2},"addend":1},"addend":1})
        );
        let back: ExprJson = serde_json::from_value(v).unwrap();
        assert_eq!(back.to_expr().unwrap(), e);
    }

    #[test]
    fn big_numbers_are_strings() {
        let big = BigUint::from(1u64 << 53);
        let j = serde_json::to_string(&Num(big.clone())).unwrap();
        assert_eq!(j, "\"9007199254740992\"");
        assert_eq!(serde_json::to_string(&Num(BigUint::from((1u64 << 53) - 1))).unwrap(), "9007199254740991");
        let back: Num = serde_json::from_str(&j).unwrap();
        assert_eq!(back.0, big);
    }

    #[test]
    fn pair_field_order() {
        let p = LowDefectPair::make_const(9u32, 6, None).unwrap();
        let s = serde_json::to_string(&PairJson::from(&p)).unwrap();
        assert_eq!(s, r#"{"poly":{"kind":"const","value":9},"base_complexity":6}"#);
    }

    #[test]
    fn invalid_trees_are_rejected() {
        let zero = r#"{"kind":"extend","base":{"kind":"const","value":2},"addend":0}"#;
        let e: ExprJson = serde_json::from_str(zero).unwrap();
        assert!(e.to_expr().is_err());
        assert!(serde_json::from_str::<ExprJson>(r#"{"kind":"sum"}"#).is_err());
    }

    #[test]
    fn cover_round_trip() {
        let t = defect_forge_core::ComplexityTable::build(50_000).unwrap();
        let c = defect_forge_core::build_s_r(&t, "1".parse().unwrap()).unwrap();
        let text = cover_to_json(&c);
        let back = cover_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(cover_to_json(&back), text);
    }
}
