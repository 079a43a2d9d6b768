//! Empirical lower bounds for the Bertrand constant B_K: the smallest B > 1
//! such that every interval [x, Bx], x > 1, contains a prime-ideal norm.
//!
//! From a sorted list of prime norms q_1 < q_2 < ... <= X the scanned range
//! forces B_K >= q_1 (x just above 1) and B_K >= q_{i+1}/q_i (x just above q_i).

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sieve::CoefficientTable;

/// Where the maximal ratio is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// The smallest norm q_1, from intervals starting just above 1.
    Leading(u64),
    /// Consecutive distinct norms (q_i, q_{i+1}).
    Gap(u64, u64),
}

impl Witness {
    pub fn pair(&self) -> (u64, u64) {
        match *self {
            Witness::Leading(q) => (1, q),
            Witness::Gap(a, b) => (a, b),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (a, b) = self.pair();
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&a)?;
        seq.serialize_element(&b)?;
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRatio {
    pub ratio: f64,
    pub from: u64,
    pub to: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub schema: &'static str,
    pub label: String,
    #[serde(rename = "X")]
    pub limit: f64,
    pub b_lower: f64,
    pub witness: Witness,
    pub top_ratios: Vec<GapRatio>,
}

fn distinct_norms(table: &CoefficientTable, x: f64) -> Vec<u64> {
    let mut norms: Vec<u64> = table.prime_norms().iter().copied().take_while(|&q| (q as f64) <= x).collect();
    norms.dedup();
    norms
}

/// Scans the prime norms up to `x` and keeps the `top_k` largest consecutive ratios.
pub fn scan_gaps(table: &CoefficientTable, x: f64, top_k: usize) -> Result<GapReport> {
    if !(x <= table.limit() as f64) || x.is_nan() {
        return Err(Error::OutOfRange { x, lo: 1.0, hi: table.limit() as f64 });
    }
    let norms = distinct_norms(table, x);
    let Some(&first) = norms.first() else {
        return Err(Error::EmptyNorms(x));
    };
    let mut ratios: Vec<GapRatio> =
        norms.windows(2).map(|w| GapRatio { ratio: w[1] as f64 / w[0] as f64, from: w[0], to: w[1] }).collect();

    let mut b_lower = first as f64;
    let mut witness = Witness::Leading(first);
    for r in &ratios {
        if r.ratio > b_lower {
            b_lower = r.ratio;
            witness = Witness::Gap(r.from, r.to);
        }
    }
    // stable: equal ratios keep the smaller norm first
    ratios.sort_by(|a, b| b.ratio.total_cmp(&a.ratio));
    ratios.truncate(top_k);
    Ok(GapReport { schema: "1", label: table.label().to_string(), limit: x, b_lower, witness, top_ratios: ratios })
}

/// Smallest prime-ideal norm in [x, b x], if any.
pub fn verify_interval(table: &CoefficientTable, x: f64, b: f64) -> Result<Option<u64>> {
    if !(b >= 1.0) {
        return Err(Error::Parameter(format!("interval factor B = {b} must be at least 1")));
    }
    let hi = b * x;
    if !(x > 0.0 && hi <= table.limit() as f64) {
        return Err(Error::OutOfRange { x: hi, lo: 1.0, hi: table.limit() as f64 });
    }
    let norms = table.prime_norms();
    let i = norms.partition_point(|&q| (q as f64) < x);
    Ok(norms.get(i).copied().filter(|&q| q as f64 <= hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::sieve::build_table;

    #[test]
    fn rational_and_gaussian() {
        let q = build_table(&NumberField::rational(), 100).unwrap();
        let r = scan_gaps(&q, 100.0, 3).unwrap();
        assert_eq!(r.b_lower, 2.0);
        assert_eq!(r.witness, Witness::Leading(2));

        let gi = build_table(&NumberField::quadratic(-4).unwrap(), 100).unwrap();
        let r = scan_gaps(&gi, 100.0, 3).unwrap();
        assert_eq!(r.b_lower, 2.5);
        assert_eq!(r.witness, Witness::Gap(2, 5));
        assert_eq!(r.top_ratios[0], GapRatio { ratio: 2.5, from: 2, to: 5 });
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["witness"], serde_json::json!([2, 5]));
        assert_eq!(json["X"], serde_json::json!(100.0));
    }

    #[test]
    fn intervals() {
        let gi = build_table(&NumberField::quadratic(-4).unwrap(), 100).unwrap();
        assert_eq!(verify_interval(&gi, 3.0, 2.0).unwrap(), Some(5));
        assert_eq!(verify_interval(&gi, 2.1, 2.0).unwrap(), None);
        let q = build_table(&NumberField::rational(), 100).unwrap();
        assert_eq!(verify_interval(&q, 1.0 + 1e-9, 2.0).unwrap(), Some(2));
        assert!(verify_interval(&q, 60.0, 2.0).is_err());
        assert!(verify_interval(&q, 2.0, 0.5).is_err());
    }

    #[test]
    fn empty_and_monotone() {
        let gi = build_table(&NumberField::quadratic(-4).unwrap(), 1000).unwrap();
        assert!(matches!(scan_gaps(&gi, 1.0, 1), Err(Error::EmptyNorms(_))));
        let mut last = 0.0;
        for x in [2.0, 5.0, 10.0, 100.0, 1000.0] {
            let b = scan_gaps(&gi, x, 1).unwrap().b_lower;
            assert!(b >= last);
            last = b;
        }
    }
}
