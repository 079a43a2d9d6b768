//! Number fields described by their arithmetic invariants.
//!
//! A [`NumberField`] carries degree, signed discriminant, signature, class
//! number, regulator and number of roots of unity, optionally a monic defining
//! polynomial. Quadratic fields can be built from a fundamental discriminant
//! alone, in which case class number, regulator and roots of unity are computed.

pub mod quadratic;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::arith::factorial;
use crate::error::{Error, Result};

/// Lower bound for R_K / w_K valid for every field of degree at least two.
pub const FRIEDMAN_BOUND: f64 = 9.0 / 100.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumberField {
    pub label: String,
    pub degree: u32,
    pub discriminant: i64,
    pub r1: u32,
    pub r2: u32,
    pub class_number: u64,
    pub regulator: f64,
    pub roots_of_unity: u32,
    /// Monic, lowest degree first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Vec<i64>>,
    /// User-supplied splitting types `(e, f)` for primes where the defining
    /// polynomial cannot be trusted.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub splitting: BTreeMap<u64, Vec<(u32, u32)>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiCheck {
    pub holds: bool,
    /// d / |Delta|
    pub lhs: f64,
    /// (4/pi)^d (d!)^2 / d^(2d-1)
    pub rhs: f64,
    /// lhs / rhs; at most one when the inequality holds.
    pub margin: f64,
}

fn invalid(invariant: &'static str, detail: impl Into<String>) -> Error {
    Error::InvalidField { invariant, detail: detail.into() }
}

impl NumberField {
    pub fn rational() -> Self {
        NumberField {
            label: "Q".into(),
            degree: 1,
            discriminant: 1,
            r1: 1,
            r2: 0,
            class_number: 1,
            regulator: 1.0,
            roots_of_unity: 2,
            polynomial: Some(vec![0, 1]),
            splitting: BTreeMap::new(),
        }
    }

    /// Q(sqrt(d)) for a fundamental discriminant `d`, with class number,
    /// regulator and roots of unity computed.
    pub fn quadratic(d: i64) -> Result<Self> {
        quadratic::require_fundamental(d)?;
        let (r1, r2) = if d > 0 { (2, 0) } else { (0, 1) };
        let (h, reg) = if d < 0 {
            (quadratic::class_number_imaginary(d), 1.0)
        } else {
            let unit = quadratic::fundamental_unit(d)?;
            (quadratic::class_number_real(d)?, unit.regulator)
        };
        let field = NumberField {
            label: quadratic_label(d),
            degree: 2,
            discriminant: d,
            r1,
            r2,
            class_number: h,
            regulator: reg,
            roots_of_unity: quadratic::roots_of_unity(d),
            polynomial: Some(quadratic::minimal_polynomial(d)),
            splitting: BTreeMap::new(),
        };
        field.validate()?;
        Ok(field)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn abs_discriminant(&self) -> f64 {
        self.discriminant.unsigned_abs() as f64
    }

    /// The fundamental discriminant when this is a quadratic field.
    pub fn quadratic_discriminant(&self) -> Option<i64> {
        (self.degree == 2 && quadratic::is_fundamental_discriminant(self.discriminant))
            .then_some(self.discriminant)
    }

    /// Checks every structural invariant and reports the first violation.
    pub fn validate(&self) -> Result<()> {
        let d = self.degree;
        if d == 0 {
            return Err(invalid("degree", "degree must be positive"));
        }
        if self.r1 + 2 * self.r2 != d {
            return Err(invalid("signature", format!("r1 + 2 r2 = {} but d = {d}", self.r1 + 2 * self.r2)));
        }
        if self.discriminant == 0 {
            return Err(invalid("discriminant", "discriminant must be nonzero"));
        }
        if (self.discriminant == 1) != (d == 1) {
            return Err(invalid("discriminant", format!("Delta = {} with d = {d}; Delta = 1 exactly when d = 1", self.discriminant)));
        }
        if self.class_number == 0 {
            return Err(invalid("class_number", "class number must be positive"));
        }
        if !(self.regulator.is_finite() && self.regulator > 0.0) {
            return Err(invalid("regulator", format!("regulator {} must be finite and positive", self.regulator)));
        }
        if self.roots_of_unity == 0 {
            return Err(invalid("roots_of_unity", "w_K must be positive"));
        }
        if let Some(poly) = &self.polynomial {
            if poly.len() != d as usize + 1 || poly.last() != Some(&1) {
                return Err(invalid("polynomial", format!("expected a monic polynomial of degree {d}")));
            }
        }
        for (p, factors) in &self.splitting {
            let sum: u32 = factors.iter().map(|(e, f)| e * f).sum();
            if factors.is_empty() || sum != d || factors.iter().any(|&(e, f)| e == 0 || f == 0) {
                return Err(invalid("splitting", format!("splitting data at p = {p} must satisfy sum e_i f_i = {d}")));
            }
        }
        if d >= 2 {
            let ratio = self.regulator / self.roots_of_unity as f64;
            if ratio < FRIEDMAN_BOUND {
                return Err(invalid("friedman", format!("R_K / w_K = {ratio} < 9/100")));
            }
            let mink = self.minkowski_values();
            if !mink.holds {
                return Err(invalid(
                    "minkowski",
                    format!("d/|Delta| = {} exceeds (4/pi)^d (d!)^2/d^(2d-1) = {}", mink.lhs, mink.rhs),
                ));
            }
        }
        Ok(())
    }

    fn minkowski_values(&self) -> MinkowskiCheck {
        let d = self.degree as f64;
        let lhs = d / self.abs_discriminant();
        let log_rhs = self.degree as f64 * (4.0 / PI).ln() + 2.0 * factorial(self.degree).ln()
            - (2.0 * d - 1.0) * d.ln();
        let rhs = log_rhs.exp();
        MinkowskiCheck { holds: lhs <= rhs, lhs, rhs, margin: lhs / rhs }
    }

    /// Evaluates d |Delta|^{-1} <= (4/pi)^d (d!)^2 / d^{2d-1}.
    pub fn minkowski_check(&self) -> Result<MinkowskiCheck> {
        if self.degree == 1 {
            return Err(Error::DegreeOne);
        }
        Ok(self.minkowski_values())
    }

    /// R_K / w_K.
    pub fn friedman_ratio(&self) -> f64 {
        self.regulator / self.roots_of_unity as f64
    }

    /// Residue of the Dedekind zeta function at s = 1:
    /// 2^r1 (2 pi)^r2 h R / (w sqrt|Delta|).
    pub fn residue(&self) -> Result<f64> {
        self.validate()?;
        Ok(self.residue_unchecked())
    }

    pub(crate) fn residue_unchecked(&self) -> f64 {
        2f64.powi(self.r1 as i32) * (2.0 * PI).powi(self.r2 as i32) * self.class_number as f64 * self.regulator
            / (self.roots_of_unity as f64 * self.abs_discriminant().sqrt())
    }
}

pub fn quadratic_label(d: i64) -> String {
    match d {
        -4 => "Q(i)".into(),
        -3 => "Q(sqrt(-3))".into(),
        _ if d.rem_euclid(4) == 0 => format!("Q(sqrt({}))", d / 4),
        _ => format!("Q(sqrt({d}))"),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadraticDocument {
    label: Option<String>,
    quadratic_discriminant: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FullDocument {
    label: Option<String>,
    degree: u32,
    discriminant: i64,
    r1: u32,
    r2: u32,
    class_number: u64,
    regulator: f64,
    roots_of_unity: u32,
    polynomial: Option<Vec<i64>>,
    #[serde(default)]
    splitting: BTreeMap<String, Vec<(u32, u32)>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldDocument {
    Quadratic(QuadraticDocument),
    Full(FullDocument),
}

/// Parses a field-definition JSON document and returns a validated field.
///
/// Two shapes are accepted: `{"label", "quadratic_discriminant"}` and the
/// full invariant set `{"label", "degree", "discriminant", "r1", "r2",
/// "class_number", "regulator", "roots_of_unity", "polynomial"}`, the latter
/// optionally with `"splitting": {"p": [[e, f], ...]}`.
pub fn load_field(document: &str) -> Result<NumberField> {
    let doc: FieldDocument = serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    match doc {
        FieldDocument::Quadratic(q) => {
            let field = NumberField::quadratic(q.quadratic_discriminant)?;
            Ok(match q.label {
                Some(label) => field.with_label(label),
                None => field,
            })
        }
        FieldDocument::Full(f) => {
            let mut splitting = BTreeMap::new();
            for (key, factors) in f.splitting {
                let p: u64 = key.parse().map_err(|_| Error::Parse(format!("splitting key {key:?} is not an integer")))?;
                if !crate::arith::is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                splitting.insert(p, factors);
            }
            let label = f.label.unwrap_or_else(|| format!("field(d={}, disc={})", f.degree, f.discriminant));
            let field = NumberField {
                label,
                degree: f.degree,
                discriminant: f.discriminant,
                r1: f.r1,
                r2: f.r2,
                class_number: f.class_number,
                regulator: f.regulator,
                roots_of_unity: f.roots_of_unity,
                polynomial: f.polynomial,
                splitting,
            };
            field.validate()?;
            Ok(field)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_rel(a: f64, b: f64, tol: f64) {
        assert!(((a - b) / b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn residues() {
        assert_eq!(NumberField::rational().residue().unwrap(), 1.0);
        assert_rel(NumberField::quadratic(-4).unwrap().residue().unwrap(), PI / 4.0, 1e-15);
        let golden = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let rho5 = NumberField::quadratic(5).unwrap().residue().unwrap();
        assert_rel(rho5, 4.0 * golden / (2.0 * 5f64.sqrt()), 1e-14);
        assert!((rho5 - 0.4304089).abs() < 1e-7);
    }

    #[test]
    fn doubling_class_number_doubles_residue() {
        let mut f = NumberField::quadratic(-23).unwrap();
        let r = f.residue().unwrap();
        f.class_number *= 2;
        assert_eq!(f.residue().unwrap(), 2.0 * r);
    }

    #[test]
    fn minkowski_examples() {
        let gi = NumberField::quadratic(-4).unwrap().minkowski_check().unwrap();
        assert!(gi.holds);
        assert_rel(gi.lhs, 0.5, 1e-15);
        assert_rel(gi.rhs, 16.0 / (PI * PI) * 4.0 / 8.0, 1e-14);
        assert!((gi.margin - 0.6168).abs() < 1e-4);
        assert!(NumberField::quadratic(5).unwrap().minkowski_check().unwrap().holds);

        let mut fake = NumberField::quadratic(-8).unwrap();
        fake.discriminant = -2;
        let m = fake.minkowski_check().unwrap();
        assert!(!m.holds && (m.lhs - 1.0).abs() < 1e-15);
        match fake.validate() {
            Err(Error::InvalidField { invariant, .. }) => assert_eq!(invariant, "minkowski"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(NumberField::rational().minkowski_check(), Err(Error::DegreeOne)));
    }

    #[test]
    fn load_documents() {
        let gi = load_field(r#"{"label":"Q(i)","quadratic_discriminant":-4}"#).unwrap();
        assert_eq!((gi.class_number, gi.roots_of_unity, gi.regulator), (1, 4, 1.0));
        let f23 = load_field(r#"{"quadratic_discriminant":-23}"#).unwrap();
        assert_eq!((f23.class_number, f23.roots_of_unity, f23.regulator), (3, 2, 1.0));
        let q = load_field(
            r#"{"label":"Q","degree":1,"discriminant":1,"r1":1,"r2":0,"class_number":1,"regulator":1.0,"roots_of_unity":2,"polynomial":[0,1]}"#,
        )
        .unwrap();
        assert_eq!(q.discriminant, 1);
        assert!(matches!(load_field(r#"{"quadratic_discriminant":-12}"#), Err(Error::NonFundamental(-12))));
        assert!(matches!(load_field("{nope"), Err(Error::Parse(_))));
        let bad = load_field(
            r#"{"label":"bad","degree":2,"discriminant":-4,"r1":1,"r2":0,"class_number":1,"regulator":1.0,"roots_of_unity":4}"#,
        );
        assert!(matches!(bad, Err(Error::InvalidField { invariant: "signature", .. })));
    }

    #[test]
    fn cubic_with_supplied_invariants() {
        let doc = r#"{"label":"Q(2^(1/3))","degree":3,"discriminant":-108,"r1":1,"r2":1,
            "class_number":1,"regulator":1.3473773483474,"roots_of_unity":2,"polynomial":[-2,0,0,1]}"#;
        let k = load_field(doc).unwrap();
        assert!(k.minkowski_check().unwrap().holds);
        assert!(k.residue().unwrap() > 0.0);
    }

    #[test]
    fn fundamental_fields_satisfy_friedman_and_minkowski() {
        for d in -400i64..=400 {
            if quadratic::is_fundamental_discriminant(d) {
                let k = NumberField::quadratic(d).unwrap();
                assert!(k.minkowski_check().unwrap().holds);
                assert!(k.friedman_ratio() >= FRIEDMAN_BOUND);
            }
        }
    }
}
