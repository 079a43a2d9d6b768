//! Explicit bound expressions as functions of field invariants and
//! user-supplied effective constants.
//!
//! Quantities with doubly exponential size are evaluated as natural logs.
//! Every report carries the constants it was computed with.

use serde::{Deserialize, Serialize};

use crate::analytics::{riemann_zeta, zeta_k, ErrorFit};
use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::quad::integrate;

const LI_TOL: f64 = 1e-13;
const MAINT_ZETA_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EffectiveConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    #[serde(rename = "cA")]
    pub c_a: f64,
    pub kappa: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub delta: Option<f64>,
}

impl Default for EffectiveConstants {
    fn default() -> Self {
        EffectiveConstants { c1: 1.0, c2: 1.0, c3: 1.0, c4: 1.0, c_a: 10.0, kappa: 1.0, m: 1.0, delta: None }
    }
}

impl EffectiveConstants {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("c1", self.c1),
            ("c2", self.c2),
            ("c3", self.c3),
            ("c4", self.c4),
            ("cA", self.c_a),
            ("kappa", self.kappa),
            ("M", self.m),
        ];
        for (name, v) in named {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("constant {name} = {v} must be positive")));
            }
        }
        if let Some(d) = self.delta {
            if !(d > 0.0) {
                return Err(Error::Parameter(format!("delta = {d} must be positive")));
            }
        }
        Ok(())
    }

    /// delta, checked against 0 < delta < 1/(3d).
    pub fn delta_for(&self, degree: u32) -> Result<f64> {
        let d = self.delta.ok_or_else(|| Error::Parameter("delta is required for this bound".into()))?;
        let cap = 1.0 / (3.0 * degree as f64);
        if !(d > 0.0 && d < cap) {
            return Err(Error::Parameter(format!("delta = {d} must lie in (0, 1/(3d)) = (0, {cap})")));
        }
        Ok(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundCase {
    Normal,
    Tower,
    General { alpha: f64 },
    Grh,
}

impl BoundCase {
    pub fn name(&self) -> &'static str {
        match self {
            BoundCase::Normal => "normal",
            BoundCase::Tower => "tower",
            BoundCase::General { .. } => "general",
            BoundCase::Grh => "grh",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Units {
    #[serde(rename = "x-threshold")]
    XThreshold,
    #[serde(rename = "log_B")]
    LogB,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "range")]
    Range,
    /// Bound on |f_1(x)|, the ideal-count error.
    #[serde(rename = "f1")]
    ErrorTerm,
}

/// One evaluated bound. `log_value` is the natural log of the quantity named
/// by `units`; `value` is the quantity itself when it fits in an f64.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub schema: &'static str,
    pub label: String,
    pub bound: &'static str,
    pub case: Option<&'static str>,
    pub constants: EffectiveConstants,
    pub log_value: Option<f64>,
    pub value: Option<f64>,
    pub units: Units,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<(f64, f64)>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn scalar(
        field: &NumberField,
        bound: &'static str,
        case: Option<&'static str>,
        constants: &EffectiveConstants,
        log_value: f64,
        units: Units,
    ) -> Self {
        let v = log_value.exp();
        BoundReport {
            schema: "1",
            label: field.label.clone(),
            bound,
            case,
            constants: *constants,
            log_value: Some(log_value),
            value: v.is_finite().then_some(v),
            units,
            range: None,
            notes: Vec::new(),
        }
    }
}

fn log_abs_disc(field: &NumberField) -> f64 {
    (field.abs_discriminant()).ln()
}

fn require_degree_two(field: &NumberField) -> Result<()> {
    if field.degree < 2 {
        return Err(Error::DegreeOne);
    }
    Ok(())
}

/// ln(e^a + e^b)
fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Li(x) = integral from 2 to x of dt / log t.
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0 && x.is_finite()) {
        return Err(Error::Parameter(format!("Li(x) needs x >= 2, got {x}")));
    }
    // t = e^u removes the growth of the integrand
    Ok(integrate(|u: f64| u.exp() / u, 2f64.ln(), x.ln(), LI_TOL))
}

/// log of the threshold x beyond which [x, Ax] holds a prime ideal.
pub fn lo_threshold_log(field: &NumberField, constants: &EffectiveConstants, case: BoundCase) -> Result<f64> {
    require_degree_two(field)?;
    constants.validate()?;
    let d = field.degree as f64;
    let l = log_abs_disc(field);
    Ok(match case {
        BoundCase::Normal | BoundCase::Tower => constants.c_a * d * l * l,
        BoundCase::General { alpha } => {
            if !(0.0..=1.0).contains(&alpha) {
                return Err(Error::Parameter(format!("alpha = {alpha} must lie in [0, 1]")));
            }
            constants.c_a * d * d.ln().powf(2.0 - 2.0 * alpha) * l * l
        }
        BoundCase::Grh => {
            let t = l + d;
            constants.c_a.ln() + 2.0 * t.ln() + 4.0 * t.ln().ln()
        }
    })
}

pub fn lo_threshold(field: &NumberField, constants: &EffectiveConstants, case: BoundCase) -> Result<BoundReport> {
    let log_x = lo_threshold_log(field, constants, case)?;
    let mut r = BoundReport::scalar(field, "lo_threshold", Some(case.name()), constants, log_x, Units::XThreshold);
    if let BoundCase::General { alpha } = case {
        r.notes.push(format!("alpha = {alpha}"));
        r.notes.push("assumes log|disc| >> d (log d)^alpha; not verified".into());
    }
    Ok(r)
}

/// Natural log of e^{56d+5} (d+1)^{5(d+1)/2} |disc|^{1/(d+1)} (log|disc|)^d x^{(d-1)/(d+1)}.
///
/// Equals -inf for K = Q, where log|disc| = 0.
pub fn sunley_log_envelope(field: &NumberField, x: f64) -> f64 {
    let d = field.degree as f64;
    let l = log_abs_disc(field);
    56.0 * d + 5.0 + 2.5 * (d + 1.0) * (d + 1.0).ln() + l / (d + 1.0) + d * l.ln() + (d - 1.0) / (d + 1.0) * x.ln()
}

/// (log bound, bound); the bound is infinite when it overflows.
pub fn sunley_envelope(field: &NumberField, x: f64) -> Result<(f64, f64)> {
    if !(x >= 1.0) {
        return Err(Error::Parameter(format!("x = {x} must be at least 1")));
    }
    let log_b = sunley_log_envelope(field, x);
    Ok((log_b, log_b.exp()))
}

pub fn sunley_report(field: &NumberField, x: f64, constants: &EffectiveConstants) -> Result<BoundReport> {
    let (log_b, _) = sunley_envelope(field, x)?;
    let mut r = BoundReport::scalar(field, "sunley_envelope", None, constants, log_b, Units::ErrorTerm);
    if log_b == f64::NEG_INFINITY {
        r.log_value = None;
        r.value = Some(0.0);
        r.notes.push("log|disc| = 0: envelope degenerates to 0".into());
    }
    r.notes.push(format!("x = {x}"));
    Ok(r)
}

/// log A = kappa ((C_K / rho_K)(d + 2)/(1 - alpha) + d).
pub fn bigt_log_a(fit: &ErrorFit, field: &NumberField, kappa: f64) -> Result<f64> {
    if !(fit.alpha < 1.0) {
        return Err(Error::Parameter(format!("alpha = {} must be below 1", fit.alpha)));
    }
    if !(kappa > 0.0) {
        return Err(Error::Parameter(format!("kappa = {kappa} must be positive")));
    }
    let d = field.degree as f64;
    Ok(kappa * (fit.c_k / field.residue()? * (d + 2.0) / (1.0 - fit.alpha) + d))
}

pub fn bigt_report(fit: &ErrorFit, field: &NumberField, constants: &EffectiveConstants) -> Result<BoundReport> {
    let log_a = bigt_log_a(fit, field, constants.kappa)?;
    let mut r = BoundReport::scalar(field, "bigt_log_A", None, constants, log_a.ln(), Units::LogB);
    r.notes.push(format!("fit alpha = {}, C_K = {}", fit.alpha, fit.c_k));
    r.notes.push(format!("A = exp({log_a})"));
    Ok(r)
}

/// Natural log of the log-B_K bound
/// kappa (e^{(5/2)(d+5)log(d+1) + (56-log 2)d + 5} / h |disc|^{1/2+1/(d+1)} log^d|disc| + d).
pub fn sun_corollary_log(field: &NumberField, kappa: f64) -> Result<f64> {
    require_degree_two(field)?;
    if !(kappa > 0.0) {
        return Err(Error::Parameter(format!("kappa = {kappa} must be positive")));
    }
    let d = field.degree as f64;
    let l = log_abs_disc(field);
    let first = 2.5 * (d + 5.0) * (d + 1.0).ln() + (56.0 - 2f64.ln()) * d + 5.0 - (field.class_number as f64).ln()
        + (0.5 + 1.0 / (d + 1.0)) * l
        + d * l.ln();
    Ok(kappa.ln() + log_add(first, d.ln()))
}

pub fn sun_corollary(field: &NumberField, constants: &EffectiveConstants) -> Result<BoundReport> {
    let log_v = sun_corollary_log(field, constants.kappa)?;
    Ok(BoundReport::scalar(field, "sun_corollary", None, constants, log_v, Units::LogB))
}

/// Certified upper bound for zeta_K(sigma) used by [`maint_corollary_value`]:
/// the Euler-product or factored evaluation when available, otherwise zeta(sigma)^d.
pub fn zeta_upper(field: &NumberField, sigma: f64) -> Result<(f64, &'static str)> {
    match zeta_k(field, sigma, MAINT_ZETA_EPS) {
        Ok(z) => Ok((z.upper, "zeta_K certified")),
        Err(Error::TailUnreachable { .. }) => {
            let (z, err) = riemann_zeta(sigma);
            Ok(((z + err).powi(field.degree as i32), "zeta(sigma)^d majorant"))
        }
        Err(e) => Err(e),
    }
}

/// M (zeta_K(1 + delta/2) |disc|^delta / rho_K + |disc|^{1/2} / h_K), a bound on log B_K.
pub fn maint_corollary_value(field: &NumberField, constants: &EffectiveConstants) -> Result<(f64, &'static str)> {
    require_degree_two(field)?;
    constants.validate()?;
    let delta = constants.delta_for(field.degree)?;
    let (z, source) = zeta_upper(field, 1.0 + delta / 2.0)?;
    let disc = field.abs_discriminant();
    let v = constants.m * (z * disc.powf(delta) / field.residue()? + disc.sqrt() / field.class_number as f64);
    Ok((v, source))
}

pub fn maint_corollary(field: &NumberField, constants: &EffectiveConstants) -> Result<BoundReport> {
    let (v, source) = maint_corollary_value(field, constants)?;
    let mut r = BoundReport::scalar(field, "maint_corollary", None, constants, v.ln(), Units::LogB);
    r.notes.push(source.to_string());
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarkRange {
    pub lower: f64,
    pub upper: f64,
}

impl StarkRange {
    pub fn is_empty(&self) -> bool {
        self.upper < self.lower
    }
}

/// Admissible interval for an exceptional zero beta.
pub fn stark_range(field: &NumberField, constants: &EffectiveConstants, case: BoundCase) -> Result<StarkRange> {
    require_degree_two(field)?;
    constants.validate()?;
    let disc = field.abs_discriminant();
    if disc < 3.0 {
        return Err(Error::Parameter(format!("|disc| = {disc} must be at least 3")));
    }
    let l = disc.ln();
    let d = field.degree as f64;
    let upper = match case {
        BoundCase::Normal => 1.0 - constants.c4 * disc.powf(-1.0 / d),
        BoundCase::Tower => 1.0 - 1.0 / (16.0 * l),
        BoundCase::General { .. } => 1.0 - 1.0 / (4.0 * factorial(field.degree) * l),
        BoundCase::Grh => return Err(Error::Parameter("no exceptional-zero range under GRH".into())),
    };
    Ok(StarkRange { lower: 1.0 - 1.0 / (4.0 * l), upper })
}

pub fn stark_report(field: &NumberField, constants: &EffectiveConstants, case: BoundCase) -> Result<BoundReport> {
    let range = stark_range(field, constants, case)?;
    let mut notes = Vec::new();
    if range.is_empty() {
        notes.push("empty range: no admissible beta".to_string());
    }
    Ok(BoundReport {
        schema: "1",
        label: field.label.clone(),
        bound: "stark_range",
        case: Some(case.name()),
        constants: *constants,
        log_value: None,
        value: None,
        units: Units::Range,
        range: Some((range.lower, range.upper)),
        notes,
    })
}

/// 3 (|disc| (|1+eta+it| / 2 pi)^d)^{(sigma-eta)/2} |1+eta+it| / |eta-1+it| zeta_K(sigma).
pub fn rademacher_bound(field: &NumberField, sigma: f64, eta: f64, t: f64, zeta_sigma: f64) -> Result<f64> {
    if !(sigma > 1.0 && sigma <= 1.5) {
        return Err(Error::Parameter(format!("sigma = {sigma} must lie in (1, 3/2]")));
    }
    if !(eta > 1.0 - sigma && eta < sigma) {
        return Err(Error::Parameter(format!("eta = {eta} must lie in (1 - sigma, sigma)")));
    }
    if !(zeta_sigma > 0.0) || !t.is_finite() {
        return Err(Error::Parameter("zeta_K(sigma) must be positive and t finite".into()));
    }
    let d = field.degree as f64;
    let m_plus = (1.0 + eta).hypot(t);
    let m_minus = (eta - 1.0).hypot(t);
    let log_q = (field.abs_discriminant()).ln() + d * (m_plus / (2.0 * std::f64::consts::PI)).ln();
    Ok(3.0 * ((sigma - eta) / 2.0 * log_q).exp() * m_plus / m_minus * zeta_sigma)
}
