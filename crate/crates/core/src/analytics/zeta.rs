//! Certified evaluation of zeta_K(sigma) for real sigma > 1.
//!
//! The general route is the truncated Euler product over p <= P with the
//! tail bounded through zeta(sigma)^d. Close to sigma = 1 that bound needs an
//! astronomically large P; for Q and quadratic fields the factorization
//! zeta_K = zeta * L(., chi_D) with Hurwitz-zeta evaluation is used instead.

use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::primes::for_each_prime;
use crate::splitting::{kronecker, FieldSplitter, DEFAULT_SEED};

/// B_2, B_4, ..., B_18
const BERNOULLI: [f64; 9] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
];

const EM_TERMS: usize = 8;
const EM_SHIFT: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZetaMethod {
    /// Euler product over primes up to the given bound.
    EulerProduct { prime_bound: u64 },
    /// zeta(sigma) * L(sigma, chi_D) through Hurwitz zeta values.
    Factored,
}

/// A value with a certified enclosure `lower <= zeta_K(sigma) <= upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub method: ZetaMethod,
}

impl ZetaValue {
    pub fn rel_error(&self) -> f64 {
        (self.upper - self.value).max(self.value - self.lower) / self.value
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

#[derive(Debug, Clone)]
pub struct ZetaOptions {
    /// Largest prime the Euler product may run to.
    pub prime_cap: u64,
    pub seed: u64,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        ZetaOptions { prime_cap: 100_000_000, seed: DEFAULT_SEED }
    }
}

/// Hurwitz zeta(s, a) for real s > 1, a > 0 by Euler-Maclaurin summation.
/// Returns the value and an absolute error bound.
pub fn hurwitz_zeta(s: f64, a: f64) -> (f64, f64) {
    assert!(s > 1.0 && a > 0.0);
    let mut head = 0.0;
    let mut abs_sum = 0.0;
    for n in 0..EM_SHIFT {
        let t = (n as f64 + a).powf(-s);
        head += t;
        abs_sum += t;
    }
    let w = EM_SHIFT as f64 + a;
    let mut tail = w.powf(1.0 - s) / (s - 1.0) + 0.5 * w.powf(-s);
    abs_sum += tail.abs();
    // rising factorial s (s+1) ... (s+2k-2) and (2k)!
    let mut rising = s;
    let mut fact = 2.0;
    let mut wpow = w.powf(-s - 1.0);
    for (k, b) in BERNOULLI.iter().enumerate().take(EM_TERMS) {
        let term = b / fact * rising * wpow;
        tail += term;
        abs_sum += term.abs();
        let j = 2.0 * (k as f64 + 1.0);
        rising *= (s + j - 1.0) * (s + j);
        fact *= (j + 1.0) * (j + 2.0);
        wpow /= w * w;
    }
    let remainder = (BERNOULLI[EM_TERMS] / fact * rising * wpow).abs();
    let value = head + tail;
    (value, 2.0 * remainder + 4.0 * f64::EPSILON * abs_sum)
}

/// Riemann zeta(s) for real s > 1 with an absolute error bound.
pub fn riemann_zeta(s: f64) -> (f64, f64) {
    hurwitz_zeta(s, 1.0)
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 1.0 && sigma.is_finite()) {
        return Err(Error::Parameter(format!("sigma = {sigma} must exceed 1")));
    }
    Ok(())
}

/// zeta_K(sigma) via zeta(sigma) L(sigma, chi_D), for K = Q or quadratic K.
pub fn zeta_factored(field: &NumberField, sigma: f64) -> Result<ZetaValue> {
    check_sigma(sigma)?;
    let (z, z_err) = riemann_zeta(sigma);
    let (value, err) = if field.degree == 1 {
        (z, z_err)
    } else if let Some(d) = field.quadratic_discriminant() {
        let m = d.unsigned_abs();
        let scale = (m as f64).powf(-sigma);
        let mut l = 0.0;
        let mut l_err = 0.0;
        let mut abs_sum = 0.0;
        for r in 1..m {
            let chi = kronecker(d, r);
            if chi == 0 {
                continue;
            }
            let (h, e) = hurwitz_zeta(sigma, r as f64 / m as f64);
            l += chi as f64 * h;
            l_err += e;
            abs_sum += h;
        }
        l *= scale;
        l_err = (l_err + 4.0 * f64::EPSILON * m as f64 * abs_sum) * scale;
        (z * l, z_err * l.abs() + l_err * z + z_err * l_err)
    } else {
        return Err(Error::Parameter(format!(
            "factored zeta evaluation needs a quadratic or rational field, {} has degree {}",
            field.label, field.degree
        )));
    };
    Ok(ZetaValue { value, lower: value - err, upper: value + err, method: ZetaMethod::Factored })
}

/// Upper bound for sum_{p > P} sum_{p | p} -log(1 - N(p)^-sigma).
fn euler_tail(degree: u32, sigma: f64, p: f64) -> f64 {
    degree as f64 * p.powf(1.0 - sigma) / ((sigma - 1.0) * (1.0 - p.powf(-sigma)))
}

/// Truncated Euler product with a prime bound chosen so that the certified
/// relative tail error is below `tail_eps`.
pub fn zeta_euler(splitter: &FieldSplitter, sigma: f64, tail_eps: f64, prime_cap: u64) -> Result<ZetaValue> {
    check_sigma(sigma)?;
    if !(tail_eps > 0.0) {
        return Err(Error::Parameter(format!("tail_eps = {tail_eps} must be positive")));
    }
    let d = splitter.degree();
    // headroom for the rounding term
    let target = 0.9 * tail_eps.ln_1p();
    let guess = (d as f64 / ((sigma - 1.0) * target)).powf(1.0 / (sigma - 1.0));
    if !(guess.is_finite() && guess <= prime_cap as f64) {
        return Err(Error::TailUnreachable {
            target: tail_eps,
            achieved: euler_tail(d, sigma, prime_cap as f64).exp_m1(),
            cap: prime_cap,
        });
    }
    let mut bound = guess.ceil().max(2.0) as u64;
    while euler_tail(d, sigma, bound as f64) >= target {
        bound += bound / 100 + 1;
    }
    if bound > prime_cap {
        return Err(Error::TailUnreachable {
            target: tail_eps,
            achieved: euler_tail(d, sigma, prime_cap as f64).exp_m1(),
            cap: prime_cap,
        });
    }

    let mut log_sum = 0.0f64;
    let mut terms = 0u64;
    let mut failure = None;
    for_each_prime(bound, |p| {
        if failure.is_some() {
            return;
        }
        match splitter.split(p) {
            Ok(rec) => {
                for f in rec.residue_degrees() {
                    let y = (p as f64).powf(-sigma * f as f64);
                    log_sum -= (-y).ln_1p();
                    terms += 1;
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let rounding = 2.0 * terms as f64 * f64::EPSILON * (log_sum + 1.0);
    let tail = euler_tail(d, sigma, bound as f64);
    Ok(ZetaValue {
        value: log_sum.exp(),
        lower: (log_sum - rounding).exp(),
        upper: (log_sum + tail + rounding).exp(),
        method: ZetaMethod::EulerProduct { prime_bound: bound },
    })
}

pub fn zeta_k(field: &NumberField, sigma: f64, tail_eps: f64) -> Result<ZetaValue> {
    zeta_k_with(field, sigma, tail_eps, &ZetaOptions::default())
}

/// Euler product when the tail target is reachable under the prime cap,
/// otherwise the factored evaluation for rational and quadratic fields.
pub fn zeta_k_with(field: &NumberField, sigma: f64, tail_eps: f64, opts: &ZetaOptions) -> Result<ZetaValue> {
    let splitter = FieldSplitter::new(field, opts.seed)?;
    match zeta_euler(&splitter, sigma, tail_eps, opts.prime_cap) {
        Err(Error::TailUnreachable { .. }) if field.degree == 1 || field.quadratic_discriminant().is_some() => {
            zeta_factored(field, sigma)
        }
        other => other,
    }
}
