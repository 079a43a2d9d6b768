//! Prime-ideal and ideal-count statistics read off a [`CoefficientTable`].
//!
//! All partial sums use floor semantics: a sum over `n <= x` at real `x`
//! includes exactly the integers `n <= floor(x)`.

mod fit;
mod zeta;

pub use fit::{fit_envelope, envelope_grid, ErrorFit, GridPoint};
pub use zeta::{
    hurwitz_zeta, riemann_zeta, zeta_euler, zeta_factored, zeta_k, zeta_k_with, ZetaMethod, ZetaOptions, ZetaValue,
};

use crate::error::Result;
use crate::field::NumberField;
use crate::primes::for_each_prime;
use crate::sieve::CoefficientTable;

/// Number of prime ideals of norm at most x.
pub fn pi_k(table: &CoefficientTable, x: f64) -> Result<u64> {
    let n = table.check_range(x)?;
    Ok(table.prime_norm_count(n) as u64)
}

/// psi_K(x) = sum_{n <= x} Lambda_K^#(n).
pub fn psi_k(table: &CoefficientTable, x: f64) -> Result<f64> {
    let n = table.check_range(x)?;
    Ok(table.psi_floor(n))
}

/// f_1(x) = sum_{n <= x} c_K(n) - rho_K x.
pub fn f1(table: &CoefficientTable, field: &NumberField, x: f64) -> Result<f64> {
    let rho = field.residue()?;
    let n = table.check_range(x)?;
    Ok(table.prefix_count(n) as f64 - rho * x)
}

/// f_2(x) = sum_{n <= x} c_K(n) log n - rho_K (x log x - x + 1).
pub fn f2(table: &CoefficientTable, field: &NumberField, x: f64) -> Result<f64> {
    let rho = field.residue()?;
    let n = table.check_range(x)?;
    Ok(table.log_weighted(n) - rho * (x * x.ln() - x + 1.0))
}

/// sum over prime ideals of norm q <= x of log q / q.
pub fn mertens_sum(table: &CoefficientTable, x: f64) -> Result<f64> {
    let n = table.check_range(x)?;
    Ok(table.mertens_floor(n))
}

/// phi(x) = sum_{n <= x} Lambda_K^#(n)/n - mertens_sum(x): the contribution
/// of prime-ideal powers with exponent at least two.
pub fn phi_defect(table: &CoefficientTable, x: f64) -> Result<f64> {
    let n = table.check_range(x)?;
    Ok(table.mangoldt_over_n_floor(n) - table.mertens_floor(n))
}

/// d * sum_{p <= x} log p / (p^2 - p), the explicit bound on |phi(x)|.
pub fn phi_bound(degree: u32, x: f64) -> f64 {
    let mut s = 0.0;
    for_each_prime(x.floor().max(0.0) as u64, |p| {
        let pf = p as f64;
        s += pf.ln() / (pf * pf - pf);
    });
    degree as f64 * s
}

/// sum_{n <= x} Lambda_K^#(n) / n^alpha.
pub fn mangoldt_weighted_sum(table: &CoefficientTable, x: f64, alpha: f64) -> Result<f64> {
    let n = table.check_range(x)?;
    Ok(table
        .mangoldt_entries()
        .iter()
        .take_while(|&&(m, _)| m <= n)
        .map(|&(m, v)| v / (m as f64).powf(alpha))
        .sum())
}

/// Both sides of the identity
/// sum_{n<=x} c_K(n) log n = sum_{n<=x} Lambda_K^#(n) sum_{m <= x/n} c_K(m).
pub fn hyperbola_sides(table: &CoefficientTable, x: f64) -> Result<(f64, f64)> {
    let n = table.check_range(x)?;
    let lhs = table.log_weighted(n);
    let rhs = table
        .mangoldt_entries()
        .iter()
        .take_while(|&&(m, _)| m <= n)
        .map(|&(m, v)| v * table.prefix_count(n / m) as f64)
        .sum();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::build_table;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn prime_counts() {
        let gi = build_table(&NumberField::quadratic(-4).unwrap(), 100).unwrap();
        let q = build_table(&NumberField::rational(), 100).unwrap();
        assert_eq!(pi_k(&gi, 10.0).unwrap(), 4);
        assert_eq!(pi_k(&gi, 8.0).unwrap(), 3);
        assert_eq!(pi_k(&q, 10.0).unwrap(), 4);
        assert_eq!(pi_k(&gi, 1.5).unwrap(), 0);
        assert!(pi_k(&gi, 0.9).is_err());
    }

    #[test]
    fn chebyshev_sums() {
        let gi = build_table(&NumberField::quadratic(-4).unwrap(), 100).unwrap();
        let q = build_table(&NumberField::rational(), 100).unwrap();
        let expect = 3.0 * 2f64.ln() + 2.0 * 5f64.ln() + 9f64.ln();
        assert!(close(psi_k(&gi, 10.0).unwrap(), expect, 1e-14));
        assert!((expect - 7.49554).abs() < 1e-5);
        assert!(close(psi_k(&q, 10.0).unwrap(), 2520f64.ln(), 1e-14));
        assert_eq!(psi_k(&gi, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn error_terms() {
        let gik = NumberField::quadratic(-4).unwrap();
        let gi = build_table(&gik, 100).unwrap();
        let qk = NumberField::rational();
        let q = build_table(&qk, 100).unwrap();
        assert!(close(f1(&gi, &gik, 10.0).unwrap(), 9.0 - 10.0 * PI / 4.0, 1e-14));
        assert!((f1(&gi, &gik, 10.0).unwrap() - 1.14602).abs() < 1e-5);
        assert_eq!(f1(&q, &qk, 10.0).unwrap(), 0.0);
        assert!(close(f1(&gi, &gik, 1.0).unwrap(), 1.0 - PI / 4.0, 1e-14));

        assert_eq!(f2(&gi, &gik, 1.0).unwrap(), 0.0);
        let coeffs = [1.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 1.0, 1.0, 2.0];
        let s: f64 = coeffs.iter().enumerate().map(|(i, c)| c * ((i + 1) as f64).ln()).sum();
        let expect = s - PI / 4.0 * (10.0 * 10f64.ln() - 9.0);
        assert!(close(f2(&gi, &gik, 10.0).unwrap(), expect, 1e-13));
        let expect_q = 2f64.ln() + 3f64.ln() - (3.0 * 3f64.ln() - 2.0);
        assert!(close(f2(&q, &qk, 3.0).unwrap(), expect_q, 1e-14));
        assert!((expect_q - 0.4961).abs() < 5e-4);
    }

    #[test]
    fn mertens_and_phi() {
        let gi = build_table(&NumberField::quadratic(-4).unwrap(), 100).unwrap();
        let q = build_table(&NumberField::rational(), 100).unwrap();
        let expect = 2f64.ln() / 2.0 + 2.0 * 5f64.ln() / 5.0 + 9f64.ln() / 9.0;
        assert!(close(mertens_sum(&gi, 9.0).unwrap(), expect, 1e-14));
        assert!((expect - 1.23453).abs() < 1e-4);
        assert!(close(mertens_sum(&q, 3.0).unwrap(), 2f64.ln() / 2.0 + 3f64.ln() / 3.0, 1e-14));
        assert_eq!(mertens_sum(&gi, 1.9).unwrap(), 0.0);
        assert!(close(mertens_sum(&q, 2.0).unwrap(), 2f64.ln() / 2.0, 1e-15));

        assert!(phi_defect(&gi, 3.0).unwrap().abs() < 1e-15);
        assert!(close(phi_defect(&gi, 4.0).unwrap(), 2f64.ln() / 4.0, 1e-14));
        assert_eq!(phi_defect(&gi, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn hyperbola_identity_small() {
        let k = NumberField::quadratic(-23).unwrap();
        let t = build_table(&k, 5000).unwrap();
        for x in [1.0, 2.0, 17.5, 100.0, 4999.9] {
            let (l, r) = hyperbola_sides(&t, x).unwrap();
            assert!(close(l, r, 1e-12), "{x}: {l} vs {r}");
        }
    }
}
