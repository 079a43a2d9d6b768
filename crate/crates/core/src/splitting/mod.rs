//! Decomposition of rational primes in O_K.
//!
//! Quadratic fields are handled exactly through the Kronecker symbol. For a
//! field given by a monic defining polynomial, the factorization of the
//! polynomial modulo p gives the splitting type at every p not dividing the
//! index [O_K : Z[theta]].

mod kronecker;
pub mod poly;

pub use kronecker::kronecker;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::arith::{is_prime, is_square, isqrt, prime_divisors};
use crate::error::{Error, Result};
use crate::field::{quadratic, NumberField};
use poly::{CandidateSource, Fp};

/// Default seed for equal-degree splitting.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Below this prime, equal-degree splitting enumerates trial polynomials
/// deterministically instead of drawing them at random.
pub const DETERMINISTIC_BELOW: u64 = 1000;

/// Splitting type of a rational prime: `(e_i, f_i)` for each prime ideal above p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingRecord {
    #[serde(rename = "p")]
    pub prime: u64,
    pub factors: Vec<(u32, u32)>,
}

impl SplittingRecord {
    fn new(prime: u64, mut factors: Vec<(u32, u32)>) -> Self {
        factors.sort_unstable();
        SplittingRecord { prime, factors }
    }

    /// sum e_i f_i
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(e, f)| e * f).sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.factors.iter().any(|&(e, _)| e > 1)
    }

    /// Residue degrees f_i, one per prime ideal.
    pub fn residue_degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(_, f)| f)
    }
}

/// Splitting of `p` in Q(sqrt(d)) for a fundamental discriminant `d`.
pub fn split_quadratic(d: i64, p: u64) -> Result<SplittingRecord> {
    quadratic::require_fundamental(d)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(split_quadratic_unchecked(d, p))
}

fn split_quadratic_unchecked(d: i64, p: u64) -> SplittingRecord {
    let factors = match kronecker(d, p) {
        1 => vec![(1, 1), (1, 1)],
        -1 => vec![(1, 2)],
        _ => vec![(2, 1)],
    };
    SplittingRecord { prime: p, factors }
}

/// Discriminant of a monic integer polynomial (lowest degree first).
pub fn poly_discriminant(poly: &[i64]) -> BigInt {
    let n = poly.len() - 1;
    if n == 0 {
        return BigInt::one();
    }
    let f: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
    let df: Vec<BigInt> = poly.iter().enumerate().skip(1).map(|(i, &c)| BigInt::from(c) * i).collect();
    let res = resultant(&f, &df);
    let sign_flip = (n * (n - 1) / 2) % 2 == 1;
    let lead = &f[n];
    let disc = res / lead;
    if sign_flip {
        -disc
    } else {
        disc
    }
}

/// Resultant via the Sylvester matrix and fraction-free (Bareiss) elimination.
fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut a = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients highest degree first
    for r in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            a[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            a[n + r][r + j] = c.clone();
        }
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[size - 1][size - 1]
}

/// Splitting of `p` from the factorization of `poly` mod p, without any
/// index check. Callers must know that p does not divide the index.
pub fn split_monogenic_trusted(poly: &[i64], p: u64, seed: u64) -> SplittingRecord {
    let fp = Fp::new(p);
    let f = fp.from_integers(poly);
    let factors = if p < DETERMINISTIC_BELOW {
        fp.factor(&f, &mut CandidateSource::Enumerate(0))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        fp.factor(&f, &mut CandidateSource::Random(&mut rng))
    };
    SplittingRecord::new(p, factors.into_iter().map(|(g, e)| (e, g.degree() as u32)).collect())
}

fn check_monic(poly: &[i64]) -> Result<()> {
    if poly.len() < 2 || poly.last() != Some(&1) {
        return Err(Error::Parameter("defining polynomial must be monic of degree >= 1".into()));
    }
    Ok(())
}

/// Splitting of `p` from the factorization of a monic `poly` modulo p.
/// Fails when p^2 divides disc(poly), since p may then divide the index.
pub fn split_monogenic(poly: &[i64], p: u64) -> Result<SplittingRecord> {
    split_monogenic_seeded(poly, p, DEFAULT_SEED)
}

pub fn split_monogenic_seeded(poly: &[i64], p: u64, seed: u64) -> Result<SplittingRecord> {
    check_monic(poly)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let disc = poly_discriminant(poly);
    if (&disc % BigInt::from(p as u128 * p as u128)).is_zero() {
        return Err(Error::IndexDivisibility { p });
    }
    Ok(split_monogenic_trusted(poly, p, seed))
}

#[derive(Debug, Clone)]
enum Source {
    Rational,
    Quadratic(i64),
    Polynomial { poly: Vec<i64>, unreliable: Vec<u64> },
}

/// Splitting data for every rational prime of a given field.
#[derive(Debug, Clone)]
pub struct FieldSplitter {
    label: String,
    degree: u32,
    source: Source,
    overrides: BTreeMap<u64, Vec<(u32, u32)>>,
    seed: u64,
}

impl FieldSplitter {
    pub fn new(field: &NumberField, seed: u64) -> Result<Self> {
        let source = if field.degree == 1 {
            Source::Rational
        } else if let Some(d) = field.quadratic_discriminant() {
            Source::Quadratic(d)
        } else if let Some(poly) = &field.polynomial {
            check_monic(poly)?;
            Source::Polynomial { poly: poly.clone(), unreliable: index_primes(poly, field.discriminant) }
        } else {
            return Err(Error::NoSplittingSource(field.label.clone()));
        };
        Ok(FieldSplitter {
            label: field.label.clone(),
            degree: field.degree,
            source,
            overrides: field.splitting.clone(),
            seed,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Primes at which the defining polynomial alone does not determine the
    /// splitting and no override was supplied.
    pub fn unresolved_primes(&self) -> Vec<u64> {
        match &self.source {
            Source::Polynomial { unreliable, .. } => {
                unreliable.iter().copied().filter(|p| !self.overrides.contains_key(p)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Splitting record at a prime `p` (primality is the caller's contract).
    pub fn split(&self, p: u64) -> Result<SplittingRecord> {
        if let Some(f) = self.overrides.get(&p) {
            return Ok(SplittingRecord::new(p, f.clone()));
        }
        Ok(match &self.source {
            Source::Rational => SplittingRecord { prime: p, factors: vec![(1, 1)] },
            Source::Quadratic(d) => split_quadratic_unchecked(*d, p),
            Source::Polynomial { poly, unreliable } => {
                if unreliable.contains(&p) {
                    return Err(Error::UnreliableSplitting { p, label: self.label.clone() });
                }
                split_monogenic_trusted(poly, p, self.seed)
            }
        })
    }
}

/// Primes that may divide [O_K : Z[theta]]. When disc(poly) / Delta_K is a
/// perfect square m^2 the index is m; otherwise fall back to every p with
/// p^2 | disc(poly).
fn index_primes(poly: &[i64], field_disc: i64) -> Vec<u64> {
    let disc = poly_discriminant(poly);
    let fd = BigInt::from(field_disc);
    if !fd.is_zero() && (&disc % &fd).is_zero() {
        if let Some(q) = (&disc / &fd).to_u64() {
            if is_square(q) {
                return prime_divisors(isqrt(q));
            }
        }
    }
    let abs = disc.abs();
    match abs.to_u64() {
        Some(n) => prime_divisors(n)
            .into_iter()
            .filter(|&p| (&abs % BigInt::from(p * p)).is_zero())
            .collect(),
        None => {
            // huge discriminant: trial-divide up to 10^6 and flag the rest as unknown
            let mut out = Vec::new();
            let mut rest = abs;
            let mut p = 2u64;
            while p < 1_000_000 {
                let bp = BigInt::from(p);
                let mut e = 0;
                while (&rest % &bp).is_zero() {
                    rest /= &bp;
                    e += 1;
                }
                if e >= 2 {
                    out.push(p);
                }
                p += 1;
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_examples() {
        assert_eq!(split_quadratic(-4, 5).unwrap().factors, vec![(1, 1), (1, 1)]);
        assert_eq!(split_quadratic(-4, 3).unwrap().factors, vec![(1, 2)]);
        assert_eq!(split_quadratic(-4, 2).unwrap().factors, vec![(2, 1)]);
        assert!(matches!(split_quadratic(-4, 9), Err(Error::NotPrime(9))));
        assert!(matches!(split_quadratic(-8 * 4, 3), Err(Error::NonFundamental(_))));
    }

    #[test]
    fn monogenic_examples() {
        assert_eq!(split_monogenic(&[1, 0, 1], 13).unwrap().factors, vec![(1, 1), (1, 1)]);
        assert_eq!(split_monogenic(&[-2, 0, 0, 1], 5).unwrap().factors, vec![(1, 1), (1, 2)]);
        // disc(x^2 + 1) = -4 is divisible by 2^2, so the checked entry point refuses p = 2
        assert!(matches!(split_monogenic(&[1, 0, 1], 2), Err(Error::IndexDivisibility { p: 2 })));
        assert_eq!(split_monogenic_trusted(&[1, 0, 1], 2, DEFAULT_SEED).factors, vec![(2, 1)]);
    }

    #[test]
    fn discriminants() {
        assert_eq!(poly_discriminant(&[1, 0, 1]), BigInt::from(-4));
        assert_eq!(poly_discriminant(&[-1, -1, 1]), BigInt::from(5));
        assert_eq!(poly_discriminant(&[-2, 0, 0, 1]), BigInt::from(-108));
        // x^3 + x + 1: -4 - 27 = -31
        assert_eq!(poly_discriminant(&[1, 1, 0, 1]), BigInt::from(-31));
        // x^4 + 1: 256
        assert_eq!(poly_discriminant(&[1, 0, 0, 0, 1]), BigInt::from(256));
    }

    #[test]
    fn sum_of_ef_is_degree_and_ramification_matches_discriminant() {
        let cubic = [-2i64, 0, 0, 1];
        let field = NumberField {
            label: "Q(2^(1/3))".into(),
            degree: 3,
            discriminant: -108,
            r1: 1,
            r2: 1,
            class_number: 1,
            regulator: 1.3473773483,
            roots_of_unity: 2,
            polynomial: Some(cubic.to_vec()),
            splitting: BTreeMap::new(),
        };
        let s = FieldSplitter::new(&field, DEFAULT_SEED).unwrap();
        assert!(s.unresolved_primes().is_empty(), "index of Z[2^(1/3)] is 1");
        for p in crate::primes::primes_up_to(3000) {
            let r = s.split(p).unwrap();
            assert_eq!(r.degree(), 3);
            assert_eq!(r.is_ramified(), 108 % p == 0, "p = {p}");
        }
        assert_eq!(s.split(2).unwrap().factors, vec![(3, 1)]);
        assert_eq!(s.split(3).unwrap().factors, vec![(3, 1)]);
    }

    #[test]
    fn non_monogenic_index_primes_need_overrides() {
        // x^2 - 5 has discriminant 20 = 4 * 5, index 2 in Z[(1+sqrt5)/2]
        let split = FieldSplitter {
            label: "x^2-5".into(),
            degree: 2,
            source: Source::Polynomial { poly: vec![-5, 0, 1], unreliable: index_primes(&[-5, 0, 1], 5) },
            overrides: BTreeMap::new(),
            seed: DEFAULT_SEED,
        };
        assert_eq!(split.unresolved_primes(), vec![2]);
        assert!(matches!(split.split(2), Err(Error::UnreliableSplitting { p: 2, .. })));
        assert_eq!(split.split(11).unwrap().factors, vec![(1, 1), (1, 1)]);
    }

    #[test]
    fn monogenic_agrees_with_quadratic_rule() {
        for d in [-4i64, -3, 5, -23, 13, -7, 8, 12, -20, 21] {
            let poly = quadratic::minimal_polynomial(d);
            for p in crate::primes::primes_up_to(10_000) {
                if (2 * d) % p as i64 == 0 {
                    continue;
                }
                assert_eq!(split_monogenic(&poly, p).unwrap(), split_quadratic(d, p).unwrap(), "D = {d}, p = {p}");
            }
        }
    }
}
