//! Invariants of quadratic fields computed from the discriminant: class numbers
//! from reduced binary quadratic forms and fundamental units from the
//! continued-fraction expansion of a reduced quadratic irrational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

use crate::arith::{gcd, is_squarefree, isqrt};
use crate::error::{Error, Result};

/// A binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    fn is_primitive(&self) -> bool {
        gcd(gcd(self.a.unsigned_abs(), self.b.unsigned_abs()), self.c.unsigned_abs()) == 1
    }
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

pub fn require_fundamental(d: i64) -> Result<()> {
    if is_fundamental_discriminant(d) {
        Ok(())
    } else {
        Err(Error::NonFundamental(d))
    }
}

/// Number of roots of unity in Q(sqrt(d)).
pub fn roots_of_unity(d: i64) -> u32 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// Monic minimal polynomial of the standard generator of the maximal order,
/// coefficients lowest degree first. Its discriminant is `d`.
pub fn minimal_polynomial(d: i64) -> Vec<i64> {
    if d.rem_euclid(4) == 1 {
        vec![(1 - d) / 4, -1, 1]
    } else {
        vec![-d / 4, 0, 1]
    }
}

/// Reduced primitive positive-definite forms of discriminant `d < 0`.
pub fn reduced_forms_imaginary(d: i64) -> Vec<Form> {
    assert!(d < 0);
    let mut out = Vec::new();
    let bound = isqrt((-d / 3) as u64) as i64;
    for a in 1..=bound {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            let f = Form { a, b, c };
            if f.is_primitive() {
                out.push(f);
            }
        }
    }
    out
}

fn is_reduced_indefinite(d: i64, a: i64, b: i64) -> bool {
    // |sqrt(d) - 2|a|| < b < sqrt(d), tested in integers.
    let two_a = 2 * a.abs();
    b > 0
        && b * b < d
        && (two_a + b) * (two_a + b) > d
        && (two_a - b < 0 || (two_a - b) * (two_a - b) < d)
}

/// Reduced primitive indefinite forms of discriminant `d > 0` (non-square).
pub fn reduced_forms_real(d: i64) -> Vec<Form> {
    assert!(d > 0);
    let s = isqrt(d as u64) as i64;
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - d).rem_euclid(2) != 0 || b * b >= d {
            continue;
        }
        let prod = (d - b * b) / 4; // = -a c > 0
        for a_abs in 1..=prod {
            if prod % a_abs != 0 || !is_reduced_indefinite(d, a_abs, b) {
                continue;
            }
            for a in [a_abs, -a_abs] {
                let f = Form { a, b, c: -prod / a };
                if f.is_primitive() {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// One step of the reduction operator on a reduced indefinite form.
fn rho(d: i64, f: Form) -> Form {
    let s = isqrt(d as u64) as i64;
    let m = 2 * f.c.abs();
    let b = s - (s + f.b).rem_euclid(m);
    Form { a: f.c, b, c: (b * b - d) / (4 * f.c) }
}

/// Narrow class number: the number of rho-cycles of reduced forms.
pub fn narrow_class_number_real(d: i64) -> u64 {
    let forms = reduced_forms_real(d);
    let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut seen = vec![false; forms.len()];
    let mut cycles = 0;
    for start in 0..forms.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let next = rho(d, forms[i]);
            i = *index.get(&next).expect("rho maps reduced forms to reduced forms");
        }
    }
    cycles
}

pub fn class_number_imaginary(d: i64) -> u64 {
    reduced_forms_imaginary(d).len() as u64
}

/// Fundamental unit `(t + u sqrt(d)) / 2` of the maximal order of Q(sqrt(d)).
#[derive(Debug, Clone)]
pub struct FundamentalUnit {
    pub t: BigInt,
    pub u: BigInt,
    /// Norm of the unit, +1 or -1.
    pub norm: i8,
    /// log of the unit.
    pub regulator: f64,
    pub period: usize,
}

/// Expands the reduced irrational `(b + sqrt(d)) / 2` (b the largest integer
/// below sqrt(d) with b = d mod 2) over one period. The product of the complete
/// quotients over the period is the fundamental unit.
pub fn fundamental_unit(d: i64) -> Result<FundamentalUnit> {
    require_fundamental(d)?;
    if d < 0 {
        return Err(Error::Parameter(format!("fundamental unit requested for imaginary discriminant {d}")));
    }
    let s = isqrt(d as u64) as i64;
    let p0 = if (s - d).rem_euclid(2) == 0 { s } else { s - 1 };
    let q0 = 2i64;
    let sqrt_d = (d as f64).sqrt();
    let big_d = BigInt::from(d);

    let (mut p, mut q) = (p0, q0);
    let (mut x, mut y, mut z) = (BigInt::one(), BigInt::zero(), BigInt::one());
    let mut log_sum = 0.0f64;
    let mut period = 0usize;
    loop {
        // multiply the running product by (p + sqrt d) / q
        let bp = BigInt::from(p);
        let nx = &x * &bp + &y * &big_d;
        let ny = &x + &y * &bp;
        let nz = &z * BigInt::from(q);
        let g = nx.gcd(&ny).gcd(&nz);
        x = nx / &g;
        y = ny / &g;
        z = nz / &g;
        log_sum += ((p as f64 + sqrt_d) / q as f64).ln();
        period += 1;

        let a = (p + s).div_euclid(q);
        let p_next = a * q - p;
        let q_next = (d - p_next * p_next) / q;
        p = p_next;
        q = q_next;
        if p == p0 && q == q0 {
            break;
        }
    }
    let two = BigInt::from(2);
    let tz = &x * &two;
    let uz = &y * &two;
    if !(&tz % &z).is_zero() || !(&uz % &z).is_zero() {
        return Err(Error::Parameter(format!("unit expansion for {d} did not land in the maximal order")));
    }
    let t = tz / &z;
    let u = uz / &z;
    let n4 = &t * &t - &big_d * &u * &u;
    let norm = if n4 == BigInt::from(4) {
        1
    } else if n4 == BigInt::from(-4) {
        -1
    } else {
        return Err(Error::Parameter(format!("unit equation failed for {d}: t^2 - d u^2 = {n4}")));
    };
    debug_assert!(t.is_positive() && u.is_positive());
    Ok(FundamentalUnit { t, u, norm, regulator: log_sum, period })
}

pub fn class_number_real(d: i64) -> Result<u64> {
    let unit = fundamental_unit(d)?;
    let narrow = narrow_class_number_real(d);
    Ok(if unit.norm == -1 { narrow } else { narrow / 2 })
}
