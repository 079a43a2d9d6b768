//! Dense univariate polynomials over a prime field and their factorization
//! (square-free decomposition, distinct-degree factorization, equal-degree
//! splitting).

use rand::{Rng, RngCore};

use crate::arith::{mul_mod, pow_mod};

/// Coefficients lowest degree first, no trailing zeros. The zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly(pub Vec<u64>);

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly(Vec::new())
    }

    pub fn one() -> Self {
        FpPoly(vec![1])
    }

    pub fn x() -> Self {
        FpPoly(vec![0, 1])
    }

    fn normalized(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// Degree; zero for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }
}

/// Arithmetic in F_p[x].
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn from_integers(&self, coeffs: &[i64]) -> FpPoly {
        FpPoly::normalized(coeffs.iter().map(|&c| c.rem_euclid(self.p as i64) as u64).collect())
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.0.len().max(b.0.len());
        let c = (0..n)
            .map(|i| {
                let s = a.0.get(i).copied().unwrap_or(0) + b.0.get(i).copied().unwrap_or(0);
                if s >= self.p { s - self.p } else { s }
            })
            .collect();
        FpPoly::normalized(c)
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.0.len().max(b.0.len());
        let c = (0..n)
            .map(|i| {
                let x = a.0.get(i).copied().unwrap_or(0);
                let y = b.0.get(i).copied().unwrap_or(0);
                if x >= y { x - y } else { x + self.p - y }
            })
            .collect();
        FpPoly::normalized(c)
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_zero() || b.is_zero() {
            return FpPoly::zero();
        }
        let mut c = vec![0u64; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(x, y, self.p)) % self.p;
            }
        }
        FpPoly::normalized(c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        if a.0.len() < b.0.len() {
            return (FpPoly::zero(), a.clone());
        }
        let inv_lead = self.inv(b.leading());
        let mut r = a.0.clone();
        let db = b.0.len() - 1;
        let mut q = vec![0u64; a.0.len() - db];
        for k in (0..q.len()).rev() {
            let coef = mul_mod(r[k + db], inv_lead, self.p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                let t = mul_mod(coef, bj, self.p);
                r[k + j] = if r[k + j] >= t { r[k + j] - t } else { r[k + j] + self.p - t };
            }
        }
        r.truncate(db);
        (FpPoly::normalized(q), FpPoly::normalized(r))
    }

    pub fn rem(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.divrem(a, b).1
    }

    pub fn div_exact(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_zero());
        q
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        if a.is_zero() {
            return a.clone();
        }
        let inv = self.inv(a.leading());
        FpPoly(a.0.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, a: &FpPoly) -> FpPoly {
        let c = a.0.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p)).collect();
        FpPoly::normalized(c)
    }

    pub fn mulmod(&self, a: &FpPoly, b: &FpPoly, m: &FpPoly) -> FpPoly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, base: &FpPoly, mut exp: u64, m: &FpPoly) -> FpPoly {
        let mut acc = self.rem(&FpPoly::one(), m);
        let mut b = self.rem(base, m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mulmod(&acc, &b, m);
            }
            b = self.mulmod(&b, &b, m);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, a: &FpPoly, x: u64) -> u64 {
        a.0.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Square-free decomposition of a monic polynomial: pairs (g, m) with g
    /// square-free, pairwise coprime and f = prod g^m.
    pub fn squarefree_decomposition(&self, f: &FpPoly) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        if f.degree() == 0 {
            return out;
        }
        let df = self.derivative(f);
        if df.is_zero() {
            for (g, m) in self.squarefree_decomposition(&self.pth_root(f)) {
                out.push((g, m * self.p as u32));
            }
            return out;
        }
        let mut c = self.gcd(f, &df);
        let mut w = self.div_exact(f, &c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let z = self.div_exact(&w, &y);
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            c = self.div_exact(&c, &y);
            w = y;
        }
        if !c.is_one() {
            for (g, m) in self.squarefree_decomposition(&self.pth_root(&c)) {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    /// For f with f' = 0, the polynomial g with g^p = f.
    fn pth_root(&self, f: &FpPoly) -> FpPoly {
        let p = self.p as usize;
        FpPoly::normalized(f.0.iter().step_by(p).copied().collect())
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs (g, d) where g is the product of all irreducible factors of degree d.
    pub fn distinct_degree(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x = FpPoly::x();
        let mut h = self.rem(&x, &f);
        let mut d = 1;
        while f.degree() >= 2 * d {
            h = self.powmod(&h, self.p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if !g.is_one() {
                f = self.div_exact(&f, &g);
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.degree() > 0 {
            let deg = f.degree();
            out.push((f, deg));
        }
        out
    }

    /// Splits a monic square-free product of irreducibles of common degree `d`.
    pub fn equal_degree(&self, g: &FpPoly, d: usize, candidates: &mut CandidateSource) -> Vec<FpPoly> {
        if g.degree() == d {
            return vec![g.clone()];
        }
        loop {
            let a = candidates.next(self, g.degree());
            if a.degree() == 0 {
                continue;
            }
            let b = if self.p == 2 {
                // absolute trace a + a^2 + ... + a^(2^(d-1))
                let mut t = self.rem(&a, g);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = self.mulmod(&t, &t, g);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
                let mut frob = self.rem(&a, g);
                let mut norm = frob.clone();
                for _ in 1..d {
                    frob = self.powmod(&frob, self.p, g);
                    norm = self.mulmod(&norm, &frob, g);
                }
                let e = self.powmod(&norm, (self.p - 1) / 2, g);
                self.sub(&e, &FpPoly::one())
            };
            let h = self.gcd(&b, g);
            if h.degree() > 0 && h.degree() < g.degree() {
                let other = self.div_exact(g, &h);
                let mut out = self.equal_degree(&h, d, candidates);
                out.extend(self.equal_degree(&other, d, candidates));
                return out;
            }
        }
    }

    /// Full factorization of a monic polynomial into monic irreducibles with
    /// multiplicities, sorted by (degree, coefficients).
    pub fn factor(&self, f: &FpPoly, candidates: &mut CandidateSource) -> Vec<(FpPoly, u32)> {
        let f = self.monic(f);
        let mut out = Vec::new();
        for (sqf, mult) in self.squarefree_decomposition(&f) {
            for (part, d) in self.distinct_degree(&sqf) {
                for g in self.equal_degree(&part, d, candidates) {
                    out.push((g, mult));
                }
            }
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
        out
    }
}

/// Supplies trial polynomials to equal-degree splitting: an exhaustive
/// enumeration for small primes, a seeded generator otherwise.
pub enum CandidateSource<'a> {
    Enumerate(u64),
    Random(&'a mut dyn RngCore),
}

impl CandidateSource<'_> {
    fn next(&mut self, fp: &Fp, below_degree: usize) -> FpPoly {
        match self {
            CandidateSource::Enumerate(counter) => {
                *counter += 1;
                let mut j = *counter;
                let mut c = Vec::new();
                while j > 0 && c.len() < below_degree {
                    c.push(j % fp.p);
                    j /= fp.p;
                }
                FpPoly::normalized(c)
            }
            CandidateSource::Random(rng) => {
                let c = (0..below_degree).map(|_| rng.gen_range(0..fp.p)).collect();
                FpPoly::normalized(c)
            }
        }
    }
}
