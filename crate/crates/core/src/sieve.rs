//! Tables of Dedekind-zeta coefficients c_K(n), the norm-aggregated von
//! Mangoldt function and the sorted list of prime-ideal norms up to a bound X.
//!
//! Construction: enumerate primes p <= X with a segmented sieve, obtain the
//! splitting type of each p, count ideals of norm p^k above p by a small
//! knapsack over the residue degrees, and multiply these local factors into
//! every n <= X according to the exact power of p dividing n.

use rayon::prelude::*;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::primes::primes_up_to;
use crate::splitting::{FieldSplitter, SplittingRecord, DEFAULT_SEED};

/// Default cap on the table limit X (entries per array).
pub const DEFAULT_MEMORY_CAP: u64 = 1 << 28;

const PRIME_BLOCK: usize = 1 << 14;

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub memory_cap: u64,
    /// Size of the worker pool; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { memory_cap: DEFAULT_MEMORY_CAP, workers: None, seed: DEFAULT_SEED }
    }
}

/// c_K(n), Lambda_K^#(n) and prime-ideal norms for 1 <= n <= X.
#[derive(Debug)]
pub struct CoefficientTable {
    label: String,
    degree: u32,
    limit: u64,
    /// index n holds c_K(n); index 0 is unused
    coefficients: Vec<u32>,
    /// index n holds sum_{m <= n} c_K(m)
    prefix: Vec<u64>,
    /// nonzero values of Lambda_K^#, sorted by n (always a prime power)
    mangoldt: Vec<(u64, f64)>,
    /// psi_prefix[i] = sum of the first i mangoldt values
    psi_prefix: Vec<f64>,
    prime_norms: Vec<u64>,
    /// mertens_prefix[i] = sum of log q / q over the first i prime norms
    mertens_prefix: Vec<f64>,
    /// mangoldt_over_n_prefix[i] = sum of Lambda/n over the first i mangoldt entries
    mangoldt_over_n_prefix: Vec<f64>,
    log_prefix: OnceLock<Vec<f64>>,
}

/// Number of ideals of norm p^k above p: #{a >= 0 : sum f_i a_i = k}.
pub fn local_coefficient(factors: &[(u32, u32)], k: u32) -> u64 {
    local_coefficients(factors, k)[k as usize]
}

/// Local coefficients for 0..=k_max in one pass.
pub fn local_coefficients(factors: &[(u32, u32)], k_max: u32) -> Vec<u64> {
    let k_max = k_max as usize;
    let mut ways = vec![0u64; k_max + 1];
    ways[0] = 1;
    for &(_, f) in factors {
        let f = f as usize;
        for j in f..=k_max {
            ways[j] += ways[j - f];
        }
    }
    ways
}

/// Largest k with p^k <= limit.
fn max_power(p: u64, limit: u64) -> u32 {
    let mut k = 0;
    let mut q = 1u64;
    while let Some(next) = q.checked_mul(p) {
        if next > limit {
            break;
        }
        q = next;
        k += 1;
    }
    k
}

pub fn build_table(field: &NumberField, limit: u64) -> Result<CoefficientTable> {
    build_table_with(field, limit, &BuildOptions::default())
}

pub fn build_table_with(field: &NumberField, limit: u64, opts: &BuildOptions) -> Result<CoefficientTable> {
    if limit == 0 {
        return Err(Error::Parameter("table limit must be at least 1".into()));
    }
    if limit > opts.memory_cap {
        return Err(Error::MemoryBudget { requested: limit, cap: opts.memory_cap });
    }
    let splitter = FieldSplitter::new(field, opts.seed)?;
    if let Some(&p) = splitter.unresolved_primes().iter().find(|&&p| p <= limit) {
        return Err(Error::UnreliableSplitting { p, label: field.label.clone() });
    }
    match opts.workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Parameter(format!("worker pool: {e}")))?;
            pool.install(|| build_inner(field, &splitter, limit))
        }
        None => build_inner(field, &splitter, limit),
    }
}

fn build_inner(field: &NumberField, splitter: &FieldSplitter, limit: u64) -> Result<CoefficientTable> {
    let n = limit as usize;
    let mut coefficients = vec![1u32; n + 1];
    coefficients[0] = 0;
    let mut mangoldt = Vec::new();
    let mut prime_norms = Vec::new();

    let primes = primes_up_to(limit);
    for block in primes.chunks(PRIME_BLOCK) {
        let records: Vec<SplittingRecord> =
            block.par_iter().map(|&p| splitter.split(p)).collect::<Result<_>>()?;
        for rec in &records {
            debug_assert_eq!(rec.degree(), field.degree);
            apply_prime(rec, limit, &mut coefficients, &mut mangoldt, &mut prime_norms)?;
        }
    }
    prime_norms.sort_unstable();
    mangoldt.sort_unstable_by_key(|&(m, _)| m);
    Ok(CoefficientTable::assemble(field.label.clone(), field.degree, limit, coefficients, mangoldt, prime_norms))
}

fn apply_prime(
    rec: &SplittingRecord,
    limit: u64,
    coefficients: &mut [u32],
    mangoldt: &mut Vec<(u64, f64)>,
    prime_norms: &mut Vec<u64>,
) -> Result<()> {
    let p = rec.prime;
    let k_max = max_power(p, limit);
    let local = local_coefficients(&rec.factors, k_max);
    let log_p = (p as f64).ln();

    for f in rec.residue_degrees() {
        if f <= k_max {
            prime_norms.push(p.pow(f));
        }
    }
    let mut pk = 1u64;
    for k in 1..=k_max {
        pk *= p;
        let weight: u32 = rec.residue_degrees().filter(|f| k % f == 0).sum();
        if weight > 0 {
            mangoldt.push((pk, weight as f64 * log_p));
        }
    }

    if local.iter().all(|&v| v == 1) {
        return Ok(());
    }
    let local: Vec<u32> = local
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::Overflow(p)))
        .collect::<Result<_>>()?;
    let step = p as usize;
    let mut m = step;
    while m < coefficients.len() {
        let mut q = m / step;
        let mut v = 1usize;
        while q % step == 0 {
            q /= step;
            v += 1;
        }
        let c = &mut coefficients[m];
        *c = c.checked_mul(local[v]).ok_or(Error::Overflow(m as u64))?;
        m += step;
    }
    Ok(())
}

fn running_sum(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out = vec![0.0];
    let mut acc = 0.0;
    for v in values {
        acc += v;
        out.push(acc);
    }
    out
}

impl CoefficientTable {
    pub(crate) fn assemble(
        label: String,
        degree: u32,
        limit: u64,
        coefficients: Vec<u32>,
        mangoldt: Vec<(u64, f64)>,
        prime_norms: Vec<u64>,
    ) -> Self {
        let mut prefix = Vec::with_capacity(coefficients.len());
        let mut acc = 0u64;
        for &c in &coefficients {
            acc += c as u64;
            prefix.push(acc);
        }
        let psi_prefix = running_sum(mangoldt.iter().map(|&(_, v)| v));
        let mertens_prefix = running_sum(prime_norms.iter().map(|&q| (q as f64).ln() / q as f64));
        let mangoldt_over_n_prefix = running_sum(mangoldt.iter().map(|&(n, v)| v / n as f64));
        CoefficientTable {
            label,
            degree,
            limit,
            coefficients,
            prefix,
            mangoldt,
            psi_prefix,
            prime_norms,
            mertens_prefix,
            mangoldt_over_n_prefix,
            log_prefix: OnceLock::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// c_K(n) for 1 <= n <= X.
    pub fn coefficient(&self, n: u64) -> u32 {
        self.coefficients[n as usize]
    }

    /// c_K(1..=X), index 0 unused.
    pub fn coefficients(&self) -> &[u32] {
        &self.coefficients
    }

    /// Lambda_K^#(n); zero unless n is a prime power.
    pub fn mangoldt(&self, n: u64) -> f64 {
        match self.mangoldt.binary_search_by_key(&n, |&(m, _)| m) {
            Ok(i) => self.mangoldt[i].1,
            Err(_) => 0.0,
        }
    }

    /// Nonzero entries (n, Lambda_K^#(n)) in increasing n.
    pub fn mangoldt_entries(&self) -> &[(u64, f64)] {
        &self.mangoldt
    }

    /// Norms of prime ideals, sorted, one entry per prime ideal.
    pub fn prime_norms(&self) -> &[u64] {
        &self.prime_norms
    }

    pub(crate) fn check_range(&self, x: f64) -> Result<u64> {
        if !(x >= 1.0 && x <= self.limit as f64) {
            return Err(Error::OutOfRange { x, lo: 1.0, hi: self.limit as f64 });
        }
        Ok(x.floor() as u64)
    }

    /// sum_{n <= n_max} c_K(n) for an integer bound within the table.
    pub fn prefix_count(&self, n_max: u64) -> u64 {
        self.prefix[n_max as usize]
    }

    /// Number of ideals of norm at most x.
    pub fn count_ideals(&self, x: f64) -> Result<u64> {
        Ok(self.prefix_count(self.check_range(x)?))
    }

    /// sum_{n <= n_max} Lambda_K^#(n).
    pub(crate) fn psi_floor(&self, n_max: u64) -> f64 {
        let i = self.mangoldt.partition_point(|&(m, _)| m <= n_max);
        self.psi_prefix[i]
    }

    /// Number of prime ideals of norm at most n_max.
    pub(crate) fn prime_norm_count(&self, n_max: u64) -> usize {
        self.prime_norms.partition_point(|&q| q <= n_max)
    }

    /// sum of log q / q over prime norms q <= n_max.
    pub(crate) fn mertens_floor(&self, n_max: u64) -> f64 {
        self.mertens_prefix[self.prime_norm_count(n_max)]
    }

    /// sum_{n <= n_max} Lambda_K^#(n) / n.
    pub(crate) fn mangoldt_over_n_floor(&self, n_max: u64) -> f64 {
        let i = self.mangoldt.partition_point(|&(m, _)| m <= n_max);
        self.mangoldt_over_n_prefix[i]
    }

    /// sum_{n <= n_max} c_K(n) log n, cached on first use.
    pub(crate) fn log_weighted(&self, n_max: u64) -> f64 {
        let table = self.log_prefix.get_or_init(|| {
            let mut out = Vec::with_capacity(self.coefficients.len());
            let mut acc = 0.0f64;
            for (n, &c) in self.coefficients.iter().enumerate() {
                if n >= 2 && c > 0 {
                    acc += c as f64 * (n as f64).ln();
                }
                out.push(acc);
            }
            out
        });
        table[n_max as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_coefficient_examples() {
        assert_eq!(local_coefficient(&[(1, 1), (1, 1)], 2), 3);
        assert_eq!(local_coefficient(&[(1, 2)], 3), 0);
        assert_eq!(local_coefficient(&[(2, 1)], 5), 1);
        assert_eq!(local_coefficient(&[(1, 1), (1, 2)], 0), 1);
        // a + 2b = 4: (4,0), (2,1), (0,2)
        assert_eq!(local_coefficient(&[(1, 1), (1, 2)], 4), 3);
    }

    #[test]
    fn rational_field_has_unit_coefficients() {
        let t = build_table(&NumberField::rational(), 1000).unwrap();
        assert!(t.coefficients()[1..].iter().all(|&c| c == 1));
        assert_eq!(t.count_ideals(10.0).unwrap(), 10);
        assert_eq!(t.prime_norms().len(), 168);
    }

    #[test]
    fn gaussian_examples() {
        let t = build_table(&NumberField::quadratic(-4).unwrap(), 100).unwrap();
        assert_eq!(t.coefficient(25), 3);
        assert_eq!(t.coefficient(9), 1);
        assert_eq!(t.coefficient(3), 0);
        assert_eq!(&t.prime_norms()[..10], &[2, 5, 5, 9, 13, 13, 17, 17, 29, 29]);
        let first_ten: Vec<u32> = (1..=10).map(|n| t.coefficient(n)).collect();
        assert_eq!(first_ten, vec![1, 1, 0, 1, 2, 0, 0, 1, 1, 2]);
        assert_eq!(t.count_ideals(10.0).unwrap(), 9);
        assert_eq!(t.count_ideals(1.0).unwrap(), 1);
        assert!(matches!(t.count_ideals(0.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.count_ideals(100.5), Err(Error::OutOfRange { .. })));
        // inert 3: norm 9 carries log 9; (1+i)^k gives log 2 at every power of two
        assert!((t.mangoldt(9) - 9f64.ln()).abs() < 1e-15);
        assert_eq!(t.mangoldt(3), 0.0);
        assert!((t.mangoldt(8) - 2f64.ln()).abs() < 1e-15);
        assert!((t.mangoldt(25) - 2.0 * 5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn memory_cap_and_limit_guards() {
        let opts = BuildOptions { memory_cap: 1000, ..Default::default() };
        assert!(matches!(
            build_table_with(&NumberField::rational(), 1001, &opts),
            Err(Error::MemoryBudget { requested: 1001, cap: 1000 })
        ));
        assert!(build_table(&NumberField::rational(), 0).is_err());
        let one = build_table(&NumberField::rational(), 1).unwrap();
        assert_eq!(one.count_ideals(1.0).unwrap(), 1);
        assert!(one.prime_norms().is_empty());
    }

    #[test]
    fn worker_count_does_not_change_the_table() {
        let k = NumberField::quadratic(-23).unwrap();
        let a = build_table_with(&k, 20_000, &BuildOptions { workers: Some(1), ..Default::default() }).unwrap();
        let b = build_table_with(&k, 20_000, &BuildOptions { workers: Some(3), ..Default::default() }).unwrap();
        assert_eq!(a.coefficients(), b.coefficients());
        assert_eq!(a.prime_norms(), b.prime_norms());
        assert_eq!(a.mangoldt_entries(), b.mangoldt_entries());
    }
}
