use nfbertrand::analytics::{self, zeta_k};
use nfbertrand::arith::gcd;
use nfbertrand::bounds::{self, BoundCase, EffectiveConstants};
use nfbertrand::quad::integrate;
use nfbertrand::sieve::{local_coefficient, BuildOptions};
use nfbertrand::splitting::split_monogenic;
use nfbertrand::{build_table, build_table_with, FieldSplitter, NumberField};
use proptest::prelude::*;

fn cubic() -> NumberField {
    NumberField {
        label: "Q(cbrt(2))".into(),
        degree: 3,
        discriminant: -108,
        r1: 1,
        r2: 1,
        class_number: 1,
        regulator: (1.0 + 2f64.cbrt() + 4f64.cbrt()).ln(),
        roots_of_unity: 2,
        polynomial: Some(vec![-2, 0, 0, 1]),
        splitting: Default::default(),
    }
}

fn brute_local(fs: &[u32], k: u32) -> u64 {
    fn go(fs: &[u32], k: u32) -> u64 {
        match fs.split_first() {
            None => (k == 0) as u64,
            Some((&f, rest)) => (0..=k / f).map(|a| go(rest, k - a * f)).sum(),
        }
    }
    go(fs, k)
}

#[test]
fn cubic_roots_match_split_primes() {
    let t = build_table(&cubic(), 20_000).unwrap();
    for p in nfbertrand::primes::primes_up_to(20_000) {
        if p <= 3 {
            continue;
        }
        let roots = (0..p).filter(|&x| (x * x % p * x + p - 2) % p == 0).count() as u32;
        assert_eq!(t.coefficient(p), roots, "p = {p}");
    }
    // 2 and 3 are totally ramified
    assert_eq!(t.coefficient(2), 1);
    assert_eq!(t.coefficient(4), 1);
    assert_eq!(t.coefficient(3), 1);
    assert_eq!(split_monogenic(&[-2, 0, 0, 1], 5).unwrap().factors.len(), 2);
}

#[test]
fn worker_count_does_not_change_tables() {
    let k = NumberField::quadratic(-23).unwrap();
    let one = build_table_with(&k, 200_000, &BuildOptions { workers: Some(1), ..Default::default() }).unwrap();
    let four = build_table_with(&k, 200_000, &BuildOptions { workers: Some(4), ..Default::default() }).unwrap();
    assert_eq!(one.coefficients(), four.coefficients());
    assert_eq!(one.prime_norms(), four.prime_norms());
    assert_eq!(one.mangoldt_entries(), four.mangoldt_entries());
}

#[test]
fn zeta_decreasing_and_above_partial_sums() {
    let k = cubic();
    let t = build_table(&k, 100_000).unwrap();
    let mut last = f64::INFINITY;
    for sigma in [2.0, 2.5, 3.0, 4.0] {
        let z = zeta_k(&k, sigma, 1e-6).unwrap();
        let partial: f64 = (1..=t.limit()).map(|n| t.coefficient(n) as f64 * (n as f64).powf(-sigma)).sum();
        assert!(partial <= z.upper, "sigma = {sigma}");
        assert!(z.value < last);
        last = z.value;
    }
}

#[test]
fn prime_norm_count_matches_mangoldt_primes() {
    let k = NumberField::quadratic(13).unwrap();
    let t = build_table(&k, 50_000).unwrap();
    let splitter = FieldSplitter::new(&k, 1).unwrap();
    let mut expect = 0;
    for p in nfbertrand::primes::primes_up_to(50_000) {
        let rec = splitter.split(p).unwrap();
        expect += rec.residue_degrees().filter(|&f| p.pow(f) <= 50_000).count();
    }
    assert_eq!(analytics::pi_k(&t, 50_000.0).unwrap() as usize, expect);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficients_are_multiplicative(m in 1u64..2000, n in 1u64..2000, d in prop::sample::select(vec![-4i64, -3, 5, -23, 13, -20, 12])) {
        prop_assume!(gcd(m, n) == 1);
        let t = build_table(&NumberField::quadratic(d).unwrap(), m * n).unwrap();
        prop_assert_eq!(t.coefficient(m * n), t.coefficient(m) * t.coefficient(n));
    }

    #[test]
    fn knapsack_matches_enumeration(fs in prop::collection::vec(1u32..4, 1..4), k in 0u32..12) {
        let factors: Vec<(u32, u32)> = fs.iter().map(|&f| (1, f)).collect();
        prop_assert_eq!(local_coefficient(&factors, k), brute_local(&fs, k));
    }

    #[test]
    fn counts_are_monotone_and_psi_nonnegative(x in 1.0f64..5000.0, y in 1.0f64..5000.0) {
        let k = NumberField::quadratic(-3).unwrap();
        let t = build_table(&k, 5000).unwrap();
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(t.count_ideals(lo).unwrap() <= t.count_ideals(hi).unwrap());
        prop_assert!(analytics::psi_k(&t, lo).unwrap() <= analytics::psi_k(&t, hi).unwrap());
        prop_assert!(analytics::pi_k(&t, lo).unwrap() <= analytics::pi_k(&t, hi).unwrap());
    }

    #[test]
    fn phi_defect_within_bound(x in 1u64..20_000) {
        let k = NumberField::quadratic(5).unwrap();
        let t = build_table(&k, 20_000).unwrap();
        let phi = analytics::phi_defect(&t, x as f64).unwrap();
        prop_assert!(phi >= -1e-12);
        prop_assert!(phi <= analytics::phi_bound(2, x as f64) + 1e-12);
    }

    #[test]
    fn li_partial_integration_identity(x in 2.5f64..1e8, a in 1.01f64..100.0) {
        let ax = a * x;
        let lhs = bounds::li(ax).unwrap() - bounds::li(x).unwrap();
        let rest = integrate(|u: f64| u.exp() / (u * u), x.ln(), ax.ln(), 1e-13);
        let rhs = ax / ax.ln() - x / x.ln() + rest;
        prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs());
    }

    #[test]
    fn grh_threshold_below_unconditional(d in prop::sample::select(vec![-4i64, -3, 5, -23, 13, -1_000_003, 999_997 * 4])) {
        let Ok(k) = NumberField::quadratic(d) else { return Ok(()) };
        let c = EffectiveConstants::default();
        let grh = bounds::lo_threshold_log(&k, &c, BoundCase::Grh).unwrap();
        let normal = bounds::lo_threshold_log(&k, &c, BoundCase::Normal).unwrap();
        prop_assert!(grh < normal);
    }

    #[test]
    fn stark_endpoints_increase_with_discriminant(a in 3u64..1_000_000, b in 3u64..1_000_000) {
        let c = EffectiveConstants::default();
        let mut k = NumberField::quadratic(-4).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        k.discriminant = -(lo as i64);
        let r1 = bounds::stark_range(&k, &c, BoundCase::Tower).unwrap();
        k.discriminant = -(hi as i64);
        let r2 = bounds::stark_range(&k, &c, BoundCase::Tower).unwrap();
        prop_assert!(r1.lower <= r2.lower && r1.upper <= r2.upper);
    }
}
