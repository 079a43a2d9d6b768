//! Segmented sieve of Eratosthenes over odd numbers.

use crate::arith::isqrt;

const SEGMENT_BYTES: usize = 1 << 15;

/// Plain sieve for the base primes up to `n`.
fn small_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Calls `visit` with every prime `p <= limit` in increasing order.
pub fn for_each_prime(limit: u64, mut visit: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    visit(2);
    if limit < 3 {
        return;
    }
    let base: Vec<u64> = small_primes(isqrt(limit)).into_iter().skip(1).collect();
    // Segment index i stands for the odd number low + 2i.
    let span = 2 * SEGMENT_BYTES as u64;
    let mut next_multiple: Vec<u64> = base.iter().map(|&p| p * p).collect();
    let mut marks = vec![false; SEGMENT_BYTES];
    let mut low = 3u64;
    while low <= limit {
        let high = (low + span - 1).min(limit);
        let len = ((high - low) / 2 + 1) as usize;
        marks[..len].fill(false);
        for (k, &p) in base.iter().enumerate() {
            let mut m = next_multiple[k];
            if m > high {
                continue;
            }
            while m <= high {
                marks[((m - low) / 2) as usize] = true;
                m += 2 * p;
            }
            next_multiple[k] = m;
        }
        for (i, &is_composite) in marks[..len].iter().enumerate() {
            if !is_composite {
                visit(low + 2 * i as u64);
            }
        }
        low += span;
    }
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_prime(limit, |p| out.push(p));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_up_to(1_000_000).len(), 78498);
    }

    #[test]
    fn segment_boundaries_agree_with_plain_sieve() {
        let limit = 3 * 2 * SEGMENT_BYTES as u64 + 17;
        assert_eq!(primes_up_to(limit), small_primes(limit));
    }
}
