/// Kronecker symbol (a / n), completely multiplicative in `n`.
pub fn kronecker(a: i64, n: u64) -> i8 {
    // (a/2) as a function of a mod 8
    const TWO: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a as i128;
    let mut n = n as i128;
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut k: i8 = 1;
    while n % 2 == 0 {
        n /= 2;
        k *= TWO[a.rem_euclid(8) as usize];
    }
    // Jacobi symbol for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                k = -k;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        a %= n;
    }
    if n == 1 {
        k
    } else {
        0
    }
}
