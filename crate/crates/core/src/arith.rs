//! Rational-integer helpers shared by the field, solver and sieve code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Floor of the square root of a non-negative `u64`.
pub fn isqrt_u64(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Floor of the square root of a non-negative big integer.
pub fn isqrt_big(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// `Some(r)` when `n` is a perfect square `r²` with `r ≥ 0`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// A square root of `a` modulo the odd prime `p` (Tonelli–Shanks), or
/// `None` when `a` is a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    debug_assert!(p > 2 && is_prime(p));
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing order. Intended for the desk-scale integers this crate handles.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Whether no square of a prime divides `n`. Zero is not squarefree.
pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Exponent of the prime `p` in the non-zero integer `n`.
pub fn ord_p(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "ord_p of zero");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// Removes every factor `p` from `n`, returning the cofactor.
pub fn strip_prime(n: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut n = n.clone();
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
    }
    n
}

/// Kronecker symbol `(a / m)`, extended to all non-zero `m`.
pub fn kronecker(a: i64, m: i64) -> i32 {
    assert!(m != 0, "Kronecker symbol with m = 0");
    let mut a = a as i128;
    let mut m = m as i128;
    let mut result = 1i32;

    if m < 0 {
        m = -m;
        if a < 0 {
            result = -result;
        }
    }
    let mut twos = 0;
    while m % 2 == 0 {
        m /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 for a ≡ ±1 mod 8, -1 for a ≡ ±3 mod 8
        let r = a.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a / m) with m odd and positive.
    a = a.rem_euclid(m);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = m % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

/// Converts a small big integer to `i64`, panicking on overflow.
pub(crate) fn to_i64(n: &BigInt) -> i64 {
    n.to_i64().expect("integer does not fit in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_square_roots() {
        for p in [3u64, 5, 7, 13, 17, 29, 41, 97, 1_000_003] {
            for a in 0..p.min(200) {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a % p),
                    None => assert_eq!(kronecker(a as i64, p as i64), -1),
                }
            }
        }
    }

    fn squares_mod(m: i64) -> Vec<i64> {
        (0..m).map(|x| x * x % m).collect()
    }

    #[test]
    fn kronecker_against_square_enumeration() {
        let sq = squares_mod(29);
        assert!(!sq.contains(&21));
        assert_eq!(kronecker(21, 29), -1);
        assert!(sq.contains(&13));
        assert_eq!(kronecker(13, 29), 1);
        assert_eq!(kronecker(58, 29), 0);
    }

    #[test]
    fn kronecker_matches_euler_criterion_for_odd_primes() {
        for p in [3i64, 5, 7, 11, 13, 29, 37, 101] {
            for a in -60i64..60 {
                let e = pow_mod(a.rem_euclid(p) as u64, ((p - 1) / 2) as u64, p as u64);
                let expect = match e {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(kronecker(a, p), expect, "({a}/{p})");
            }
        }
    }

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(-20, 2), 0);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn kronecker_is_multiplicative_in_the_top_argument() {
        for m in [3i64, 8, 15, 29, -20, 12] {
            for a in -20i64..20 {
                for b in -20i64..20 {
                    assert_eq!(kronecker(a * b, m), kronecker(a, m) * kronecker(b, m));
                }
            }
        }
    }

    #[test]
    fn primes_and_squarefree() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert!(!is_squarefree(12));
        assert!(is_squarefree(-5));
        assert!(!is_squarefree(0));
        assert_eq!(factorize(129_600), vec![(2, 6), (3, 4), (5, 2)]);
    }

    #[test]
    fn isqrt_edges() {
        for n in 0..2000u64 {
            let r = isqrt_u64(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt_u64(u64::MAX), u32::MAX as u64);
    }
}
