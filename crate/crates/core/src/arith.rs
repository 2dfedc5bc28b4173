//! Integer helpers: primality, factorization, 2-parts and odd parts.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// (p, k) with n = p^k, if n is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = prime_factors(n);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// 2-adic valuation; v2(0) is reported as 0.
pub fn v2(n: u64) -> u32 {
    if n == 0 {
        0
    } else {
        n.trailing_zeros()
    }
}

/// Largest power of 2 dividing n (the 2-part n_2).
pub fn two_part(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        1 << n.trailing_zeros()
    }
}

/// n divided by its 2-part (the odd part n_{2'}).
pub fn odd_part(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        n >> n.trailing_zeros()
    }
}

pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

pub fn inv_mod(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    assert_eq!(e.gcd, 1, "{a} is not invertible mod {m}");
    e.x.rem_euclid(m as i128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Euler's totient.
pub fn phi(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

/// Legendre symbol (a/p) for odd prime p, as -1, 0 or 1.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Solve x = r1 mod m1, x = r2 mod m2 with coprime moduli; result in 0..m1*m2.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let m = m1 * m2;
    if m == 1 {
        return 0;
    }
    let t = ((r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u64 * inv_mod(m1 % m2, m2)) % m2;
    (r1 + m1 * t) % m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parts_exhaustive() {
        for n in 1..=4096u64 {
            let (t, o) = (two_part(n), odd_part(n));
            assert_eq!(t * o, n);
            assert!(is_power_of_two(t));
            assert_eq!(o % 2, 1);
            assert_eq!(1u64 << v2(n), t);
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(1, 8, 2, 3), 17);
        assert_eq!(crt(0, 1, 2, 3), 2);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(2), Some((2, 1)));
    }

    proptest! {
        #[test]
        fn inverse_mod_roundtrip(a in 1u64..10_000, m in 2u64..10_000) {
            prop_assume!(gcd(a, m) == 1);
            prop_assert_eq!((a * inv_mod(a, m)) % m, 1);
        }

        #[test]
        fn factors_are_prime_and_divide(n in 2u64..100_000) {
            for p in prime_factors(n) {
                prop_assert!(is_prime(p));
                prop_assert_eq!(n % p, 0);
            }
        }
    }
}
