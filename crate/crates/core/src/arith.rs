//! Elementary integer arithmetic: factorization, divisors, Kronecker symbols
//! and discriminant tests.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Prime factorization by trial division, as `(p, e)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
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

/// Positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Sum of divisors.
pub fn sigma(n: u64) -> u64 {
    divisors(n).into_iter().sum()
}

pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|x| x >= 0 && x * x == n)
}

/// Integer square root of a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).find(|&x| x >= 0 && x * x == n)
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Whether `d` is 1 or the discriminant of a quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let f = d / 4;
            matches!(f.rem_euclid(4), 2 | 3) && is_squarefree(f.unsigned_abs())
        }
        _ => false,
    }
}

/// Whether `n` is a square modulo `m` (brute force; `m` small).
pub fn is_square_mod(n: i64, m: i64) -> bool {
    let n = n.rem_euclid(m);
    (0..m).any(|x| (x * x).rem_euclid(m) == n)
}

/// Legendre symbol for an odd prime `p`, by Euler's criterion.
fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut result: u128 = 1;
    let mut base = a as u128;
    let mut e = (p - 1) / 2;
    let pm = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % pm;
        }
        base = base * base % pm;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(D/b)` for a discriminant `D ≡ 0, 1 mod 4`: completely
/// multiplicative in `b`, `(D/-1) = sgn D`, and for a prime `p ∤ D`,
/// `(D/p) = 1` iff `D` is a square mod `4p`.
pub fn kronecker(d: i64, b: i64) -> Result<i8> {
    if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::BadDiscriminant(d));
    }
    Ok(kronecker_unchecked(d, b))
}

pub(crate) fn kronecker_unchecked(d: i64, b: i64) -> i8 {
    if b == 0 {
        return i8::from(d.abs() == 1);
    }
    let mut s: i8 = 1;
    if b < 0 && d < 0 {
        s = -s;
    }
    for (p, e) in factorize(b.unsigned_abs()) {
        let v = if p == 2 {
            match d.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            legendre(d, p)
        };
        if v == 0 {
            return 0;
        }
        if v == -1 && e % 2 == 1 {
            s = -s;
        }
    }
    s
}

/// Distinct prime factors.
pub fn primes_of(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Whether `n` is an exact (Hall) divisor of `m`.
pub fn is_exact_divisor(n: u64, m: u64) -> bool {
    m.is_multiple_of(n) && n.gcd(&(m / n)) == 1
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Solves `x ≡ a mod m`, `x ≡ b mod n` for coprime-compatible moduli,
/// returning the residue mod lcm(m, n).
pub fn crt(a: i64, m: i64, b: i64, n: i64) -> Option<i64> {
    let g = m.extended_gcd(&n);
    if (b - a).rem_euclid(g.gcd) != 0 {
        return None;
    }
    let l = m / g.gcd * n;
    let t = ((b - a) / g.gcd % (n / g.gcd)) as i128 * g.x as i128 % (n / g.gcd) as i128;
    let x = (a as i128 + m as i128 * t).rem_euclid(l as i128);
    Some(x as i64)
}
