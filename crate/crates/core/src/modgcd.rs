//! Multi-modular gcd of univariate integer polynomials.
//!
//! Each prime gives a monic gcd over GF(p). The images are scaled by the
//! gcd of the leading coefficients, combined by CRT and lifted to symmetric
//! residues. A candidate is accepted once it divides both inputs exactly.

use crate::int::Int;
use num_bigint::BigInt;
use std::sync::OnceLock;

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut v = Vec::new();
        let mut n = (1u64 << 62) - 1;
        while v.len() < 256 {
            if is_prime(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Monic gcd over GF(p), ascending coefficients.
pub(crate) fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !(b.len() == 1 && b[0] == 0) {
        let n = b.len() - 1;
        let inv = powmod(b[n], p - 2, p);
        for i in (n..a.len()).rev() {
            let c = mulmod(a[i], inv, p);
            if c == 0 {
                continue;
            }
            for k in 0..=n {
                let t = mulmod(c, b[k], p);
                let j = i - n + k;
                a[j] = if a[j] >= t { a[j] - t } else { a[j] + p - t };
            }
        }
        a.truncate(n.max(1));
        trim(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = powmod(*a.last().unwrap(), p - 2, p);
    a.iter().map(|&c| mulmod(c, inv, p)).collect()
}

/// Exact quotient of ascending integer polynomials, if it exists.
pub fn dense_div_exact(a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
    let n = b.len() - 1;
    if a.len() < b.len() {
        return if a.iter().all(|c| c.is_zero()) { Some(vec![Int::ZERO]) } else { None };
    }
    let lb = &b[n];
    let mut r = a.to_vec();
    let mut q = vec![Int::ZERO; a.len() - n];
    for i in (n..a.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = r[i].div_exact(lb)?;
        for (k, bk) in b.iter().enumerate() {
            r[i - n + k] = r[i - n + k].sub(&c.mul(bk));
        }
        q[i - n] = c;
    }
    if r[..n].iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    if c > half {
        c - m
    } else {
        c.clone()
    }
}

fn primitive(v: Vec<Int>) -> Vec<Int> {
    let mut g = Int::ZERO;
    for c in &v {
        g = g.gcd(c);
    }
    let mut v: Vec<Int> = if g.is_zero() || g.is_one() { v } else { v.iter().map(|c| c.div_exact(&g).unwrap()).collect() };
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.iter().map(|c| c.neg()).collect();
    }
    v
}

/// Gcd of two nonzero primitive polynomials (ascending, trimmed), or `None`
/// when the prime supply runs out.
pub fn modular_gcd(a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
    let (la, lb) = (a.last()?, b.last()?);
    let lc = la.gcd(lb);
    let mut deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::from(1);
    let mut last: Option<Vec<Int>> = None;
    for &p in primes() {
        if la.rem_u64(p) == 0 || lb.rem_u64(p) == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| c.rem_u64(p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| c.rem_u64(p)).collect();
        let g = gcd_mod(ap, bp, p);
        let d = g.len() - 1;
        if d == 0 {
            return Some(vec![Int::ONE]);
        }
        if d > deg {
            continue;
        }
        let s = lc.rem_u64(p);
        let g: Vec<u64> = g.iter().map(|&c| mulmod(c, s, p)).collect();
        if d < deg {
            deg = d;
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            last = None;
            continue;
        }
        // CRT: x = r + M * ((s - r) * M^-1 mod p)
        let pb = BigInt::from(p);
        let minv = powmod((&modulus % &pb).try_into().unwrap(), p - 2, p);
        for (r, &gc) in acc.iter_mut().zip(&g) {
            let rp: u64 = (&*r % &pb).try_into().unwrap();
            let diff = if gc >= rp { gc - rp } else { gc + p - rp };
            let t = mulmod(diff, minv, p);
            *r += &modulus * BigInt::from(t);
        }
        modulus *= &pb;
        let half: BigInt = &modulus >> 1;
        let cand: Vec<Int> = primitive(acc.iter().map(|c| Int::from(symmetric(c, &modulus, &half))).collect());
        if last.as_ref() == Some(&cand) {
            if dense_div_exact(a, &cand).is_some() && dense_div_exact(b, &cand).is_some() {
                return Some(cand);
            }
        }
        last = Some(cand);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<Int> {
        c.iter().map(|&x| Int::from(x)).collect()
    }

    fn mul(a: &[Int], b: &[Int]) -> Vec<Int> {
        let mut r = vec![Int::ZERO; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = r[i + j].add(&x.mul(y));
            }
        }
        r
    }

    #[test]
    fn recovers_common_factor() {
        let g = v(&[3, 0, -7, 2]);
        let a = mul(&g, &v(&[1, 1, 5]));
        let b = mul(&g, &v(&[-4, 0, 0, 9]));
        assert_eq!(modular_gcd(&primitive(a), &primitive(b)).unwrap(), g);
        assert_eq!(modular_gcd(&v(&[1, 1]), &v(&[-1, 1])).unwrap(), v(&[1]));
    }

    #[test]
    fn big_coefficients() {
        let mut g = v(&[1]);
        for k in 1..40 {
            g = mul(&g, &v(&[k, 0, 1]));
        }
        let a = mul(&g, &v(&[1, 2]));
        let b = mul(&g, &v(&[3, 0, 0, 1]));
        assert_eq!(modular_gcd(&primitive(a), &primitive(b)).unwrap(), g);
    }
}
