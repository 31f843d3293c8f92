#![allow(dead_code)]

/// Schoolbook multiply-then-reduce in GF(2)[t]/(modulus), independent of the
/// library's field code.
pub fn slow_mul(mut a: u32, mut b: u32, modulus: u32, n: u32) -> u32 {
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> n & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

pub fn slow_pow(a: u32, mut e: u64, modulus: u32, n: u32) -> u32 {
    let (mut base, mut acc) = (a, 1u32);
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(acc, base, modulus, n);
        }
        base = slow_mul(base, base, modulus, n);
        e >>= 1;
    }
    acc
}

/// Evaluates Σ c·x^e with the slow arithmetic.
pub fn slow_eval(terms: &[(u32, u32)], x: u32, modulus: u32, n: u32) -> u32 {
    terms
        .iter()
        .fold(0, |acc, &(e, c)| acc ^ slow_mul(c, slow_pow(x, e as u64, modulus, n), modulus, n))
}

/// Irreducibility by trial division over GF(2).
pub fn is_irreducible(m: u32) -> bool {
    let deg = 31 - m.leading_zeros();
    if deg == 0 {
        return false;
    }
    (2u32..(1 << (deg / 2 + 1))).all(|d| {
        let dd = 31 - d.leading_zeros();
        if dd == 0 || dd > deg / 2 {
            return true;
        }
        let mut r = m;
        while r != 0 && 31 - r.leading_zeros() >= dd {
            r ^= d << (31 - r.leading_zeros() - dd);
        }
        r != 0
    })
}
