//! Dense polynomials over the prime field F_p, coefficients low degree first.
//!
//! Only what modulus selection needs: multiplication and remainder, gcd, and
//! Rabin's irreducibility test.

use crate::arith::prime_factors;

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // a^(p-2) mod p
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `f`.
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut f = f.to_vec();
    trim(&mut f);
    assert!(!f.is_empty(), "division by the zero polynomial");
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p) as u64;
    let p64 = p as u64;
    while r.len() > df {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p64;
        if c != 0 {
            let shift = dr - df;
            for (j, &fj) in f.iter().enumerate() {
                let sub = c * fj as u64 % p64;
                r[shift + j] = ((r[shift + j] as u64 + p64 - sub) % p64) as u32;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0) as u64;
            let y = *b.get(i).unwrap_or(&0) as u64;
            ((x + p as u64 - y) % p as u64) as u32
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    // make monic
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p) as u64;
        for c in a.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    a
}

/// `base^exp mod f`.
pub(crate) fn pow_mod(base: &[u32], mut exp: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), f, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = rem(&mul(&b, &b, p), f, p);
        }
    }
    rem(&acc, f, p)
}

/// `x^(p^j) mod f`, by `j` successive p-th powers.
fn x_pow_p_pow(j: u32, f: &[u32], p: u32) -> Vec<u32> {
    let mut h = rem(&[0, 1], f, p);
    for _ in 0..j {
        h = pow_mod(&h, p as u64, f, p);
    }
    h
}

/// Rabin's test: a monic `f` of degree `k` over F_p is irreducible iff
/// `x^(p^k) = x mod f` and `gcd(x^(p^(k/r)) - x, f) = 1` for every prime `r | k`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let k = (f.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    if sub(&x_pow_p_pow(k, &f, p), &rem(&x, &f, p), p) != Vec::<u32>::new() {
        return false;
    }
    prime_factors(k as u64).into_iter().all(|r| {
        let h = sub(&x_pow_p_pow(k / r as u32, &f, p), &x, p);
        gcd(&h, &f, p).len() == 1
    })
}

/// Monic polynomial of degree `k` whose non-leading coefficients are the base-p
/// digits of `index` (constant term least significant).
pub(crate) fn monic_from_index(mut index: u64, k: u32, p: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize + 1);
    for _ in 0..k {
        out.push((index % p as u64) as u32);
        index /= p as u64;
    }
    out.push(1);
    out
}

/// The smallest monic irreducible of degree `k` in the `monic_from_index` order.
pub fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let mut index = 0u64;
    loop {
        let f = monic_from_index(index, k, p);
        if is_irreducible(&f, p) {
            return f;
        }
        index += 1;
    }
}
