//! Word-size prime field arithmetic and the dense modular gcd.
//!
//! The modular gcd reduces both inputs modulo a sequence of 62-bit primes,
//! runs Euclid in `F_p[q]`, lifts the images by Chinese remaindering and
//! stops once the lifted candidate is stable and divides both inputs.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::IntPoly;

const PRIME_POOL: usize = 256;

/// Descending primes just below 2^62.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_POOL {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
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

fn reduce_coeff(c: &BigInt, p: u64) -> u64 {
    let r = (c % p).to_i128().expect("residue fits in i128");
    r.rem_euclid(p as i128) as u64
}

fn reduce(a: &IntPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.coeffs().iter().map(|c| reduce_coeff(c, p)).collect();
    trim(&mut v);
    v
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo `b` in `F_p[q]`; `b` must be nonzero.
fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let m = b.len() - 1;
    let inv = inv_mod(b[m], p);
    while a.len() > m {
        let top = a.len() - 1;
        let c = mul_mod(a[top], inv, p);
        if c != 0 {
            let shift = top - m;
            for (j, &bj) in b.iter().enumerate() {
                let t = mul_mod(c, bj, p);
                let slot = &mut a[shift + j];
                *slot = if *slot >= t { *slot - t } else { *slot + p - t };
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let r = rem_mod(a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// Necessary condition for `divisor | a` over the integers: divisibility in
/// `F_p[q]` for a prime not dividing the leading coefficient of `divisor`.
pub(crate) fn divides_mod_p(a: &IntPoly, divisor: &IntPoly) -> bool {
    let lc = divisor.lc();
    let Some(&p) = primes().iter().find(|&&p| !(&lc % p).is_zero()) else {
        return true;
    };
    let bp = reduce(divisor, p);
    rem_mod(reduce(a, p), &bp, p).is_empty()
}

/// Gcd of two primitive polynomials with nonzero constant terms and positive
/// degree. Returns the primitive gcd with positive leading coefficient.
pub(crate) fn gcd_modular(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let gamma = a.lc().gcd(&b.lc());
    let mut bound = a.degree().unwrap().min(b.degree().unwrap());
    let mut lifted: Option<(Vec<BigInt>, BigInt)> = None;
    let mut prev_candidate: Option<Vec<BigInt>> = None;

    for &p in primes() {
        if (&a.lc() % p).is_zero() || (&b.lc() % p).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return IntPoly::one();
        }
        if d > bound {
            continue;
        }
        if d < bound || lifted.is_none() {
            bound = d;
            lifted = None;
            prev_candidate = None;
        }
        let gm = reduce_coeff(&gamma, p);
        let image: Vec<u64> = g.iter().map(|&c| mul_mod(c, gm, p)).collect();
        let next = match lifted.take() {
            None => {
                let m = BigInt::from(p);
                let coeffs = image.iter().map(|&c| symmetric(BigInt::from(c), &m)).collect();
                (coeffs, m)
            }
            Some((coeffs, m)) => crt_step(&coeffs, &m, &image, p),
        };
        let stable = prev_candidate.as_ref() == Some(&next.0);
        prev_candidate = Some(next.0.clone());
        lifted = Some(next);
        if stable {
            let candidate = IntPoly::from_coeffs(prev_candidate.clone().unwrap()).primitive_part();
            if a.div_exact(&candidate).is_some() && b.div_exact(&candidate).is_some() {
                return candidate;
            }
        }
    }
    // Every pooled prime exhausted: coefficient growth far beyond anything
    // this crate produces. Fall back to the remainder sequence.
    a.gcd_primitive_prs(b)
}

fn symmetric(mut x: BigInt, m: &BigInt) -> BigInt {
    x = x.mod_floor(m);
    if &x + &x > *m {
        x -= m;
    }
    x
}

fn crt_step(coeffs: &[BigInt], m: &BigInt, image: &[u64], p: u64) -> (Vec<BigInt>, BigInt) {
    let m_mod_p = reduce_coeff(m, p);
    let inv = inv_mod(m_mod_p, p);
    let new_m = m * p;
    let out = coeffs
        .iter()
        .zip(image)
        .map(|(c, &r)| {
            let cp = reduce_coeff(c, p);
            let diff = if r >= cp { r - cp } else { r + p - cp };
            let t = mul_mod(diff, inv, p);
            let x = c + m * t;
            symmetric(x, &new_m)
        })
        .collect();
    (out, new_m)
}
