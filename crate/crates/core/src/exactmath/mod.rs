//! Exact integer, rational, polynomial and matrix kernels.
//!
//! Everything here works over arbitrary-precision integers. The only
//! fixed-width values are small primes and loop counters.

mod fp;
mod matrix;
mod poly;

pub use fp::{factor_degrees_mod_p, factor_mod_p, FpPoly};
pub use matrix::{hnf_and_det, hnf_with_transform, integer_left_kernel, Hnf, IntMatrix, RatMatrix};
pub use poly::{poly_disc, rational_roots, UniPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always in lowest terms with positive denominator.
pub type BigRat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("polynomial degree {0} is too small")]
    DegreeTooSmall(usize),
    #[error("polynomial is not squarefree modulo {0}")]
    NotSquarefreeModP(u64),
    #[error("bad prime {0}")]
    BadPrime(u64),
    #[error("polynomial does not have integer coefficients")]
    NotIntegral,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("modular field too large for exhaustive factorisation: {0}")]
    FieldTooLarge(String),
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Exact integer square root, `None` when `n` is negative or not a square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Nonnegative rational square root of `q`, if it has one.
pub fn is_square(q: &BigRat) -> Option<BigRat> {
    let num = isqrt_exact(q.numer())?;
    let den = isqrt_exact(q.denom())?;
    Some(BigRat::new(num, den))
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut f = 17;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Smallest prime `>= from`.
pub fn next_prime(from: u64) -> u64 {
    let mut n = from.max(2);
    while !is_prime_u64(n) {
        n += 1;
    }
    n
}

/// Prime factorisation of `|n|` by trial division, primes ascending with
/// exponents. Intended for the small integers that parametrise algebras and
/// fields here.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: &BigInt) -> bool {
    !n.is_zero() && factor_integer(n).iter().all(|(_, e)| *e == 1)
}

/// Squarefree part of a nonzero rational: the unique squarefree integer `s`
/// with `q = s * r^2` for some rational `r`.
pub fn squarefree_part(q: &BigRat) -> BigInt {
    assert!(!q.is_zero(), "squarefree part of zero");
    // q = a/b has the same square class as a*b
    let n = q.numer() * q.denom();
    let mut s = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor_integer(&n) {
        if e % 2 == 1 {
            s *= p;
        }
    }
    s
}

/// Positive divisors of a nonzero integer, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// `n mod m` as a `u64`, nonnegative.
pub fn mod_u64(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// Whether a rational has odd denominator (is a 2-adic integer).
pub fn is_two_integral(q: &BigRat) -> bool {
    q.denom().is_odd()
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    // p prime
    pow_mod_u64(a, p - 2, p)
}

/// Serde helpers writing big integers as decimal strings.
pub mod ser {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|n| n.to_string()))
    }

    pub fn opt_bigint<S: Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(n) => s.serialize_str(&n.to_string()),
            None => s.serialize_none(),
        }
    }
}
