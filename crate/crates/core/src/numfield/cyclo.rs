use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::NumFieldError;
use crate::exactmath::{is_prime_u64, mul_mod_u64, pow_mod_u64, UniPoly};

/// Largest prime accepted by [`cyclotomic_subfields`].
pub const MAX_CYCLOTOMIC_PRIME: u64 = 2000;

/// Search for modular primes starts just above this.
const MODULAR_PRIME_START: u64 = 1 << 31;
const VERIFICATION_PRIMES: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycloCertificate {
    /// Primitive root modulo `p` used to order the periods.
    pub generator: u64,
    /// Primes `q = 1 mod p` whose images were combined by CRT.
    pub crt_primes: Vec<u64>,
    /// Further primes at which the lifted polynomial was rechecked.
    pub verification_primes: Vec<u64>,
    /// Bound `(1 + f)^e` on the absolute value of every coefficient.
    pub coefficient_bound: String,
}

/// The degree-`e` subfield of `Q(zeta_p)`, generated by a Gaussian period
/// of length `f = (p - 1) / e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycloSubfield {
    pub p: u64,
    pub degree: usize,
    pub period_length: usize,
    pub period_poly: UniPoly,
    pub certificate: CycloCertificate,
}

fn primitive_root(p: u64) -> u64 {
    let n = p - 1;
    let factors: Vec<u64> = crate::exactmath::factor_integer(&BigInt::from(n))
        .into_iter()
        .map(|(q, _)| q.to_u64().expect("small"))
        .collect();
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod_u64(g, n / q, p) != 1)).expect("primes have primitive roots")
}

/// A primitive `p`-th root of unity in `F_q`, for `q = 1 mod p`.
fn root_of_unity(p: u64, q: u64) -> u64 {
    (2..q).map(|h| pow_mod_u64(h, (q - 1) / p, q)).find(|&z| z != 1).expect("q = 1 mod p")
}

/// Exponent sets of the `e` Gaussian periods: period `j` collects
/// `g^(j + e t)` for `t < f`.
fn period_exponents(p: u64, g: u64, e: usize) -> Vec<Vec<u64>> {
    let f = (p as usize - 1) / e;
    (0..e)
        .map(|j| (0..f).map(|t| pow_mod_u64(g, (j + e * t) as u64, p)).collect())
        .collect()
}

/// Coefficients of `prod_j (x - eta_j)` modulo `q`, ascending.
fn period_poly_mod(p: u64, q: u64, periods: &[Vec<u64>]) -> Vec<u64> {
    let zeta = root_of_unity(p, q);
    let powers: Vec<u64> = {
        let mut v = Vec::with_capacity(p as usize);
        let mut z = 1;
        for _ in 0..p {
            v.push(z);
            z = mul_mod_u64(z, zeta, q);
        }
        v
    };
    let mut poly = vec![1u64];
    for exps in periods {
        let eta = exps.iter().fold(0, |acc, &k| (acc + powers[k as usize]) % q);
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % q;
            next[i] = (next[i] + q - mul_mod_u64(c, eta, q)) % q;
        }
        poly = next;
    }
    poly
}

fn modular_primes(p: u64) -> impl Iterator<Item = u64> {
    let mut q = MODULAR_PRIME_START - MODULAR_PRIME_START % p + 1;
    std::iter::from_fn(move || loop {
        q += p;
        if q % 2 == 1 && is_prime_u64(q) {
            return Some(q);
        }
    })
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn subfield(p: u64, g: u64, e: usize) -> CycloSubfield {
    let f = (p as usize - 1) / e;
    let periods = period_exponents(p, g, e);
    let bound = num_traits::pow(BigInt::from(1 + f), e);
    let target = &bound * 2;

    let mut primes = modular_primes(p);
    let mut modulus = BigInt::one();
    let mut coeffs = vec![BigInt::zero(); e + 1];
    let mut crt_primes = Vec::new();
    let mut verification_primes = Vec::new();
    loop {
        let q = primes.next().expect("infinitely many primes");
        let image = period_poly_mod(p, q, &periods);
        let qb = BigInt::from(q);
        if modulus > target {
            let agrees = coeffs.iter().zip(&image).all(|(c, &r)| c.mod_floor(&qb) == BigInt::from(r));
            if agrees {
                verification_primes.push(q);
                if verification_primes.len() == VERIFICATION_PRIMES {
                    break;
                }
                continue;
            }
            // a disagreement means the bound was wrong; keep combining
            verification_primes.clear();
        }
        // CRT: c = c + M * ((r - c) * M^-1 mod q)
        let m_inv = BigInt::from(crate::exactmath::inv_mod_u64(crate::exactmath::mod_u64(&modulus, q), q));
        for (c, &r) in coeffs.iter_mut().zip(&image) {
            let t = ((BigInt::from(r) - &*c) * &m_inv).mod_floor(&qb);
            *c = &*c + &modulus * t;
        }
        modulus *= &qb;
        for c in coeffs.iter_mut() {
            *c = symmetric(c, &modulus);
        }
        crt_primes.push(q);
    }

    CycloSubfield {
        p,
        degree: e,
        period_length: f,
        period_poly: UniPoly::from_bigints(&coeffs),
        certificate: CycloCertificate {
            generator: g,
            crt_primes,
            verification_primes,
            coefficient_bound: bound.to_string(),
        },
    }
}

/// Every subfield of `Q(zeta_p)`, one per divisor `e` of `p - 1`, ascending
/// by degree. Period polynomials are recovered exactly from their images
/// modulo primes `q = 1 mod p`, where the periods are plain residues.
pub fn cyclotomic_subfields(p: u64) -> Result<Vec<CycloSubfield>, NumFieldError> {
    if p < 3 || !is_prime_u64(p) {
        return Err(NumFieldError::NotPrime(p));
    }
    if p > MAX_CYCLOTOMIC_PRIME {
        return Err(NumFieldError::PrecisionBoundExceeded(p));
    }
    let g = primitive_root(p);
    let n = (p - 1) as usize;
    Ok((1..=n).filter(|e| n % e == 0).map(|e| subfield(p, g, e)).collect())
}
