use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::QuatError;
use crate::exactmath::{factor_integer, is_squarefree, BigRat};

/// The quaternion algebra `(D/m, m)` over the rationals: `i^2 = D/m`,
/// `j^2 = m`, `k = ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatAlgebra {
    disc: u64,
    m: u64,
    i_sq: BigRat,
    j_sq: BigRat,
    ramified: Vec<u64>,
}

impl QuatAlgebra {
    /// Validates that `D` is squarefree, `m | D`, and that the algebra
    /// ramifies exactly at the primes dividing `D`.
    pub fn new(disc: u64, m: u64) -> Result<Self, QuatError> {
        let ramified = algebra_discriminant(disc, m)?;
        let product: u64 = ramified.iter().product();
        if product != disc {
            return Err(QuatError::PresentationMismatch { disc, m, ramified });
        }
        Ok(QuatAlgebra {
            disc,
            m,
            i_sq: BigRat::from_integer(BigInt::from(disc / m)),
            j_sq: BigRat::from_integer(BigInt::from(m)),
            ramified,
        })
    }

    pub fn disc(&self) -> u64 {
        self.disc
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn i_sq(&self) -> &BigRat {
        &self.i_sq
    }

    pub fn j_sq(&self) -> &BigRat {
        &self.j_sq
    }

    pub fn ramified_primes(&self) -> &[u64] {
        &self.ramified
    }

    pub fn one(&self) -> Quaternion {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn i(&self) -> Quaternion {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j(&self) -> Quaternion {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k(&self) -> Quaternion {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn mul(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        let a = &self.i_sq;
        let b = &self.j_sq;
        let ab = a * b;
        let [x0, x1, x2, x3] = &x.c;
        let [y0, y1, y2, y3] = &y.c;
        Quaternion {
            c: [
                x0 * y0 + a * x1 * y1 + b * x2 * y2 - &ab * x3 * y3,
                x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
                x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
                x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
            ],
        }
    }

    /// Reduced norm `a^2 - (D/m) b^2 - m c^2 + D d^2`.
    pub fn nrd(&self, x: &Quaternion) -> BigRat {
        let [a, b, c, d] = &x.c;
        a * a - &self.i_sq * b * b - &self.j_sq * c * c + &self.i_sq * &self.j_sq * d * d
    }

    pub fn inverse(&self, x: &Quaternion) -> Result<Quaternion, QuatError> {
        let n = self.nrd(x);
        if n.is_zero() {
            return Err(QuatError::DivisionByZeroNorm);
        }
        Ok(x.conj().scale(&(BigRat::one() / n)))
    }

    /// `q x q^-1`.
    pub fn conjugate_by(&self, q: &Quaternion, x: &Quaternion) -> Result<Quaternion, QuatError> {
        let inv = self.inverse(q)?;
        Ok(self.mul(&self.mul(q, x), &inv))
    }

    /// Squarefree integer `s` with `Q(x) = Q(sqrt(s))` for a pure quaternion
    /// `x` with nonzero square.
    pub fn square_class_of_pure(&self, x: &Quaternion) -> Option<BigInt> {
        if !x.trd().is_zero() {
            return None;
        }
        let sq = -self.nrd(x);
        if sq.is_zero() {
            return None;
        }
        Some(crate::exactmath::squarefree_part(&sq))
    }
}

impl fmt::Display for QuatAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.disc / self.m, self.m)
    }
}

/// An element `a + b i + c j + d k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    c: [BigRat; 4],
}

impl Quaternion {
    pub fn new(a: BigRat, b: BigRat, c: BigRat, d: BigRat) -> Self {
        Quaternion { c: [a, b, c, d] }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |n: i64| BigRat::from_integer(BigInt::from(n));
        Quaternion::new(r(a), r(b), r(c), r(d))
    }

    /// `(a + b i + c j + d k) / den`.
    pub fn halves(den: i64, a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |n: i64| BigRat::new(BigInt::from(n), BigInt::from(den));
        Quaternion::new(r(a), r(b), r(c), r(d))
    }

    pub fn from_slice(v: &[BigRat]) -> Self {
        Quaternion { c: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()] }
    }

    pub fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }

    pub fn coords(&self) -> &[BigRat; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.c;
        Quaternion { c: [a.clone(), -b, -c, -d] }
    }

    pub fn trd(&self) -> BigRat {
        &self.c[0] * BigRat::from_integer(BigInt::from(2))
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        Quaternion { c: [&self.c[0] * s, &self.c[1] * s, &self.c[2] * s, &self.c[3] * s] }
    }

    /// Sign-normalised representative: first nonzero coordinate positive.
    pub fn up_to_sign(&self) -> Self {
        match self.c.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion { c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2], &self.c[3] + &o.c[3]] }
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion { c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2], &self.c[3] - &o.c[3]] }
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        let [a, b, c, d] = self.c;
        Quaternion { c: [-a, -b, -c, -d] }
    }
}

impl Mul<&BigRat> for &Quaternion {
    type Output = Quaternion;
    fn mul(self, s: &BigRat) -> Quaternion {
        self.scale(s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // common denominator makes half-integral elements readable
        let den = self.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let names = ["", "i", "j", "k"];
        let mut parts = String::new();
        for (x, name) in self.c.iter().zip(names) {
            let n = (x * BigRat::from_integer(den.clone())).to_integer();
            if n.is_zero() {
                continue;
            }
            let sign = if n.is_negative() { "-" } else { "+" };
            if !parts.is_empty() || n.is_negative() {
                parts.push_str(sign);
            }
            let abs = n.abs();
            if !abs.is_one() || name.is_empty() {
                parts.push_str(&abs.to_string());
            }
            parts.push_str(name);
        }
        if parts.is_empty() {
            parts.push('0');
        }
        if den.is_one() {
            write!(f, "{parts}")
        } else {
            write!(f, "({parts})/{den}")
        }
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Hilbert symbol `(a, b)_p` for nonzero integers and a prime `p`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let split = |x: &BigInt| -> (u32, BigInt) {
        let mut v = 0;
        let mut u = x.clone();
        while u.is_multiple_of(&pb) {
            u /= &pb;
            v += 1;
        }
        (v, u)
    };
    let (alpha, u) = split(a);
    let (beta, v) = split(b);
    if p == 2 {
        let eps = |x: &BigInt| -> u32 {
            let r: BigInt = x.mod_floor(&BigInt::from(4));
            let half: BigInt = (r - 1) / 2;
            half.to_u32().unwrap()
        };
        let omega = |x: &BigInt| -> u32 {
            let r = x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
            ((r * r - 1) / 8) % 2
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let eps_p = ((p - 1) / 2) % 2;
        let mut s: i8 = if (alpha as u64 * beta as u64 * eps_p) % 2 == 0 { 1 } else { -1 };
        if beta % 2 == 1 {
            s *= legendre(&u, p);
        }
        if alpha % 2 == 1 {
            s *= legendre(&v, p);
        }
        s
    }
}

/// Legendre symbol for an odd prime by Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = r.modpow(&BigInt::from((p - 1) / 2), &pb);
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// Primes at which `(D/m, m)` ramifies, ascending. The candidates are the
/// primes dividing `2D`; the infinite place is split since both generators
/// square to positive numbers.
pub fn algebra_discriminant(disc: u64, m: u64) -> Result<Vec<u64>, QuatError> {
    if disc == 0 || !is_squarefree(&BigInt::from(disc)) {
        return Err(QuatError::NotSquarefree(disc));
    }
    if m == 0 || disc % m != 0 {
        return Err(QuatError::NotADivisor { disc, m });
    }
    let a = BigInt::from(disc / m);
    let b = BigInt::from(m);
    let mut candidates: Vec<u64> =
        factor_integer(&BigInt::from(2 * disc)).into_iter().map(|(p, _)| p.to_u64().unwrap()).collect();
    candidates.dedup();
    Ok(candidates.into_iter().filter(|&p| hilbert_symbol(&a, &b, p) == -1).collect())
}
