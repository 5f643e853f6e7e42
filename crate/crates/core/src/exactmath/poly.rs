use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{divisors, BigRat, ExactError, RatMatrix};

/// Dense univariate polynomial over the rationals. `coeffs[i]` is the
/// coefficient of `x^i`; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints<T: Into<BigInt> + Copy>(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRat::from_integer).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: &BigRat) -> Self {
        Self::new(vec![-root.clone(), BigRat::one()])
    }

    pub fn x() -> Self {
        Self::new(vec![BigRat::zero(), BigRat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn leading(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn int_coeffs(&self) -> Result<Vec<BigInt>, ExactError> {
        if !self.is_integral() {
            return Err(ExactError::NotIntegral);
        }
        Ok(self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs.iter().rev().fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ExactError> {
        if divisor.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        self.scale(&(BigRat::one() / lead))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Primitive integer polynomial with the same roots and positive leading
    /// coefficient.
    pub fn primitive_part(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * BigRat::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        for c in ints.iter_mut() {
            *c = &*c / &g * &sign;
        }
        ints
    }

    /// Monic integer polynomial whose roots are `a * r` for the roots `r` of
    /// the primitive part, with `a` its leading coefficient. Returns the
    /// polynomial and `a`.
    pub fn monic_substitution(&self) -> (UniPoly, BigInt) {
        let ints = self.primitive_part();
        let n = ints.len() - 1;
        let a = ints[n].clone();
        // a^(n-1) f(x/a) = sum c_i a^(n-1-i) x^i
        let coeffs: Vec<BigInt> = ints
            .iter()
            .enumerate()
            .map(|(i, c)| if i == n { BigInt::one() } else { c * num_traits::pow(a.clone(), n - 1 - i) })
            .collect();
        (UniPoly::from_bigints(&coeffs), a)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Serialised as the little-endian list of coefficient strings.
impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.to_strings())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { "*" } else { "" }, i)?,
            }
        }
        Ok(())
    }
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> BigRat {
    let m = f.degree();
    let n = g.degree();
    if f.is_zero() || g.is_zero() {
        return BigRat::zero();
    }
    let size = m + n;
    if size == 0 {
        return BigRat::one();
    }
    let mut s = RatMatrix::zeros(size, size);
    for r in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s[(r, r + k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s[(n + r, r + k)] = c.clone();
        }
    }
    s.det().expect("square Sylvester matrix")
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn poly_disc(f: &UniPoly) -> Result<BigRat, ExactError> {
    let n = f.degree();
    if f.is_zero() || n < 2 {
        return Err(ExactError::DegreeTooSmall(n));
    }
    let res = resultant(f, &f.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 0 { BigRat::one() } else { -BigRat::one() };
    Ok(sign * res / f.leading())
}

/// All rational roots with multiplicity, ascending.
pub fn rational_roots(f: &UniPoly) -> Vec<BigRat> {
    let mut roots = Vec::new();
    if f.is_zero() {
        return roots;
    }
    let mut g = f.clone();
    while g.degree() > 0 && g.coeff(0).is_zero() {
        roots.push(BigRat::zero());
        g = g.div_rem(&UniPoly::x()).expect("x nonzero").0;
    }
    if g.degree() == 0 {
        return roots;
    }
    let ints = g.primitive_part();
    let lead = ints.last().expect("nonzero").clone();
    let trail = ints[0].clone();
    let mut candidates = Vec::new();
    for p in divisors(&trail) {
        for q in divisors(&lead) {
            let c = BigRat::new(p.clone(), q.clone());
            candidates.push(c.clone());
            candidates.push(-c);
        }
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        let lin = UniPoly::linear(&c);
        loop {
            if g.degree() == 0 || !g.eval(&c).is_zero() {
                break;
            }
            roots.push(c.clone());
            g = g.div_rem(&lin).expect("linear divisor").0;
        }
    }
    roots.sort();
    roots
}
