//! Number-field computations over the rationals: quadratic fields and the
//! prime 2, imaginary-quadratic class numbers, Dedekind's criterion at 2,
//! Galois groups of quartics and quintics, and subfields of cyclotomic fields.

mod cyclo;
mod galois;
mod resolvent;

pub use cyclo::{cyclotomic_subfields, CycloCertificate, CycloSubfield, MAX_CYCLOTOMIC_PRIME};
pub use galois::{
    allowed_cycle_types, quartic_galois, quintic_galois, Confidence, CycleTypeCount, GaloisCertificate, GaloisLabel,
    GaloisResult, QuarticResolvent, QuinticResolvent, DEFAULT_BUDGET,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{
    factor_mod_p, is_squarefree, poly_disc, rational_roots, squarefree_part, BigRat, ExactError, FpPoly, UniPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumFieldError {
    #[error("{0} is not negative")]
    NotImaginary(i64),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("Q(sqrt({0})) is not a quadratic field")]
    NotQuadratic(i64),
    #[error("polynomial is not monic with integer coefficients")]
    NotMonic,
    #[error("polynomial has degree {0}, expected 5")]
    NotQuintic(usize),
    #[error("polynomial has degree {0}, expected 4")]
    NotQuartic(usize),
    #[error("polynomial has zero discriminant")]
    ZeroDiscriminant,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("p = {0} exceeds the supported bound {MAX_CYCLOTOMIC_PRIME}")]
    PrecisionBoundExceeded(u64),
    #[error("splitting field has degree larger than 2: irreducible factor of degree {0}")]
    SplittingFieldNotQuadratic(usize),
    #[error("no prime below {0} splits the polynomial completely")]
    NoSplittingPrime(u64),
    #[error("contradictory certificates: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The quadratic field `Q(sqrt(d))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadField {
    pub d: i64,
    /// Fundamental discriminant: `d` when `d = 1 mod 4`, else `4d`.
    pub disc: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self, NumFieldError> {
        if d == 0 || d == 1 {
            return Err(NumFieldError::NotQuadratic(d));
        }
        if !is_squarefree(&BigInt::from(d)) {
            return Err(NumFieldError::NotSquarefree(d));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(QuadField { d, disc })
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    /// Minimal polynomial of `sqrt(d)`.
    pub fn defining_poly(&self) -> UniPoly {
        UniPoly::from_ints(&[-self.d, 0, 1])
    }

    /// Minimal polynomial of a generator of the ring of integers.
    pub fn maximal_order_poly(&self) -> UniPoly {
        if self.d.rem_euclid(4) == 1 {
            UniPoly::from_ints(&[(1 - self.d) / 4, -1, 1])
        } else {
            self.defining_poly()
        }
    }

    pub fn name(&self) -> String {
        format!("Q(sqrt({}))", self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplittingKind {
    Split,
    Inert,
    RamifiedWild,
}

/// One prime above 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeAbove2 {
    pub ramification_index: u32,
    pub residue_degree: u32,
    pub residue_field_size: u64,
    /// Order of the multiplicative group of the residue field, `2^f - 1`.
    pub multiplicative_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingAt2 {
    pub field: QuadField,
    pub kind: SplittingKind,
    pub primes: Vec<PrimeAbove2>,
}

impl SplittingAt2 {
    pub fn residue_orders(&self) -> Vec<u64> {
        self.primes.iter().map(|p| p.multiplicative_order).collect()
    }
}

fn prime_above_2(e: u32, f: u32) -> PrimeAbove2 {
    PrimeAbove2 {
        ramification_index: e,
        residue_degree: f,
        residue_field_size: 1 << f,
        multiplicative_order: (1 << f) - 1,
    }
}

/// Decomposition of 2 in a quadratic field, read off from `d mod 8`.
pub fn quad_splitting_at_2(field: &QuadField) -> SplittingAt2 {
    let (kind, primes) = match field.d.rem_euclid(8) {
        1 => (SplittingKind::Split, vec![prime_above_2(1, 1), prime_above_2(1, 1)]),
        5 => (SplittingKind::Inert, vec![prime_above_2(1, 2)]),
        _ => (SplittingKind::RamifiedWild, vec![prime_above_2(2, 1)]),
    };
    SplittingAt2 { field: field.clone(), kind, primes }
}

/// A reduced primitive binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// All reduced primitive positive definite forms of discriminant `disc < 0`.
pub fn reduced_forms(disc: i64) -> Vec<ReducedForm> {
    let mut out = Vec::new();
    let n = -disc;
    // a <= sqrt(|disc| / 3)
    let mut a = 1;
    while 3 * a * a <= n {
        for b in (-a + 1)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (a == c && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(ReducedForm { a, b, c });
        }
        a += 1;
    }
    out
}

/// Class number of `Q(sqrt(d))` for squarefree `d < 0`, by counting reduced
/// forms of the fundamental discriminant.
pub fn class_number_imag(d: i64) -> Result<u64, NumFieldError> {
    if d >= 0 {
        return Err(NumFieldError::NotImaginary(d));
    }
    let field = QuadField::new(d)?;
    Ok(reduced_forms(field.disc).len() as u64)
}

/// Factorisation pattern and verdict of Dedekind's criterion at 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dedekind2 {
    pub maximal: bool,
    /// `(degree, multiplicity)` of each irreducible factor mod 2.
    pub shape: Vec<(usize, usize)>,
    /// Irreducible factors mod 2 as little-endian 0/1 coefficient lists.
    pub factors: Vec<Vec<u64>>,
    /// `(g - prod t_i^e_i) / 2` reduced mod 2.
    pub obstruction: Vec<u64>,
    /// `gcd(obstruction, repeated part)` over F_2.
    pub common_factor: Vec<u64>,
}

fn require_monic(g: &UniPoly) -> Result<Vec<BigInt>, NumFieldError> {
    if !g.is_integral() || !g.is_monic() || g.degree() == 0 {
        return Err(NumFieldError::NotMonic);
    }
    Ok(g.int_coeffs()?)
}

/// Dedekind's criterion: is `Z[x]/(g)` maximal at 2?
pub fn dedekind_2maximal(g: &UniPoly) -> Result<Dedekind2, NumFieldError> {
    require_monic(g)?;
    let factors = factor_mod_p(g, 2)?;
    let mut lift = UniPoly::one();
    let mut repeated = FpPoly::new(2, vec![1]);
    for (t, e) in &factors {
        let tl = t.to_uni();
        for _ in 0..*e {
            lift = lift.mul(&tl);
        }
        for _ in 1..*e {
            repeated = repeated.mul(t);
        }
    }
    let diff = g.sub(&lift).scale(&BigRat::new(BigInt::one(), BigInt::from(2)));
    let obstruction = FpPoly::reduce(&diff, 2)?;
    let common = if repeated.degree() == 0 {
        FpPoly::new(2, vec![1])
    } else if obstruction.is_zero() {
        repeated.clone()
    } else {
        obstruction.gcd(&repeated)
    };
    Ok(Dedekind2 {
        maximal: common.degree() == 0,
        shape: factors.iter().map(|(t, e)| (t.degree(), *e)).collect(),
        factors: factors.iter().map(|(t, _)| t.coeffs().to_vec()).collect(),
        obstruction: obstruction.coeffs().to_vec(),
        common_factor: common.monic().coeffs().to_vec(),
    })
}

/// Whether `g` stays irreducible modulo 2.
pub fn inert_at_2(g: &UniPoly) -> Result<bool, NumFieldError> {
    require_monic(g)?;
    let factors = factor_mod_p(g, 2)?;
    Ok(factors.len() == 1 && factors[0].1 == 1 && factors[0].0.degree() == g.degree())
}

/// The splitting field of a polynomial all of whose irreducible factors
/// have degree at most 2, given as the squarefree `d` of `Q(sqrt(d))`, or
/// `None` when every root is rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSplitting {
    pub rational_roots: Vec<String>,
    pub quadratic_factor: Option<UniPoly>,
    #[serde(serialize_with = "crate::exactmath::ser::opt_bigint")]
    pub discriminant: Option<BigInt>,
    pub field: Option<QuadField>,
}

pub fn quadratic_splitting_field(f: &UniPoly) -> Result<QuadraticSplitting, NumFieldError> {
    if !f.is_integral() || f.is_zero() {
        return Err(ExactError::NotIntegral.into());
    }
    let roots = rational_roots(f);
    let mut rest = f.clone();
    for r in &roots {
        rest = rest.div_rem(&UniPoly::linear(r))?.0;
    }
    let root_strings: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
    match rest.degree() {
        0 => Ok(QuadraticSplitting { rational_roots: root_strings, quadratic_factor: None, discriminant: None, field: None }),
        2 => {
            let disc = poly_disc(&rest)?;
            let d = squarefree_part(&disc).to_i64().expect("small discriminant");
            let disc_int = disc.to_integer();
            Ok(QuadraticSplitting {
                rational_roots: root_strings,
                quadratic_factor: Some(rest.monic()),
                discriminant: Some(disc_int),
                field: Some(QuadField::new(d)?),
            })
        }
        n => Err(NumFieldError::SplittingFieldNotQuadratic(n)),
    }
}

pub(crate) fn is_square_int(n: &BigInt) -> bool {
    !n.is_negative() && crate::exactmath::isqrt_exact(n).is_some()
}

pub(crate) fn is_square_rat(q: &BigRat) -> bool {
    q.is_zero() || crate::exactmath::is_square(q).is_some()
}

#[cfg(test)]
mod tests;
