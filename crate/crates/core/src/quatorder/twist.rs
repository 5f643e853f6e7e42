use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{QuatError, QuatOrder, Quaternion};
use crate::exactmath::{integer_left_kernel, BigRat, IntMatrix, RatMatrix};

/// An order with a principal polarisation `mu` (`mu^2 + D = 0`) and a twist
/// `chi`: trace zero, in the order and its normaliser, anticommuting with
/// `mu`, with `-nrd(chi)` a positive divisor of `D`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistedOrder {
    #[serde(skip)]
    pub order: QuatOrder,
    pub mu: Quaternion,
    pub chi: Quaternion,
    /// `nrd(chi)` as computed, negative for the twists found here.
    #[serde(serialize_with = "crate::exactmath::ser::bigint")]
    pub nrd: BigInt,
    /// `-nrd(chi)`.
    #[serde(serialize_with = "crate::exactmath::ser::bigint")]
    pub norm: BigInt,
}

fn check_polarization(order: &QuatOrder, mu: &Quaternion) -> Result<(), QuatError> {
    let alg = order.algebra();
    if !order.contains(mu) {
        return Err(QuatError::BadPolarization(format!("{mu} is not in the order")));
    }
    if !mu.trd().is_zero() {
        return Err(QuatError::BadPolarization(format!("trd({mu}) is not zero")));
    }
    let sq = alg.mul(mu, mu);
    let minus_d = Quaternion::from_ints(-(alg.disc() as i64), 0, 0, 0);
    if sq != minus_d {
        return Err(QuatError::BadPolarization(format!("{mu}^2 = {sq}, expected -{}", alg.disc())));
    }
    Ok(())
}

/// Rechecks every defining condition of a twist from scratch.
pub fn check_twist(order: &QuatOrder, mu: &Quaternion, chi: &Quaternion) -> Result<TwistedOrder, QuatError> {
    check_polarization(order, mu)?;
    let alg = order.algebra();
    let fail = |why: String| Err(QuatError::NotATwist(format!("{chi}: {why}")));
    if !order.contains(chi) {
        return fail("not in the order".into());
    }
    if !chi.trd().is_zero() {
        return fail("nonzero trace".into());
    }
    let anti = &alg.mul(mu, chi) + &alg.mul(chi, mu);
    if !anti.is_zero() {
        return fail("does not anticommute with mu".into());
    }
    let nrd = alg.nrd(chi);
    let norm = -nrd.clone();
    let d = BigRat::from_integer(BigInt::from(alg.disc()));
    if !norm.is_integer() || !norm.is_positive() || !(&d / &norm).is_integer() {
        return fail(format!("-nrd = {norm} does not divide {}", alg.disc()));
    }
    if !order.normalizes(chi) {
        return fail("does not normalise the order".into());
    }
    Ok(TwistedOrder {
        order: order.clone(),
        mu: mu.clone(),
        chi: chi.clone(),
        nrd: nrd.to_integer(),
        norm: norm.to_integer(),
    })
}

/// All twists of `(order, mu)` up to sign, sorted by norm.
///
/// The candidates live in the rank-2 sublattice of trace-zero elements
/// anticommuting with `mu`, on which `-nrd` is positive definite, so the
/// search over values at most `D` is finite.
pub fn twist_search(order: &QuatOrder, mu: &Quaternion) -> Result<Vec<TwistedOrder>, QuatError> {
    check_polarization(order, mu)?;
    let alg = order.algebra();
    let basis = order.basis();

    // row s: trd(e_s) followed by the coordinates of mu e_s + e_s mu
    let rows: Vec<Vec<BigRat>> = basis
        .iter()
        .map(|e| {
            let anti = &alg.mul(mu, e) + &alg.mul(e, mu);
            std::iter::once(e.trd()).chain(anti.coords().iter().cloned()).collect()
        })
        .collect();
    let conditions = RatMatrix::from_rows(&rows).expect("4x5");
    let scale = conditions.common_denominator();
    let kernel: IntMatrix = integer_left_kernel(&conditions.scaled_to_int(&scale));
    if kernel.rows() != 2 {
        return Err(QuatError::BadPolarization(format!("anticommutant has rank {}", kernel.rows())));
    }
    let to_quat = |row: &[BigInt]| -> Quaternion {
        let mut acc = Quaternion::zero();
        for (c, e) in row.iter().zip(&basis) {
            acc = &acc + &e.scale(&BigRat::from_integer(c.clone()));
        }
        acc
    };
    let v1 = to_quat(kernel.row(0));
    let v2 = to_quat(kernel.row(1));

    // Q(s, t) = -nrd(s v1 + t v2) = a s^2 + b s t + c t^2
    let a = -alg.nrd(&v1);
    let c = -alg.nrd(&v2);
    let b = -alg.nrd(&(&v1 + &v2)) - &a - &c;
    let (a, b, c) = (a.to_integer(), b.to_integer(), c.to_integer());
    let four = BigInt::from(4);
    let det = &four * &a * &c - &b * &b;
    if !a.is_positive() || !det.is_positive() {
        return Err(QuatError::BadPolarization("norm form on the anticommutant is not definite".into()));
    }
    let bound = BigInt::from(alg.disc());
    // Q <= N forces s^2 <= 4cN/det and t^2 <= 4aN/det
    let s_max = (&four * &c * &bound).div_floor(&det).sqrt();
    let t_max = (&four * &a * &bound).div_floor(&det).sqrt();

    let mut found = Vec::new();
    let mut s = -s_max.clone();
    while s <= s_max {
        let mut t = -t_max.clone();
        while t <= t_max {
            // one representative per sign class
            let canonical = s.is_positive() || (s.is_zero() && t.is_positive());
            if canonical {
                let q = &a * &s * &s + &b * &s * &t + &c * &t * &t;
                if q <= bound && bound.is_multiple_of(&q) {
                    let chi = &v1.scale(&BigRat::from_integer(s.clone())) + &v2.scale(&BigRat::from_integer(t.clone()));
                    if order.normalizes(&chi) {
                        found.push(TwistedOrder {
                            order: order.clone(),
                            mu: mu.clone(),
                            nrd: -q.clone(),
                            norm: q,
                            chi: chi.up_to_sign(),
                        });
                    }
                }
            }
            t += BigInt::one();
        }
        s += BigInt::one();
    }
    found.sort_by(|x, y| x.norm.cmp(&y.norm).then_with(|| x.chi.to_string().cmp(&y.chi.to_string())));
    Ok(found)
}
