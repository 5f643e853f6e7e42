//! Finite-order integer matrices and reduction mod `n`. An integral
//! representation of a finite group that is trivial mod 4 is trivial, which
//! is what makes the mod-2 action on `End(A)` informative.

use num_traits::{One, ToPrimitive};

use crate::exactmath::{IntMatrix, UniPoly};

pub fn is_identity_mod(m: &IntMatrix, n: u64) -> bool {
    m.reduce_mod(n).is_identity() || (n == 1 && m.is_square())
}

/// Smallest `k <= max` with `m^k = I`.
pub fn matrix_order(m: &IntMatrix, max: u64) -> Option<u64> {
    if !m.is_square() {
        return None;
    }
    let mut power = m.clone();
    for k in 1..=max {
        if power.is_identity() {
            return Some(k);
        }
        power = power.mul(m).ok()?;
    }
    None
}

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Phi_d` for
/// the proper divisors `d` of `n`.
pub fn cyclotomic_poly(n: u64) -> UniPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = -1;
    coeffs[n as usize] = 1;
    let mut out = UniPoly::from_ints(&coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        out = out.div_rem(&cyclotomic_poly(d)).expect("nonzero divisor").0;
    }
    out
}

/// Companion matrix of `Phi_n`; it has multiplicative order `n`.
pub fn cyclotomic_companion(n: u64) -> IntMatrix {
    let phi = cyclotomic_poly(n);
    let deg = phi.degree();
    let mut m = IntMatrix::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = One::one();
    }
    for i in 0..deg {
        let c = phi.coeff(i);
        debug_assert!(c.is_integer());
        m[(i, deg - 1)] = -c.to_integer();
    }
    debug_assert!(phi.coeff(deg).to_integer().to_i64() == Some(1));
    m
}
