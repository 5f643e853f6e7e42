//! The degree-6 resolvent of a quintic whose rational roots detect a Galois
//! group inside the Frobenius group of order 20.
//!
//! The roots are approximated p-adically at a prime where the quintic splits
//! completely, so every step is exact modular arithmetic. The resolvent has
//! integer coefficients with an explicit bound, and working modulo a prime
//! power beyond twice that bound recovers them exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::NumFieldError;
use crate::exactmath::{is_prime_u64, mod_u64, next_prime, FpPoly, UniPoly};

const SPLITTING_PRIME_LIMIT: u64 = 1_000_000;
const MAX_TSCHIRNHAUS: i64 = 32;

pub(crate) struct F20Resolvent {
    pub prime: u64,
    pub precision: u32,
    /// Roots are replaced by `x + c x^2` with this `c` to make the resolvent
    /// squarefree.
    pub tschirnhaus: i64,
    pub coeffs: Vec<BigInt>,
    pub rational_root: Option<BigInt>,
}

/// Smallest prime at least `from`, not dividing `disc`, modulo which the
/// monic polynomial `g` has `deg g` distinct roots.
fn splitting_prime(g: &UniPoly, disc: &BigInt, from: u64) -> Result<u64, NumFieldError> {
    let n = g.degree();
    let mut p = from;
    while p < SPLITTING_PRIME_LIMIT {
        if is_prime_u64(p) && mod_u64(disc, p) != 0 {
            let gp = FpPoly::reduce(g, p)?;
            let x = FpPoly::x(p);
            let frob = x.pow_mod(p, &gp).sub(&x);
            if gp.gcd(&frob).degree() == n {
                return Ok(p);
            }
        }
        p = next_prime(p + 1);
    }
    Err(NumFieldError::NoSplittingPrime(SPLITTING_PRIME_LIMIT))
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Newton lifting of a simple root mod `p` to a root mod `p^k`.
fn hensel_lift(coeffs: &[BigInt], root: u64, p: u64, k: u32) -> BigInt {
    let deriv: Vec<BigInt> = coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let pb = BigInt::from(p);
    let target = num_traits::pow(pb.clone(), k as usize);
    let mut r = BigInt::from(root);
    let mut modulus = pb;
    while modulus < target {
        modulus = (&modulus * &modulus).min(target.clone());
        let fr = eval_mod(coeffs, &r, &modulus);
        let dr = eval_mod(&deriv, &r, &modulus);
        r = (&r - fr * inv_mod(&dr, &modulus)).mod_floor(&modulus);
    }
    r
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// The six classes of pentagons on five labelled vertices, each paired with
/// its complementary pentagram. Returned as edge lists of one representative.
fn pentagon_classes() -> Vec<Vec<(usize, usize)>> {
    let edges_of = |cycle: &[usize]| -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> =
            (0..5).map(|i| (cycle[i], cycle[(i + 1) % 5])).map(|(a, b)| (a.min(b), a.max(b))).collect();
        e.sort_unstable();
        e
    };
    let all_pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| ((a + 1)..5).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let rest = [1, 2, 3, 4];
    for a in rest {
        for b in rest {
            for c in rest {
                for d in rest {
                    let cyc = [0, a, b, c, d];
                    let mut seen = [false; 5];
                    if cyc.iter().any(|&v| std::mem::replace(&mut seen[v], true)) || a > d {
                        continue;
                    }
                    let e = edges_of(&cyc);
                    let comp: Vec<(usize, usize)> = all_pairs.iter().copied().filter(|p| !e.contains(p)).collect();
                    if e < comp {
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}

fn product_poly_mod(roots: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for r in roots {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = (&next[i + 1] + c).mod_floor(m);
            next[i] = (&next[i] - c * r).mod_floor(m);
        }
        poly = next;
    }
    poly.iter().map(|c| symmetric(c, m)).collect()
}

/// Resolvent for a monic squarefree integer quintic with discriminant `disc`.
pub(crate) fn f20_resolvent(g: &UniPoly, disc: &BigInt) -> Result<F20Resolvent, NumFieldError> {
    let coeffs = g.int_coeffs()?;
    let p = splitting_prime(g, disc, 7)?;
    let roots_mod_p: Vec<u64> = (0..p).filter(|&x| eval_mod(&coeffs, &BigInt::from(x), &BigInt::from(p)).is_zero()).collect();
    debug_assert_eq!(roots_mod_p.len(), 5);
    let root_bound = BigInt::one() + coeffs[..5].iter().map(|c| c.abs()).max().unwrap_or_default();
    let classes = pentagon_classes();
    let pb = BigInt::from(p);

    for c in 0..=MAX_TSCHIRNHAUS {
        let cb = BigInt::from(c);
        let y_bound = &root_bound + &cb * &root_bound * &root_bound;
        let theta_bound = BigInt::from(100) * num_traits::pow(y_bound, 4);
        let coeff_bound = BigInt::from(64) * num_traits::pow(theta_bound.clone(), 6);
        let mut k = 1u32;
        let mut modulus = pb.clone();
        while modulus <= &coeff_bound * 2 {
            modulus *= &pb;
            k += 1;
        }
        let ys: Vec<BigInt> = roots_mod_p
            .iter()
            .map(|&r| {
                let x = hensel_lift(&coeffs, r, p, k);
                (&x + &cb * &x * &x).mod_floor(&modulus)
            })
            .collect();
        let thetas: Vec<BigInt> = classes
            .iter()
            .map(|edges| {
                let mut s = BigInt::zero();
                for a in 0..5 {
                    for b in (a + 1)..5 {
                        let term = &ys[a] * &ys[b];
                        if edges.contains(&(a, b)) {
                            s += term;
                        } else {
                            s -= term;
                        }
                    }
                }
                (&s * &s).mod_floor(&modulus)
            })
            .collect();
        let r = product_poly_mod(&thetas, &modulus);
        let rp = UniPoly::from_bigints(&r);
        if rp.gcd(&rp.derivative()).degree() > 0 {
            continue;
        }
        // an integer root is bounded by theta_bound, hence equals the
        // symmetric residue of one of the p-adic roots
        let rational_root = thetas
            .iter()
            .map(|t| symmetric(t, &modulus))
            .find(|t| t.abs() <= theta_bound && is_exact_root(&r, t));
        return Ok(F20Resolvent { prime: p, precision: k, tschirnhaus: c, coeffs: r, rational_root });
    }
    Err(NumFieldError::Inconsistent(format!("resolvent stayed inseparable for Tschirnhaus shifts up to {MAX_TSCHIRNHAUS}")))
}

fn is_exact_root(coeffs: &[BigInt], t: &BigInt) -> bool {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_pentagon_classes() {
        let classes = pentagon_classes();
        assert_eq!(classes.len(), 6);
        // with their complements they give all 12 pentagons on 5 vertices
        let mut all: Vec<Vec<(usize, usize)>> = classes.clone();
        for e in &classes {
            let comp: Vec<(usize, usize)> =
                (0..5).flat_map(|a| ((a + 1)..5).map(move |b| (a, b))).filter(|p| !e.contains(p)).collect();
            all.push(comp);
        }
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 12);
        for e in &all {
            let mut degree = [0; 5];
            for &(a, b) in e {
                degree[a] += 1;
                degree[b] += 1;
            }
            assert_eq!(degree, [2; 5]);
        }
    }

    #[test]
    fn lifted_roots_are_roots() {
        let g = UniPoly::from_ints(&[-2, 0, 0, 0, 0, 1]);
        let coeffs = g.int_coeffs().unwrap();
        let p = splitting_prime(&g, &BigInt::from(50000), 7).unwrap();
        let roots: Vec<u64> =
            (0..p).filter(|&x| eval_mod(&coeffs, &BigInt::from(x), &BigInt::from(p)).is_zero()).collect();
        assert_eq!(roots.len(), 5);
        let m = num_traits::pow(BigInt::from(p), 12);
        for r in roots {
            let x = hensel_lift(&coeffs, r, p, 12);
            assert!(eval_mod(&coeffs, &x, &m).is_zero());
        }
    }

    #[test]
    fn frobenius_quintic_has_resolvent_root() {
        let g = UniPoly::from_ints(&[-2, 0, 0, 0, 0, 1]);
        let disc = BigInt::from(50000);
        let res = f20_resolvent(&g, &disc).unwrap();
        assert!(res.rational_root.is_some());
        // x^5 - x - 1 has group S5
        let g = UniPoly::from_ints(&[-1, -1, 0, 0, 0, 1]);
        let res = f20_resolvent(&g, &BigInt::from(2869)).unwrap();
        assert!(res.rational_root.is_none());
    }
}
