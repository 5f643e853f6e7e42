use std::time::Instant;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::exactmath::{factor_integer, isqrt_exact, poly_disc};

fn poly(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

/// Kronecker symbol `(disc / n)` for a fundamental discriminant and `n > 0`.
fn kronecker(disc: i64, n: i64) -> i64 {
    let mut out = 1;
    for (p, e) in factor_integer(&BigInt::from(n)) {
        let p: i64 = p.try_into().unwrap();
        let s: i64 = if p == 2 {
            match disc.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            let r = disc.rem_euclid(p);
            if r == 0 {
                0
            } else {
                let mut acc = 1i64;
                for _ in 0..(p - 1) / 2 {
                    acc = acc * r % p;
                }
                if acc == 1 {
                    1
                } else {
                    -1
                }
            }
        };
        out *= s.pow(e);
    }
    out
}

/// Analytic class number formula `h = -(w / 2|D|) sum_{a<|D|} (D/a) a`.
fn class_number_analytic(d: i64) -> u64 {
    let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    let w = match disc {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let n = -disc;
    let s: i64 = (1..n).map(|a| kronecker(disc, a) * a).sum();
    (-(w * s) / (2 * n)) as u64
}

#[test]
fn splitting_of_two() {
    let s = quad_splitting_at_2(&QuadField::new(5).unwrap());
    assert_eq!(s.kind, SplittingKind::Inert);
    assert_eq!(s.residue_orders(), vec![3]);
    assert_eq!(quad_splitting_at_2(&QuadField::new(3).unwrap()).kind, SplittingKind::RamifiedWild);
    let s = quad_splitting_at_2(&QuadField::new(-7).unwrap());
    assert_eq!(s.kind, SplittingKind::Split);
    assert_eq!(s.residue_orders(), vec![1, 1]);
    assert_eq!(QuadField::new(12), Err(NumFieldError::NotSquarefree(12)));
    assert_eq!(QuadField::new(1), Err(NumFieldError::NotQuadratic(1)));
}

#[test]
fn splitting_partition_matches_discriminant_parity() {
    for d in -500i64..=500 {
        let Ok(field) = QuadField::new(d) else { continue };
        let s = quad_splitting_at_2(&field);
        assert_eq!(s.kind == SplittingKind::RamifiedWild, field.disc % 2 == 0, "d = {d}");
        let efg: u32 = s.primes.iter().map(|p| p.ramification_index * p.residue_degree).sum();
        assert_eq!(efg, 2);
    }
}

#[test]
fn class_numbers() {
    assert_eq!(class_number_imag(-3), Ok(1));
    assert_eq!(class_number_imag(-131), Ok(5));
    assert_eq!(class_number_imag(-23), Ok(3));
    assert_eq!(class_number_imag(5), Err(NumFieldError::NotImaginary(5)));
    assert_eq!(class_number_imag(-8), Err(NumFieldError::NotSquarefree(-8)));
}

#[test]
fn class_numbers_match_analytic_formula() {
    for d in -400i64..0 {
        if QuadField::new(d).is_err() {
            continue;
        }
        assert_eq!(class_number_imag(d).unwrap(), class_number_analytic(d), "d = {d}");
    }
}

#[test]
fn class_number_one() {
    let start = Instant::now();
    let found: Vec<i64> = (-199..0).filter(|&d| class_number_imag(d) == Ok(1)).collect();
    assert_eq!(found, vec![-163, -67, -43, -19, -11, -7, -3, -2, -1]);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn dedekind_examples() {
    let r = dedekind_2maximal(&poly(&[3, 0, 1])).unwrap();
    assert!(!r.maximal);
    assert_eq!(r.shape, vec![(1, 2)]);
    assert!(dedekind_2maximal(&poly(&[1, -1, 1])).unwrap().maximal);
    let r = dedekind_2maximal(&poly(&[3, 4, 2, -1, 1])).unwrap();
    assert!(r.maximal);
    assert_eq!(r.shape, vec![(4, 1)]);
    // Z[sqrt(5)] has index 2 in the maximal order, Z[sqrt(3)] is maximal
    assert!(!dedekind_2maximal(&poly(&[-5, 0, 1])).unwrap().maximal);
    assert!(dedekind_2maximal(&poly(&[-3, 0, 1])).unwrap().maximal);
    assert_eq!(dedekind_2maximal(&UniPoly::from_ints(&[1, 0, 2])), Err(NumFieldError::NotMonic));
}

#[test]
fn inertness() {
    assert!(inert_at_2(&poly(&[3, 4, 2, -1, 1])).unwrap());
    assert!(inert_at_2(&poly(&[1, 1, 1])).unwrap());
    assert!(!inert_at_2(&poly(&[1, 0, 1])).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn odd_discriminant_means_two_maximal(b in -30i64..30, c in -30i64..30, d in -30i64..30, cubic in any::<bool>()) {
        let g = if cubic { poly(&[d, c, b, 1]) } else { poly(&[c, b, 1]) };
        let disc = poly_disc(&g).unwrap().to_integer();
        prop_assume!(disc != BigInt::from(0));
        if disc.bit(0) {
            prop_assert!(dedekind_2maximal(&g).unwrap().maximal);
        }
    }

    // for an irreducible quadratic the equation order has index f with
    // b^2 - 4c = f^2 disc(K), so it is 2-maximal iff f is odd
    #[test]
    fn quadratic_index_parity(b in -40i64..40, c in -40i64..40) {
        let g = poly(&[c, b, 1]);
        let delta = b * b - 4 * c;
        prop_assume!(delta != 0 && isqrt_exact(&BigInt::from(delta)).is_none());
        let d = squarefree_part(&BigRat::from_integer(delta.into())).to_i64().unwrap();
        let field = QuadField::new(d).unwrap();
        let f2 = delta / field.disc;
        let f = isqrt_exact(&BigInt::from(f2)).unwrap();
        prop_assert_eq!(dedekind_2maximal(&g).unwrap().maximal, f.bit(0) == true);
    }
}

#[test]
fn quintic_examples() {
    let start = Instant::now();
    let d5 = quintic_galois(&poly(&[-16, 88, 95, 107, -19, 1]), DEFAULT_BUDGET, 0).unwrap();
    assert_eq!(d5.label, GaloisLabel::D5);
    assert_eq!(d5.certificate.confidence, Confidence::Exact);
    assert!(d5.certificate.disc_square && d5.saw(&[1, 2, 2]));

    let f5 = quintic_galois(&poly(&[1, 12, 52, 104, 104, 52]), DEFAULT_BUDGET, 0).unwrap();
    assert_eq!(f5.label, GaloisLabel::F5);
    assert_eq!(f5.certificate.substitution.as_deref(), Some("x -> x/52"));
    assert_eq!(f5.certificate.confidence, Confidence::Exact);

    let c5 = quintic_galois(&poly(&[-1, -2, 5, 2, -4, 1]), DEFAULT_BUDGET, 0).unwrap();
    assert_eq!(c5.label, GaloisLabel::C5);
    assert_eq!(c5.certificate.confidence, Confidence::MonteCarlo { budget: 200, seed: 0 });

    let pure = quintic_galois(&poly(&[-2, 0, 0, 0, 0, 1]), DEFAULT_BUDGET, 0).unwrap();
    assert_eq!(pure.label, GaloisLabel::F5);
    assert!(pure.saw(&[1, 4]) && !pure.certificate.disc_square);
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn quintic_errors_and_other_groups() {
    assert_eq!(quintic_galois(&poly(&[1, 0, 1]), 10, 0).unwrap_err(), NumFieldError::NotQuintic(2));
    assert_eq!(quintic_galois(&poly(&[0, 0, 1, 0, 0, 1]), 10, 0).unwrap_err(), NumFieldError::ZeroDiscriminant);
    // (x - 1)(x^4 + 1)
    assert!(matches!(quintic_galois(&poly(&[-1, 1, 0, 0, -1, 1]), 10, 0), Err(NumFieldError::Reducible(_))));
    assert_eq!(quintic_galois(&poly(&[-1, -1, 0, 0, 0, 1]), 100, 0).unwrap().label, GaloisLabel::S5);
    // a classical A5 quintic
    assert_eq!(quintic_galois(&poly(&[16, 20, 0, 0, 0, 1]), 100, 0).unwrap().label, GaloisLabel::A5);
    // the real subfield of Q(zeta_11) is cyclic of degree 5
    let period = cyclotomic_subfields(11).unwrap().into_iter().find(|s| s.degree == 5).unwrap();
    assert_eq!(period.period_poly, poly(&[1, 3, -3, -4, 1, 1]));
    let c5 = quintic_galois(&period.period_poly, 100, 3).unwrap();
    assert_eq!(c5.label, GaloisLabel::C5);
}

#[test]
fn quintic_is_deterministic() {
    let f = poly(&[-1, -2, 5, 2, -4, 1]);
    let a = quintic_galois(&f, 50, 7).unwrap();
    let b = quintic_galois(&f, 50, 7).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.certificate.first_prime, crate::exactmath::next_prime(108));
}

#[test]
fn random_quintics_have_sound_certificates() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 50 {
        let mut c: Vec<i64> = (0..5).map(|_| rng.gen_range(-6..=6)).collect();
        c.push(1);
        let Ok(res) = quintic_galois(&poly(&c), 60, checked) else { continue };
        if !res.certificate.irreducibility.starts_with("certified") {
            continue;
        }
        let allowed = allowed_cycle_types(res.label);
        for t in &res.certificate.cycle_types {
            assert!(allowed.contains(&t.cycle_type), "{c:?}: {:?} in {}", t.cycle_type, res.label);
        }
        let cert = &res.certificate;
        assert!(!(cert.disc_square && res.saw(&[1, 4])));
        assert!(!(cert.disc_square && res.saw(&[1, 1, 1, 2])));
        checked += 1;
    }
}

#[test]
fn quartic_examples() {
    let g = quartic_galois(&poly(&[3, 4, 2, -1, 1])).unwrap();
    assert_eq!(g.label, GaloisLabel::C4);
    for t in &g.certificate.cycle_types {
        assert!([vec![1, 1, 1, 1], vec![4], vec![2, 2]].contains(&t.cycle_type));
    }
    assert_eq!(quartic_galois(&poly(&[1, 0, 0, 0, 1])).unwrap().label, GaloisLabel::V4);
    assert_eq!(quartic_galois(&poly(&[1, -1, 1, -1, 1])).unwrap().label, GaloisLabel::C4);
    assert_eq!(quartic_galois(&poly(&[-2, 0, 0, 0, 1])).unwrap().label, GaloisLabel::D4);
    assert_eq!(quartic_galois(&poly(&[1, 1, 0, 0, 1])).unwrap().label, GaloisLabel::S4);
    assert_eq!(quartic_galois(&poly(&[12, 8, 0, 0, 1])).unwrap().label, GaloisLabel::A4);
    assert_eq!(quartic_galois(&poly(&[1, 0, 1])).unwrap_err(), NumFieldError::NotQuartic(2));
    assert!(matches!(quartic_galois(&poly(&[-1, 0, 0, 0, 1])), Err(NumFieldError::Reducible(_))));
}

#[test]
fn quartics_with_quadratic_factors_are_rejected() {
    for (f, g) in [([1, 0, 1], [2, 0, 1]), ([-2, 0, 1], [-3, 0, 1]), ([1, 1, 1], [3, -1, 1]), ([-5, 3, 2], [7, 0, 1])] {
        let h = poly(&f).mul(&poly(&g));
        assert!(matches!(quartic_galois(&h), Err(NumFieldError::Reducible(_))), "{h}");
    }
    // never has a 4-cycle mod p, yet irreducible
    let c = quartic_galois(&poly(&[1, 0, 0, 0, 1])).unwrap().certificate;
    assert!(c.irreducibility.starts_with("certified"), "{}", c.irreducibility);
}

#[test]
fn splitting_field_of_quadratic_times_linear() {
    let f = poly(&[2, 1]).mul(&poly(&[-11, -2, 1]));
    let s = quadratic_splitting_field(&f).unwrap();
    assert_eq!(s.rational_roots, vec!["-2"]);
    assert_eq!(s.discriminant, Some(BigInt::from(48)));
    assert_eq!(s.field.unwrap().d, 3);
    assert_eq!(quadratic_splitting_field(&poly(&[-2, 0, 0, 1])).unwrap_err(), NumFieldError::SplittingFieldNotQuadratic(3));
}

#[test]
fn cyclotomic_examples() {
    let s5 = cyclotomic_subfields(5).unwrap();
    assert_eq!(s5.iter().map(|s| s.degree).collect::<Vec<_>>(), vec![1, 2, 4]);
    assert_eq!(s5[1].period_poly, poly(&[-1, 1, 1]));
    assert_eq!(s5[2].period_poly, poly(&[1, 1, 1, 1, 1]));

    let s7 = cyclotomic_subfields(7).unwrap();
    let quad = s7.iter().find(|s| s.degree == 2).unwrap();
    assert_eq!(poly_disc(&quad.period_poly).unwrap(), BigRat::from_integer((-7).into()));
    let cubic = s7.iter().find(|s| s.degree == 3).unwrap();
    assert_eq!(cubic.period_poly, poly(&[-1, -2, 1, 1]));

    let s3 = cyclotomic_subfields(3).unwrap();
    assert_eq!(s3.iter().map(|s| s.degree).collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(cyclotomic_subfields(9), Err(NumFieldError::NotPrime(9)));
    assert_eq!(cyclotomic_subfields(2), Err(NumFieldError::NotPrime(2)));
    assert_eq!(cyclotomic_subfields(2003), Err(NumFieldError::PrecisionBoundExceeded(2003)));
}

// Gaussian periods evaluated in floating point: their power sums must match
// the ones given by Newton's identities on the exact polynomial.
#[test]
fn period_power_sums_match_float_evaluation() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 29, 31, 37] {
        for sub in cyclotomic_subfields(p).unwrap() {
            let e = sub.degree;
            let poly = &sub.period_poly;
            assert!(poly.is_monic());
            assert_eq!(poly.degree(), e);
            let g = sub.certificate.generator;
            let etas: Vec<(f64, f64)> = (0..e)
                .map(|j| {
                    (0..sub.period_length).fold((0.0, 0.0), |(re, im), t| {
                        let k = crate::exactmath::pow_mod_u64(g, (j + e * t) as u64, p);
                        let angle = 2.0 * std::f64::consts::PI * k as f64 / p as f64;
                        (re + angle.cos(), im + angle.sin())
                    })
                })
                .collect();
            // Newton: p_k + c_{e-1} p_{k-1} + ... + k c_{e-k} = 0 for monic
            let c: Vec<f64> = poly.coeffs().iter().map(|x| x.to_integer().to_f64().unwrap()).collect();
            let mut sums: Vec<f64> = vec![e as f64];
            for k in 1..=e.min(6) {
                let mut s = k as f64 * c[e - k];
                for i in 1..k {
                    s += c[e - i] * sums[k - i];
                }
                sums.push(-s);
                let (float, imag) = etas.iter().fold((0.0, 0.0), |(sr, si), &(re, im)| {
                    let (mut pr, mut pi) = (1.0f64, 0.0f64);
                    for _ in 0..k {
                        (pr, pi) = (pr * re - pi * im, pr * im + pi * re);
                    }
                    (sr + pr, si + pi)
                });
                assert!(imag.abs() < 1e-6 * (1.0 + float.abs()));
                assert!((float - sums[k]).abs() < 1e-6 * (1.0 + float.abs()), "p = {p}, e = {e}, k = {k}");
            }
        }
    }
}

#[test]
fn full_degree_period_poly_is_cyclotomic() {
    for p in [3u64, 5, 7, 11, 101] {
        let subs = cyclotomic_subfields(p).unwrap();
        let top = subs.last().unwrap();
        assert_eq!(top.degree as u64, p - 1);
        assert_eq!(top.period_poly, UniPoly::from_ints(&vec![1i64; p as usize]));
        assert_eq!(subs[0].period_poly, poly(&[1, 1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn products_of_quadratics_never_classify(p in -6i64..7, q in 1i64..30, r in -6i64..7, s in 1i64..30) {
        // positive constant terms with p^2 < 4q keep both factors free of real roots
        prop_assume!(p * p < 4 * q && r * r < 4 * s);
        let h = poly(&[q, p, 1]).mul(&poly(&[s, r, 1]));
        prop_assert!(matches!(quartic_galois(&h), Err(NumFieldError::Reducible(_))));
    }
}
