use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactmath::{IntMatrix, UniPoly};
use crate::numfield::DEFAULT_BUDGET;

fn poly(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

fn names(r: &EndoReport) -> Vec<String> {
    r.candidate_names().into_iter().map(String::from).collect()
}

#[test]
fn cp_over_rationals() {
    let r = classify_cp(2, CpBase::Rationals).unwrap();
    assert_eq!(names(&r), vec!["Z", "Q(sqrt(5))"]);
    assert!(r.theorems.contains(&TheoremTag::C5SurfaceOverRationals));

    let r = classify_cp(1, CpBase::Rationals).unwrap();
    assert_eq!(names(&r), vec!["Z"]);
    assert!(r.lines.iter().any(|l| l.theorem == TheoremTag::C3EllipticNoCm));

    let r = classify_cp(3, CpBase::Rationals).unwrap();
    let n = names(&r);
    assert!(n.contains(&"Z".to_string()));
    assert!(n.contains(&"Q(sqrt(-7))".to_string()));
    assert!(n.contains(&"degree-3 subfield of Q(zeta_7)".to_string()));
    let cm: Vec<_> = r.candidates.iter().filter(|c| c.branch == Branch::PossibleCmPower).collect();
    assert_eq!(cm.len(), 1);
    assert_eq!(cm[0].field, "Q(sqrt(-7))");
    assert_eq!(cm[0].algebra, "M_3(Q(sqrt(-7)))");

    assert_eq!(classify_cp(4, CpBase::Rationals).unwrap_err(), EndoError::NotPrime(9));
}

#[test]
fn cp_over_imaginary_quadratic() {
    let err = classify_cp(2, CpBase::ImaginaryQuadratic { d: -131 }).unwrap_err();
    let EndoError::HypothesisFailure(report) = err else { panic!("expected hypothesis failure") };
    assert_eq!(report.status, ReportStatus::HypothesisFailure);
    assert!(report.summary().contains("divides the class number 5"));
    assert!(serde_json::to_string(&report).unwrap().contains("sqrt(13)"));

    // h(-7) = 1
    let r = classify_cp(3, CpBase::ImaginaryQuadratic { d: -7 }).unwrap();
    assert!(r.candidates.iter().any(|c| c.branch == Branch::PossibleCmPower));
    assert!(r.theorems.contains(&TheoremTag::CpGeneralBase));

    assert!(matches!(classify_cp(1, CpBase::ImaginaryQuadratic { d: -1 }), Err(EndoError::HypothesisFailure(_))));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn cp_candidates_respect_degree_and_cm_rules(g in 1u64..40) {
        let p = 2 * g + 1;
        match classify_cp(g, CpBase::Rationals) {
            Err(EndoError::NotPrime(q)) => prop_assert!(!crate::exactmath::is_prime_u64(p) && q == p),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
            Ok(r) => {
                prop_assert!(!r.candidates.is_empty());
                for c in r.candidates.iter().filter(|c| c.branch != Branch::PossibleCmPower) {
                    prop_assert!(((p - 1) as usize) % c.degree == 0 && (c.degree as u64) < p - 1);
                }
                let has_cm = r.candidates.iter().any(|c| c.branch == Branch::PossibleCmPower);
                prop_assert_eq!(has_cm, p % 4 == 3 && g >= 3);
            }
        }
    }
}

#[test]
fn frobenius_quintic_with_cyclic_quartic() {
    let f = poly(&[1, 12, 52, 104, 104, 52]);
    let e = poly(&[3, 4, 2, -1, 1]);
    let r = classify_quintic_jacobian(&f, BaseField::Rationals, Some(&e), DEFAULT_BUDGET, 0).unwrap();
    assert!(r.theorems.contains(&TheoremTag::QuinticFrobenius));
    let text = r.summary();
    assert!(text.contains("cyclic (C4)"));
    assert!(text.contains("L = EK"));
    assert!(text.contains("L is contained in K(J[2])"));
    let line = r.lines.iter().find(|l| l.data.get("inert_at_2").is_some()).unwrap();
    assert_eq!(line.data["inert_at_2"], true);
    assert!(r.lines.iter().all(|l| l.evidence == Evidence::Exact));
}

#[test]
fn dihedral_quintic_with_real_quadratic() {
    let f = poly(&[-16, 88, 95, 107, -19, 1]);
    for e in [poly(&[-13, 0, 1]), poly(&[-3, -1, 1])] {
        let r = classify_quintic_jacobian(&f, BaseField::Rationals, Some(&e), DEFAULT_BUDGET, 0).unwrap();
        assert!(r.theorems.contains(&TheoremTag::QuinticDihedral));
        let line = r.lines.iter().find(|l| l.theorem == TheoremTag::RealMultiplicationDisc5Mod8).unwrap();
        assert_eq!(line.data["disc"], 13);
        assert_eq!(line.data["disc_mod_8"], 5);
        assert!(line.statement.ends_with("condition satisfied"));
        assert!(names(&r).contains(&"Q(sqrt(13))".to_string()));
    }
}

#[test]
fn cyclic_quintic_over_rationals() {
    let f = poly(&[-1, -2, 5, 2, -4, 1]);
    let r = classify_quintic_jacobian(&f, BaseField::Rationals, None, DEFAULT_BUDGET, 0).unwrap();
    assert!(r.lines.iter().any(|l| l.statement == "L = Q"));
    assert!(r.summary().contains("not a degree 4 CM field"));
    assert!(r.lines.iter().any(|l| l.evidence == Evidence::MonteCarlo));
    assert_eq!(names(&r), vec!["Z", "Q(sqrt(5))"]);
    // a CM candidate is not admissible here
    let r = classify_quintic_jacobian(&f, BaseField::Rationals, Some(&poly(&[1, -1, 1, -1, 1])), DEFAULT_BUDGET, 0)
        .unwrap();
    assert_eq!(names(&r), vec!["Z", "Q(sqrt(5))"]);
}

#[test]
fn reports_are_byte_identical() {
    let f = poly(&[-1, -2, 5, 2, -4, 1]);
    let run = || {
        serde_json::to_string(&classify_quintic_jacobian(&f, BaseField::Quadratic { d: 5 }, None, 120, 7).unwrap())
            .unwrap()
    };
    assert_eq!(run(), run());
    let cp = || serde_json::to_string(&classify_cp(3, CpBase::Rationals).unwrap()).unwrap();
    assert_eq!(cp(), cp());
}

#[test]
fn containment_examples() {
    let r = endo_field_containment(&EndoFieldData {
        poly: poly(&[3, 0, 1]),
        galois: GaloisEvidence::Certify,
        order: OrderDescriptor::Equation,
    })
    .unwrap();
    assert_eq!(r.verdict, Containment::HypothesisFails);
    assert!(r.failing.contains(&Hypothesis::TwoMaximal));

    let r = endo_field_containment(&EndoFieldData {
        poly: poly(&[-1, -1, 1]),
        galois: GaloisEvidence::Certify,
        order: OrderDescriptor::Maximal,
    })
    .unwrap();
    assert_eq!(r.verdict, Containment::Contained);

    let r = endo_field_containment(&EndoFieldData {
        poly: poly(&[3, 4, 2, -1, 1]),
        galois: GaloisEvidence::Certify,
        order: OrderDescriptor::Equation,
    })
    .unwrap();
    assert_eq!(r.verdict, Containment::Contained);
    assert!(r.checks.iter().all(|c| c.certified));
}

#[test]
fn containment_needs_certified_hypotheses() {
    // Q(sqrt(3)): 2 ramifies wildly
    let r = endo_field_containment(&EndoFieldData {
        poly: poly(&[-3, 0, 1]),
        galois: GaloisEvidence::Certify,
        order: OrderDescriptor::Maximal,
    })
    .unwrap();
    assert_eq!(r.failing, vec![Hypothesis::NotWildAt2]);

    // non-Galois cubic x^3 - 2
    let r = endo_field_containment(&EndoFieldData {
        poly: poly(&[-2, 0, 0, 1]),
        galois: GaloisEvidence::Certify,
        order: OrderDescriptor::Maximal,
    })
    .unwrap();
    assert!(r.failing.contains(&Hypothesis::Galois));

    // the sextic Phi_7 without an assertion cannot be called contained
    let phi7 = cyclotomic_poly(7);
    let unasserted =
        endo_field_containment(&EndoFieldData { poly: phi7.clone(), galois: GaloisEvidence::Certify, order: OrderDescriptor::Maximal })
            .unwrap();
    assert_eq!(unasserted.verdict, Containment::NotDetermined);
    let asserted =
        endo_field_containment(&EndoFieldData { poly: phi7, galois: GaloisEvidence::Asserted, order: OrderDescriptor::Maximal })
            .unwrap();
    assert_eq!(asserted.verdict, Containment::Contained);
    assert!(!asserted.checks[0].certified);

    assert!(matches!(
        endo_field_containment(&EndoFieldData {
            poly: poly(&[1, 0, 2]),
            galois: GaloisEvidence::Certify,
            order: OrderDescriptor::Equation
        }),
        Err(EndoError::Malformed(_))
    ));
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_poly(1), poly(&[-1, 1]));
    assert_eq!(cyclotomic_poly(4), poly(&[1, 0, 1]));
    assert_eq!(cyclotomic_poly(6), poly(&[1, -1, 1]));
    assert_eq!(cyclotomic_poly(12), poly(&[1, 0, -1, 0, 1]));
    for n in [2, 3, 4, 5, 6, 8, 10, 12] {
        assert_eq!(matrix_order(&cyclotomic_companion(n), 50), Some(n));
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&rows).unwrap()
}

#[test]
fn congruence_kernel_mod_4_squares_to_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, n, 50);
        let mut t = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                t[(i, j)] += &m[(i, j)] * 2;
            }
        }
        assert!(is_identity_mod(&t, 2));
        assert!(is_identity_mod(&t.mul(&t).unwrap(), 4));
    }
}

#[test]
fn finite_order_matrices_are_not_trivial_mod_4() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for n in [2u64, 3, 4, 5, 6] {
        let c = cyclotomic_companion(n);
        let d = c.rows();
        assert!(!is_identity_mod(&c, 4));
        // conjugate by unimodular matrices built from elementary moves
        for _ in 0..20 {
            let mut u = IntMatrix::identity(d);
            let mut u_inv = IntMatrix::identity(d);
            for _ in 0..4 {
                if d < 2 {
                    break;
                }
                let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
                if a == b {
                    continue;
                }
                let k: i64 = rng.gen_range(-3..=3);
                let mut e = IntMatrix::identity(d);
                e[(a, b)] = k.into();
                let mut e_inv = IntMatrix::identity(d);
                e_inv[(a, b)] = (-k).into();
                u = u.mul(&e).unwrap();
                u_inv = e_inv.mul(&u_inv).unwrap();
            }
            assert!(u.mul(&u_inv).unwrap().is_identity());
            let conj = u.mul(&c).unwrap().mul(&u_inv).unwrap();
            assert_eq!(matrix_order(&conj, 20), Some(n));
            assert!(!is_identity_mod(&conj, 4));
            checked += 1;
        }
    }
    assert_eq!(checked, 100);
    assert!(is_identity_mod(&IntMatrix::identity(3), 4));
}
