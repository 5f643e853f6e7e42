//! End-to-end use of the public API: from a quintic to a containment
//! verdict for its candidate endomorphism field.

use endoatlas::endoclass::{
    classify_quintic_jacobian, endo_field_containment, BaseField, Containment, EndoFieldData, GaloisEvidence,
    OrderDescriptor, TheoremTag,
};
use endoatlas::exactmath::UniPoly;
use endoatlas::numfield::{cyclotomic_subfields, quartic_galois, quintic_galois, GaloisLabel, DEFAULT_BUDGET};
use endoatlas::quatorder::{qm_endo_verdict, QmVerdictKind};

#[test]
fn frobenius_quintic_to_containment() {
    let f = UniPoly::from_ints(&[1, 12, 52, 104, 104, 52]);
    assert_eq!(quintic_galois(&f, DEFAULT_BUDGET, 0).unwrap().label, GaloisLabel::F5);
    let e = UniPoly::from_ints(&[3, 4, 2, -1, 1]);
    let report = classify_quintic_jacobian(&f, BaseField::Rationals, Some(&e), DEFAULT_BUDGET, 0).unwrap();
    assert!(report.theorems.contains(&TheoremTag::EndoFieldIn2Torsion));
    let direct = endo_field_containment(&EndoFieldData { poly: e, galois: GaloisEvidence::Certify, order: OrderDescriptor::Equation })
        .unwrap();
    assert_eq!(direct.verdict, Containment::Contained);
}

#[test]
fn cyclotomic_quartic_is_cyclic() {
    let sub = cyclotomic_subfields(5).unwrap().into_iter().find(|s| s.degree == 4).unwrap();
    assert_eq!(quartic_galois(&sub.period_poly).unwrap().label, GaloisLabel::C4);
    let quadratic = cyclotomic_subfields(5).unwrap().into_iter().find(|s| s.degree == 2).unwrap();
    assert_eq!(quadratic.period_poly, UniPoly::from_ints(&[-1, 1, 1]));
}

#[test]
fn qm_verdicts_by_congruence() {
    for (d, m) in [(6, 3), (10, 3), (14, 3), (22, 7)] {
        let Ok(v) = qm_endo_verdict(d, m) else { continue };
        assert_eq!(v.kind, QmVerdictKind::LContainedIn2TorsionField, "({d}, {m})");
    }
    for (d, m) in [(10, 5), (15, 5), (65, 5), (26, 13)] {
        let v = qm_endo_verdict(d, m).unwrap();
        assert_eq!(v.kind, QmVerdictKind::ContainsOneOf);
        assert_eq!(v.candidates.len(), if d % 2 == 0 { 2 } else { 3 }, "({d}, {m})");
    }
}
