use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use super::{EndoError, Evidence, TheoremTag, VerdictLine};
use crate::exactmath::{is_square, poly_disc, squarefree_part, UniPoly};
use crate::numfield::{
    dedekind_2maximal, inert_at_2, quad_splitting_at_2, quartic_galois, GaloisLabel, QuadField, SplittingKind,
};

/// How Galois-ness of `E/Q` is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaloisEvidence {
    /// Decide from the polynomial; possible up to degree 4.
    Certify,
    /// Accept the caller's word, recorded as such.
    Asserted,
}

/// Which order of `E` is `End(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderDescriptor {
    /// `Z[x]/(poly)`.
    Equation,
    /// The maximal order.
    Maximal,
}

/// Endomorphism algebra `E = Q[x]/(poly)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoFieldData {
    pub poly: UniPoly,
    pub galois: GaloisEvidence,
    pub order: OrderDescriptor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    Galois,
    TwoMaximal,
    NotWildAt2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisStatus {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub hypothesis: Hypothesis,
    pub status: HypothesisStatus,
    /// `false` when the status rests on a caller assertion.
    pub certified: bool,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Containment {
    Contained,
    NotDetermined,
    HypothesisFails,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContainmentReport {
    pub verdict: Containment,
    pub failing: Vec<Hypothesis>,
    pub checks: Vec<HypothesisCheck>,
    pub line: VerdictLine,
}

fn check(hypothesis: Hypothesis, status: HypothesisStatus, certified: bool, reason: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck { hypothesis, status, certified, reason: reason.into() }
}

fn galois_check(data: &EndoFieldData) -> Result<HypothesisCheck, EndoError> {
    let g = &data.poly;
    let h = Hypothesis::Galois;
    Ok(match g.degree() {
        1 | 2 => check(h, HypothesisStatus::Holds, true, "degree at most 2"),
        3 => {
            let disc = poly_disc(g)?;
            if is_square(&disc).is_some() {
                check(h, HypothesisStatus::Holds, true, format!("cubic with square discriminant {disc}"))
            } else {
                check(h, HypothesisStatus::Fails, true, format!("cubic with non-square discriminant {disc}"))
            }
        }
        4 => {
            let label = quartic_galois(g)?.label;
            let galois = matches!(label, GaloisLabel::C4 | GaloisLabel::V4);
            let status = if galois { HypothesisStatus::Holds } else { HypothesisStatus::Fails };
            check(h, status, true, format!("quartic with Galois group {label}"))
        }
        n if data.galois == GaloisEvidence::Asserted => {
            check(h, HypothesisStatus::Holds, false, format!("degree {n}: Galois by caller assertion"))
        }
        n => check(h, HypothesisStatus::Unknown, false, format!("degree {n}: Galois-ness not certified and not asserted")),
    })
}

/// Checks the three hypotheses under which the endomorphism field lies in
/// the 2-torsion field: `E/Q` Galois, `End(A)` maximal at 2, and 2 not
/// wildly ramified in `E`. "Contained" needs all three to hold.
pub fn endo_field_containment(data: &EndoFieldData) -> Result<ContainmentReport, EndoError> {
    let g = &data.poly;
    if g.degree() == 0 || !g.is_integral() || !g.is_monic() {
        return Err(EndoError::Malformed("defining polynomial must be monic of positive degree with integer coefficients".into()));
    }
    let mut checks = vec![galois_check(data)?];

    let dedekind = if g.degree() >= 2 { Some(dedekind_2maximal(g)?) } else { None };
    let equation_maximal = dedekind.as_ref().is_none_or(|d| d.maximal);
    checks.push(match (data.order, equation_maximal) {
        (OrderDescriptor::Maximal, _) => check(Hypothesis::TwoMaximal, HypothesisStatus::Holds, true, "maximal order"),
        (OrderDescriptor::Equation, true) => {
            check(Hypothesis::TwoMaximal, HypothesisStatus::Holds, true, "Dedekind's criterion at 2 holds")
        }
        (OrderDescriptor::Equation, false) => {
            check(Hypothesis::TwoMaximal, HypothesisStatus::Fails, true, "Dedekind's criterion at 2 fails")
        }
    });

    let wild = Hypothesis::NotWildAt2;
    checks.push(match g.degree() {
        1 => check(wild, HypothesisStatus::Holds, true, "E = Q"),
        2 => {
            let d = squarefree_part(&poly_disc(g)?);
            let d = d.to_i64().ok_or_else(|| EndoError::Malformed("discriminant too large".into()))?;
            let split = quad_splitting_at_2(&QuadField::new(d)?);
            let status =
                if split.kind == SplittingKind::RamifiedWild { HypothesisStatus::Fails } else { HypothesisStatus::Holds };
            check(wild, status, true, format!("2 is {:?} in Q(sqrt({d}))", split.kind))
        }
        _ if inert_at_2(g)? => check(wild, HypothesisStatus::Holds, true, "2 is inert"),
        _ if equation_maximal => {
            // the equation order is maximal at 2, so the factorisation mod 2
            // gives the primes above 2 with their ramification indices
            let shape = &dedekind.as_ref().expect("degree >= 2").shape;
            let even = shape.iter().any(|&(_, e)| e % 2 == 0);
            let status = if even { HypothesisStatus::Fails } else { HypothesisStatus::Holds };
            check(wild, status, true, format!("ramification indices from the factorisation mod 2: {shape:?}"))
        }
        _ => check(wild, HypothesisStatus::Unknown, false, "not determined: 2 divides the index of the equation order"),
    });

    let failing: Vec<Hypothesis> =
        checks.iter().filter(|c| c.status == HypothesisStatus::Fails).map(|c| c.hypothesis).collect();
    let all_hold = checks.iter().all(|c| c.status == HypothesisStatus::Holds);
    let verdict = if !failing.is_empty() {
        Containment::HypothesisFails
    } else if all_hold {
        Containment::Contained
    } else {
        Containment::NotDetermined
    };
    let statement = match verdict {
        Containment::Contained => "L is contained in K(A[2])".to_string(),
        Containment::NotDetermined => "not determined".to_string(),
        Containment::HypothesisFails => format!("hypothesis fails: {failing:?}"),
    };
    let line = VerdictLine::new(
        TheoremTag::EndoFieldIn2Torsion,
        Evidence::Exact,
        statement,
        json!({ "poly": g, "order": data.order, "galois": data.galois, "negative_disc": poly_disc(g).map(|d| d.is_negative()).unwrap_or(false) }),
    );
    Ok(ContainmentReport { verdict, failing, checks, line })
}
