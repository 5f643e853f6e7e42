use serde::Serialize;
use serde_json::json;

use super::{Branch, Candidate, EndoError, EndoReport, Evidence, ReportStatus, TheoremTag, VerdictLine};
use crate::exactmath::{is_prime_u64, poly_disc, squarefree_part, UniPoly};
use crate::numfield::{class_number_imag, cyclotomic_subfields, quad_splitting_at_2, NumFieldError, QuadField};

/// Base field of an abelian variety whose 2-torsion field is cyclic of
/// prime degree `p = 2g + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CpBase {
    Rationals,
    ImaginaryQuadratic { d: i64 },
}

const CLASS_NUMBER_CAVEAT: &str = "the class-number condition cannot be dropped: \
x^5 - 19x^4 + 107x^3 + 95x^2 + 88x - 16 has Galois group D5 with splitting field the Hilbert class field \
of Q(sqrt(-131)), whose class number is 5; over that field its 2-torsion group is C5 while the \
endomorphism algebra of the jacobian is Q(sqrt(13)), not a subfield of Q(zeta_5)";

fn subfield_candidates(p: u64, theorem: TheoremTag) -> Result<Vec<Candidate>, EndoError> {
    let mut out = Vec::new();
    for sub in cyclotomic_subfields(p)? {
        if sub.degree as u64 == p - 1 {
            continue;
        }
        let cand = match sub.degree {
            1 => Candidate::trivial(theorem),
            2 => {
                let d = squarefree_part(&poly_disc(&sub.period_poly)?);
                let name = format!("Q(sqrt({d}))");
                Candidate {
                    algebra: name.clone(),
                    field: name,
                    degree: 2,
                    polynomial: Some(sub.period_poly),
                    branch: Branch::Subfield,
                    theorem,
                }
            }
            e => {
                let name = format!("degree-{e} subfield of Q(zeta_{p})");
                Candidate {
                    algebra: name.clone(),
                    field: name,
                    degree: e,
                    polynomial: Some(sub.period_poly),
                    branch: Branch::Subfield,
                    theorem,
                }
            }
        };
        out.push(cand);
    }
    Ok(out)
}

fn cm_power_candidate(g: u64, p: u64, theorem: TheoremTag) -> Candidate {
    Candidate {
        algebra: format!("M_{g}(Q(sqrt(-{p})))"),
        field: format!("Q(sqrt(-{p}))"),
        degree: 2,
        polynomial: Some(UniPoly::from_ints(&[p as i64, 0, 1])),
        branch: Branch::PossibleCmPower,
        theorem,
    }
}

/// Possible endomorphism algebras of a `g`-dimensional abelian variety whose
/// 2-torsion field has Galois group `C_p`, `p = 2g + 1`.
pub fn classify_cp(g: u64, base: CpBase) -> Result<EndoReport, EndoError> {
    let p = 2 * g + 1;
    if g == 0 || !is_prime_u64(p) {
        return Err(EndoError::NotPrime(p));
    }
    let mut report = EndoReport::new(json!({ "g": g, "p": p, "base": base }));
    let cm_power = p % 4 == 3;

    match base {
        CpBase::Rationals => {
            let tag = TheoremTag::CpOverRationals;
            report.candidates = subfield_candidates(p, tag)?;
            report.push(VerdictLine::new(
                tag,
                Evidence::Exact,
                format!("End^0(A) is a proper subfield of Q(zeta_{p}), or A is geometrically a power of a CM elliptic curve"),
                json!({ "subfield_degrees": report.candidates.iter().map(|c| c.degree).collect::<Vec<_>>() }),
            ));
            if cm_power && g >= 3 {
                report.candidates.push(cm_power_candidate(g, p, tag));
                report.push(VerdictLine::new(
                    tag,
                    Evidence::Exact,
                    format!("possible branch: A isogenous to the power of an elliptic curve with CM by Q(sqrt(-{p}))"),
                    json!({ "p_mod_4": p % 4, "g": g }),
                ));
            } else {
                report.push(VerdictLine::new(
                    tag,
                    Evidence::Exact,
                    "CM-power branch excluded",
                    json!({ "p_mod_4": p % 4, "g": g }),
                ));
            }
            if g == 1 {
                report.push(VerdictLine::new(
                    TheoremTag::C3EllipticNoCm,
                    Evidence::Exact,
                    "A does not have complex multiplication",
                    json!({}),
                ));
            }
            if g == 2 {
                report.push(VerdictLine::new(
                    TheoremTag::C5SurfaceOverRationals,
                    Evidence::Exact,
                    "either End(A) = Z or End^0_Q(A) = End^0(A) = Q(sqrt(5))",
                    json!({}),
                ));
            }
        }
        CpBase::ImaginaryQuadratic { d } => {
            if d >= 0 {
                return Err(NumFieldError::NotImaginary(d).into());
            }
            let field = QuadField::new(d)?;
            let tag = TheoremTag::CpOverImaginaryQuadratic;
            let h = class_number_imag(d)?;
            let splitting = quad_splitting_at_2(&field);
            let residue_orders = splitting.residue_orders();
            report.push(VerdictLine::new(
                TheoremTag::CpGeneralBase,
                Evidence::Exact,
                format!(
                    "p = {p} divides neither the class number {h} nor any residue multiplicative order {residue_orders:?}: {}",
                    h % p != 0 && residue_orders.iter().all(|o| o % p != 0)
                ),
                json!({
                    "class_number": h,
                    "splitting_at_2": splitting,
                    "residue_orders": residue_orders,
                    "residue_order_reading": "order of the multiplicative group of the residue field, 2^f - 1",
                }),
            ));
            let failure = if g < 2 {
                Some(format!("requires g >= 2, got g = {g}"))
            } else if h % p == 0 {
                Some(format!("p = {p} divides the class number {h} of {}", field.name()))
            } else {
                None
            };
            if let Some(why) = failure {
                report.status = ReportStatus::HypothesisFailure;
                report.push(VerdictLine::new(
                    tag,
                    Evidence::Exact,
                    format!("hypothesis fails: {why}"),
                    json!({ "class_number": h, "caveat": CLASS_NUMBER_CAVEAT }),
                ));
                return Err(EndoError::HypothesisFailure(Box::new(report)));
            }
            report.candidates = subfield_candidates(p, tag)?;
            report.push(VerdictLine::new(
                tag,
                Evidence::Exact,
                format!("End^0(A) is a proper subfield of Q(zeta_{p}), or A is geometrically a power of a CM elliptic curve"),
                json!({ "class_number": h, "subfield_degrees": report.candidates.iter().map(|c| c.degree).collect::<Vec<_>>() }),
            ));
            if cm_power {
                report.candidates.push(cm_power_candidate(g, p, tag));
                report.push(VerdictLine::new(
                    tag,
                    Evidence::Exact,
                    format!("possible branch: A isogenous to the power of an elliptic curve with CM by Q(sqrt(-{p}))"),
                    json!({ "p_mod_4": p % 4 }),
                ));
            } else {
                report.push(VerdictLine::new(tag, Evidence::Exact, "CM-power branch excluded", json!({ "p_mod_4": p % 4 })));
            }
        }
    }
    Ok(report)
}
