use endoatlas::endoclass::{
    classify_cp, classify_quintic_jacobian, endo_field_containment, BaseField, Containment, CpBase, EndoError,
    EndoFieldData, EndoReport, GaloisEvidence, OrderDescriptor,
};
use endoatlas::exactmath::UniPoly;
use endoatlas::numfield::{
    class_number_imag, cyclotomic_subfields, dedekind_2maximal, inert_at_2, quartic_galois, quintic_galois,
    reduced_forms, QuadField, DEFAULT_BUDGET,
};
use endoatlas::quatorder::{
    half_integral_closure, lemma_order, qm_endo_verdict, standard_lattice, twist_search, QuatAlgebra, QuatOrder,
};
use serde_json::{json, Value};

use crate::params::{poly_of, quaternion_of, Params};
use crate::{verify, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    HypothesisFailure,
    /// A `verify-paper` item failed.
    Failed,
}

pub struct Outcome {
    pub input: Value,
    pub result: Value,
    pub certificates: Value,
    pub status: Status,
}

fn ok(input: Value, result: Value, certificates: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { input, result, certificates, status: Status::Ok })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialise")
}

fn algebra(p: &Params) -> Result<QuatAlgebra, CliError> {
    let disc = p.require(&p.disc, "D")?;
    let m = p.require(&p.m, "m")?;
    Ok(QuatAlgebra::new(disc, m)?)
}

fn report_outcome(input: Value, report: &EndoReport) -> Outcome {
    let names: Vec<&str> = report.candidate_names();
    Outcome { input, result: json!(names), certificates: to_value(report), status: Status::Ok }
}

pub const SEEDED: [&str; 2] = ["quintic-galois", "classify-quintic"];

pub const COMMANDS: [&str; 13] = [
    "quintic-galois",
    "quartic-galois",
    "quat-order",
    "quat-action",
    "twists",
    "qm-verdict",
    "class-number",
    "cyclo-subfields",
    "dedekind2",
    "classify-cp",
    "classify-quintic",
    "endo-field",
    "verify-paper",
];

pub fn execute(name: &str, p: &Params, seed: u64) -> Result<Outcome, CliError> {
    match name {
        "quintic-galois" => {
            let f = p.poly()?;
            let budget = p.budget.unwrap_or(DEFAULT_BUDGET);
            let r = quintic_galois(&f, budget, seed)?;
            ok(json!({ "coeffs": f, "budget": budget, "seed": seed }), json!(r.label), to_value(&r.certificate))
        }
        "quartic-galois" => {
            let f = p.poly()?;
            let r = quartic_galois(&f)?;
            ok(json!({ "coeffs": f }), json!(r.label), to_value(&r.certificate))
        }
        "quat-order" => {
            let alg = algebra(p)?;
            let mut orders = Vec::new();
            let mut grams = Vec::new();
            for (kind, order) in lemma_order(&alg)? {
                let rd = order.reduced_discriminant()?;
                orders.push(json!({
                    "order": kind.label(),
                    "kind": kind,
                    "basis": order.basis(),
                    "is_order": true,
                    "reduced_discriminant": rd.value.to_string(),
                    "hereditary": rd.hereditary,
                }));
                grams.push(json!({ "order": kind.label(), "gram": order.gram() }));
            }
            let z = QuatOrder::from_basis(&alg, &standard_lattice())?;
            let zd = z.reduced_discriminant()?;
            ok(
                json!({ "D": alg.disc(), "m": alg.m() }),
                json!({
                    "orders": orders,
                    "half_integral_closure": half_integral_closure(&alg),
                    "standard_lattice_discriminant": zd.value.to_string(),
                }),
                json!({ "ramified_primes": alg.ramified_primes(), "gram_matrices": grams, "standard_lattice_gram": z.gram() }),
            )
        }
        "quat-action" => {
            let alg = algebra(p)?;
            let mut out = Vec::new();
            for (kind, order) in lemma_order(&alg)? {
                let mut actions = Vec::new();
                for (name, q) in [("i", alg.i()), ("j", alg.j()), ("k", alg.k())] {
                    let a = order.conjugation_matrix(&q)?;
                    actions.push(json!({ "by": name, "action": a }));
                }
                out.push(json!({ "order": kind.label(), "basis": order.basis(), "actions": actions }));
            }
            ok(json!({ "D": alg.disc(), "m": alg.m() }), json!(out), json!({ "columns": "images of the basis elements" }))
        }
        "twists" => {
            let alg = algebra(p)?;
            let mu = match &p.mu {
                Some(v) => quaternion_of(v, "mu")?,
                None => alg.k(),
            };
            let mut out = Vec::new();
            let mut norms: Vec<String> = Vec::new();
            for (kind, order) in lemma_order(&alg)? {
                let twists = twist_search(&order, &mu)?;
                for t in &twists {
                    let n = t.norm.to_string();
                    if !norms.contains(&n) {
                        norms.push(n);
                    }
                }
                out.push(json!({ "order": kind.label(), "twists": twists }));
            }
            norms.sort_by_key(|n| n.parse::<i64>().unwrap_or(i64::MAX));
            ok(
                json!({ "D": alg.disc(), "m": alg.m(), "mu": mu }),
                json!({ "norms": norms, "orders": out }),
                json!({ "norm_convention": "norm = -nrd(chi)" }),
            )
        }
        "qm-verdict" => {
            let disc = p.require(&p.disc, "D")?;
            let m = p.require(&p.m, "m")?;
            let v = qm_endo_verdict(disc, m)?;
            let fields: Vec<String> = v.candidates.iter().map(|d| format!("Q(sqrt({d}))")).collect();
            let mut cert = to_value(&v);
            cert["candidate_fields"] = json!(fields);
            ok(json!({ "D": disc, "m": m }), json!(v.result_tag()), cert)
        }
        "class-number" => {
            let d = p.require(&p.d, "d")?;
            let h = class_number_imag(d)?;
            let field = QuadField::new(d)?;
            ok(
                json!({ "d": d }),
                json!(h),
                json!({ "discriminant": field.disc, "reduced_forms": reduced_forms(field.disc) }),
            )
        }
        "cyclo-subfields" => {
            let prime = p.require(&p.p, "p")?;
            let subs = cyclotomic_subfields(prime)?;
            let result: Vec<Value> =
                subs.iter().map(|s| json!({ "degree": s.degree, "period_poly": s.period_poly })).collect();
            let certs: Vec<Value> =
                subs.iter().map(|s| json!({ "degree": s.degree, "certificate": s.certificate })).collect();
            ok(json!({ "p": prime }), json!(result), json!(certs))
        }
        "dedekind2" => {
            let g = p.poly()?;
            let r = dedekind_2maximal(&g)?;
            let inert = inert_at_2(&g)?;
            let mut cert = to_value(&r);
            cert["inert_at_2"] = json!(inert);
            ok(json!({ "coeffs": g }), json!(r.maximal), cert)
        }
        "classify-cp" => {
            let g = p.require(&p.g, "g")?;
            let base = match p.base_d {
                None => CpBase::Rationals,
                Some(d) => CpBase::ImaginaryQuadratic { d },
            };
            let input = json!({ "g": g, "base": base });
            match classify_cp(g, base) {
                Ok(report) => Ok(report_outcome(input, &report)),
                Err(EndoError::HypothesisFailure(report)) => Ok(Outcome {
                    input,
                    result: json!("hypothesis-failure"),
                    certificates: to_value(&report),
                    status: Status::HypothesisFailure,
                }),
                Err(e) => Err(e.into()),
            }
        }
        "classify-quintic" => {
            let f = p.poly()?;
            let base = match p.base_d {
                None => BaseField::Rationals,
                Some(d) => BaseField::Quadratic { d },
            };
            let candidate: Option<UniPoly> = p.candidate.as_ref().map(|v| poly_of(v, "candidate")).transpose()?;
            let budget = p.budget.unwrap_or(DEFAULT_BUDGET);
            let report = classify_quintic_jacobian(&f, base, candidate.as_ref(), budget, seed)?;
            let input = json!({ "coeffs": f, "base": base, "candidate": candidate, "budget": budget, "seed": seed });
            Ok(report_outcome(input, &report))
        }
        "endo-field" => {
            let g = p.poly()?;
            let order = match p.order.as_deref().unwrap_or("equation") {
                "equation" => OrderDescriptor::Equation,
                "maximal" => OrderDescriptor::Maximal,
                other => return Err(CliError::Invalid(format!("order must be equation or maximal, got {other:?}"))),
            };
            let galois =
                if p.assert_galois.unwrap_or(false) { GaloisEvidence::Asserted } else { GaloisEvidence::Certify };
            let r = endo_field_containment(&EndoFieldData { poly: g.clone(), galois, order })?;
            let status = if r.verdict == Containment::HypothesisFails { Status::HypothesisFailure } else { Status::Ok };
            let mut cert = to_value(&r);
            if g.degree() == 2 {
                if let Ok(s) = endoatlas::numfield::quadratic_splitting_field(&g) {
                    if let Some(field) = s.field {
                        cert["field"] = json!(field.name());
                    }
                }
            }
            Ok(Outcome {
                input: json!({ "coeffs": g, "order": order, "galois": galois }),
                result: json!(r.verdict),
                certificates: cert,
                status,
            })
        }
        "verify-paper" => {
            let report = verify::verify_paper(&verify::Fixtures::standard());
            let status = if report.all_passed() { Status::Ok } else { Status::Failed };
            Ok(Outcome {
                input: json!({}),
                result: json!({ "passed": report.passed(), "failed": report.failed(), "items": report.items }),
                certificates: json!({ "table": report.table() }),
                status,
            })
        }
        other => Err(CliError::Invalid(format!("unknown command {other:?}"))),
    }
}
