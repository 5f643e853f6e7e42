//! Replays the worked examples the library is built around. Every item is
//! recomputed from its fixture, so a corrupted fixture makes exactly the
//! items that use it fail.

use endoatlas::endoclass::{
    classify_cp, classify_quintic_jacobian, endo_field_containment, BaseField, Containment, CpBase, EndoError,
    EndoFieldData, GaloisEvidence, Hypothesis, OrderDescriptor, TheoremTag,
};
use endoatlas::exactmath::{IntMatrix, UniPoly};
use endoatlas::numfield::{
    class_number_imag, dedekind_2maximal, inert_at_2, quadratic_splitting_field, quartic_galois, quintic_galois,
    Confidence, GaloisLabel, DEFAULT_BUDGET,
};
use endoatlas::quatorder::{
    half_integral_closure, lemma_order, qm_endo_verdict, standard_lattice, twist_search, LemmaOrderKind, QmVerdictKind,
    QuatAlgebra, QuatOrder, Quaternion,
};
use num_bigint::BigInt;
use serde::Serialize;

/// A quintic with the label it should get.
#[derive(Clone, Debug)]
pub struct QuinticFixture {
    pub coeffs: Vec<i64>,
    pub label: GaloisLabel,
    /// `true` when the label must carry an exact certificate.
    pub exact: bool,
}

/// A closed-form order basis for `(D, m)`.
#[derive(Clone, Debug)]
pub struct OrderFixture {
    pub disc: u64,
    pub m: u64,
    pub kind: LemmaOrderKind,
    pub basis: Vec<Quaternion>,
}

/// Input data for every item. Tests mutate it to check that failures are
/// reported against the right item.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub even_disc_order: OrderFixture,
    pub m1_orders: Vec<OrderFixture>,
    pub half_integral_6_3: Vec<Quaternion>,
    /// Columns are images of the basis `1, X, Y, Z`.
    pub action_by_i_6_3: [[i64; 4]; 4],
    pub action_by_j_6_3: [[i64; 4]; 4],
    pub qm_candidates_15_5: Vec<i64>,
    pub twist_norms_6_3: Vec<i64>,
    pub quintics: Vec<QuinticFixture>,
    pub cm_quartic: Vec<i64>,
    pub class_number_131: u64,
    pub dihedral_quintic: Vec<i64>,
    pub real_multiplication_field: Vec<i64>,
    pub non_maximal_quadratic: Vec<i64>,
    pub cubic_2_torsion: Vec<i64>,
    pub cubic_2_torsion_field: i64,
}

impl Fixtures {
    pub fn standard() -> Self {
        let h = Quaternion::halves;
        let order = |disc, m, kind: LemmaOrderKind| OrderFixture { disc, m, kind, basis: kind.basis() };
        Fixtures {
            even_disc_order: OrderFixture {
                disc: 6,
                m: 3,
                kind: LemmaOrderKind::EvenDiscM3,
                basis: vec![h(1, 1, 0, 0, 0), h(2, 1, 0, 1, 1), h(2, 1, 0, 1, -1), h(2, 0, 1, 0, 1)],
            },
            m1_orders: vec![
                order(15, 5, LemmaOrderKind::M1),
                order(15, 5, LemmaOrderKind::M1D3),
                order(65, 5, LemmaOrderKind::M1),
                order(65, 5, LemmaOrderKind::M1D1),
                order(10, 5, LemmaOrderKind::M1),
            ],
            half_integral_6_3: vec![h(2, 1, 0, 1, 1), h(2, 1, 1, 1, 0), h(2, 0, 1, 0, 1)],
            action_by_i_6_3: [[1, 0, 0, 0], [1, -1, 0, 0], [1, 0, -1, 0], [0, -1, 1, 1]],
            action_by_j_6_3: [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]],
            qm_candidates_15_5: vec![5, -15, 3],
            twist_norms_6_3: vec![2, 3],
            quintics: vec![
                QuinticFixture { coeffs: vec![-16, 88, 95, 107, -19, 1], label: GaloisLabel::D5, exact: true },
                QuinticFixture { coeffs: vec![1, 12, 52, 104, 104, 52], label: GaloisLabel::F5, exact: true },
                QuinticFixture { coeffs: vec![-1, -2, 5, 2, -4, 1], label: GaloisLabel::C5, exact: false },
                QuinticFixture { coeffs: vec![-2, 0, 0, 0, 0, 1], label: GaloisLabel::F5, exact: true },
            ],
            cm_quartic: vec![3, 4, 2, -1, 1],
            class_number_131: 5,
            dihedral_quintic: vec![-16, 88, 95, 107, -19, 1],
            real_multiplication_field: vec![-13, 0, 1],
            non_maximal_quadratic: vec![3, 0, 1],
            cubic_2_torsion: vec![-22, -15, 0, 1],
            cubic_2_torsion_field: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub id: &'static str,
    pub claim: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub items: Vec<Item>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.items.iter().filter(|i| i.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.items.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn item(&self, id: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.id == id)
    }

    /// One `PASS`/`FAIL` line per item.
    pub fn table(&self) -> Vec<String> {
        self.items
            .iter()
            .map(|i| format!("{} {}: {}", if i.pass { "PASS" } else { "FAIL" }, i.id, i.claim))
            .collect()
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn poly(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

fn cols(c: &[[i64; 4]; 4]) -> IntMatrix {
    let mut m = IntMatrix::zeros(4, 4);
    for (j, col) in c.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m[(i, j)] = BigInt::from(*v);
        }
    }
    m
}

fn build(o: &OrderFixture) -> Result<QuatOrder, String> {
    let alg = QuatAlgebra::new(o.disc, o.m).map_err(|e| e.to_string())?;
    QuatOrder::from_basis(&alg, &o.basis).map_err(|e| format!("({}, {}) {}: {e}", o.disc, o.m, o.kind.label()))
}

fn even_disc_order(fx: &Fixtures) -> Check {
    let o = build(&fx.even_disc_order)?;
    let rd = o.reduced_discriminant().map_err(|e| e.to_string())?;
    ensure(rd.value == BigInt::from(6), format!("reduced discriminant {}", rd.value))?;
    ensure(rd.hereditary, "not hereditary")?;
    let z = QuatOrder::from_basis(o.algebra(), &standard_lattice()).map_err(|e| e.to_string())?;
    let zd = z.reduced_discriminant().map_err(|e| e.to_string())?.value;
    ensure(zd == BigInt::from(24), format!("Z[1,i,j,k] has discriminant {zd}"))?;
    let closed = lemma_order(o.algebra()).map_err(|e| e.to_string())?;
    ensure(closed[0].1.equal_at_2(&o).unwrap_or(false), "fixture differs from the closed form at 2")?;
    Ok("discriminant 6, hereditary; Z[1,i,j,k] has discriminant 24".into())
}

fn half_integral(fx: &Fixtures) -> Check {
    let alg = QuatAlgebra::new(6, 3).map_err(|e| e.to_string())?;
    let mut got: Vec<String> = half_integral_closure(&alg).iter().map(|q| q.to_string()).collect();
    let mut want: Vec<String> = fx.half_integral_6_3.iter().map(|q| q.to_string()).collect();
    got.sort();
    want.sort();
    ensure(got == want, format!("got {got:?}"))?;
    Ok(got.join(", "))
}

fn m1_orders(fx: &Fixtures) -> Check {
    let mut seen = Vec::new();
    for f in &fx.m1_orders {
        let o = build(f)?;
        let rd = o.reduced_discriminant().map_err(|e| e.to_string())?;
        ensure(rd.value == BigInt::from(f.disc), format!("({}, {}) {}: discriminant {}", f.disc, f.m, f.kind.label(), rd.value))?;
        seen.push(format!("({}, {}) {}", f.disc, f.m, f.kind.label()));
    }
    for (disc, expected) in [(15u64, 2usize), (65, 2), (10, 1)] {
        let alg = QuatAlgebra::new(disc, 5).map_err(|e| e.to_string())?;
        let n = lemma_order(&alg).map_err(|e| e.to_string())?.len();
        ensure(n == expected, format!("D = {disc}: {n} closed-form orders"))?;
    }
    Ok(seen.join("; "))
}

fn action_even(fx: &Fixtures) -> Check {
    let o = build(&fx.even_disc_order)?;
    let alg = o.algebra().clone();
    let by_i = o.conjugation_matrix(&alg.i()).map_err(|e| e.to_string())?;
    let by_j = o.conjugation_matrix(&alg.j()).map_err(|e| e.to_string())?;
    ensure(by_i.matrix == cols(&fx.action_by_i_6_3), format!("conjugation by i: {:?}", by_i.matrix))?;
    ensure(by_j.matrix == cols(&fx.action_by_j_6_3), format!("conjugation by j: {:?}", by_j.matrix))?;
    ensure(!by_i.identity_mod_2 && !by_j.identity_mod_2, "an action is trivial mod 2")?;
    let v = qm_endo_verdict(6, 3).map_err(|e| e.to_string())?;
    ensure(v.kind == QmVerdictKind::LContainedIn2TorsionField, "verdict is not containment")?;
    Ok("i: X -> 1-X, Y -> 1-Y, Z -> Z+Y-X; j: X <-> Y, Z -> -Z; L inside the 2-torsion field".into())
}

fn action_odd(fx: &Fixtures) -> Check {
    let o = build(&fx.m1_orders[0])?;
    let alg = o.algebra().clone();
    let act = |q: &Quaternion| o.conjugation_matrix(q).map_err(|e| e.to_string());
    let (i, j, k) = (act(&alg.i())?, act(&alg.j())?, act(&alg.k())?);
    ensure(j.identity_mod_2, "j is not trivial mod 2")?;
    ensure(!i.identity_mod_2 && i.mod2 == k.mod2, "i and k are not the same involution mod 2")?;
    let v = qm_endo_verdict(15, 5).map_err(|e| e.to_string())?;
    let want: Vec<BigInt> = fx.qm_candidates_15_5.iter().map(|&d| BigInt::from(d)).collect();
    ensure(v.candidates == want, format!("candidates {:?}", v.candidates))?;
    ensure(v.candidates.contains(&BigInt::from(-15)), "Q(sqrt(-15)) missing")?;
    Ok("j trivial mod 2; i = k mod 2; candidates Q(sqrt(5)), Q(sqrt(-15)), Q(sqrt(3))".into())
}

fn twists(fx: &Fixtures) -> Check {
    let o = build(&fx.even_disc_order)?;
    let alg = o.algebra().clone();
    let found = twist_search(&o, &alg.k()).map_err(|e| e.to_string())?;
    ensure(found.iter().any(|t| t.chi == alg.j() && t.norm == BigInt::from(3)), "chi = j of norm 3 not found")?;
    let mut norms: Vec<i64> = found.iter().map(|t| i64::try_from(&t.norm).unwrap_or(0)).collect();
    norms.sort();
    norms.dedup();
    ensure(norms.iter().all(|n| fx.twist_norms_6_3.contains(n)), format!("norms {norms:?}"))?;
    ensure(norms.len() <= 2, format!("more than two norms: {norms:?}"))?;
    if norms.len() == 2 {
        ensure(norms[0] * norms[1] == 6, format!("norm product {} is not D", norms[0] * norms[1]))?;
    }
    Ok(format!("{} twists, norms {norms:?}", found.len()))
}

fn quintic_labels(fx: &Fixtures) -> Check {
    let mut out = Vec::new();
    for q in &fx.quintics {
        let r = quintic_galois(&poly(&q.coeffs), DEFAULT_BUDGET, 0).map_err(|e| e.to_string())?;
        ensure(r.label == q.label, format!("{:?}: got {}, expected {}", q.coeffs, r.label, q.label))?;
        let exact = r.certificate.confidence == Confidence::Exact;
        ensure(exact == q.exact, format!("{:?}: confidence {:?}", q.coeffs, r.certificate.confidence))?;
        out.push(format!("{} ({})", r.label, if exact { "exact" } else { "monte-carlo" }));
    }
    Ok(out.join(", "))
}

fn cm_quartic(fx: &Fixtures) -> Check {
    let g = poly(&fx.cm_quartic);
    let r = quartic_galois(&g).map_err(|e| e.to_string())?;
    ensure(r.label == GaloisLabel::C4, format!("label {}", r.label))?;
    ensure(inert_at_2(&g).map_err(|e| e.to_string())?, "not inert at 2")?;
    ensure(dedekind_2maximal(&g).map_err(|e| e.to_string())?.maximal, "equation order not 2-maximal")?;
    let f = poly(&fx.quintics[1].coeffs);
    let report = classify_quintic_jacobian(&f, BaseField::Rationals, Some(&g), DEFAULT_BUDGET, 0)
        .map_err(|e| e.to_string())?;
    ensure(report.summary().contains("L = EK"), "report does not state L = EK")?;
    Ok("C4, inert at 2, 2-maximal; L = EK".into())
}

fn class_number(fx: &Fixtures) -> Check {
    let h = class_number_imag(-131).map_err(|e| e.to_string())?;
    ensure(h == fx.class_number_131, format!("h(-131) = {h}"))?;
    match classify_cp(2, CpBase::ImaginaryQuadratic { d: -131 }) {
        Err(EndoError::HypothesisFailure(_)) => {}
        _ => return Err("C5 classification over Q(sqrt(-131)) did not report a hypothesis failure".into()),
    }
    Ok(format!("h(-131) = {h}; 5 | h blocks the cyclic classification"))
}

fn disc_5_mod_8(fx: &Fixtures) -> Check {
    let f = poly(&fx.dihedral_quintic);
    let e = poly(&fx.real_multiplication_field);
    let r = classify_quintic_jacobian(&f, BaseField::Rationals, Some(&e), DEFAULT_BUDGET, 0).map_err(|e| e.to_string())?;
    ensure(r.theorems.contains(&TheoremTag::QuinticDihedral), "not the dihedral case")?;
    let line = r
        .lines
        .iter()
        .find(|l| l.theorem == TheoremTag::RealMultiplicationDisc5Mod8)
        .ok_or("no discriminant line")?;
    ensure(line.data["disc_mod_8"] == 5, format!("{}", line.statement))?;
    Ok(line.statement.clone())
}

fn cp_tables(_: &Fixtures) -> Check {
    let names = |g| -> Result<Vec<String>, String> {
        Ok(classify_cp(g, CpBase::Rationals)
            .map_err(|e| e.to_string())?
            .candidate_names()
            .into_iter()
            .map(String::from)
            .collect())
    };
    ensure(names(2)? == ["Z", "Q(sqrt(5))"], format!("g = 2: {:?}", names(2)?))?;
    ensure(names(1)? == ["Z"], format!("g = 1: {:?}", names(1)?))?;
    ensure(names(3)?.iter().any(|n| n == "M_3(Q(sqrt(-7)))"), "g = 3: no CM-power branch")?;
    Ok("g = 1: Z; g = 2: Z, Q(sqrt(5)); g = 3 lists M_3(Q(sqrt(-7)))".into())
}

fn non_maximal(fx: &Fixtures) -> Check {
    let r = endo_field_containment(&EndoFieldData {
        poly: poly(&fx.non_maximal_quadratic),
        galois: GaloisEvidence::Certify,
        order: OrderDescriptor::Equation,
    })
    .map_err(|e| e.to_string())?;
    ensure(r.verdict == Containment::HypothesisFails, format!("verdict {:?}", r.verdict))?;
    ensure(r.failing.contains(&Hypothesis::TwoMaximal), format!("failing {:?}", r.failing))?;
    Ok("Z[sqrt(-3)] is not 2-maximal".into())
}

fn splitting_field(fx: &Fixtures) -> Check {
    let s = quadratic_splitting_field(&poly(&fx.cubic_2_torsion)).map_err(|e| e.to_string())?;
    let field = s.field.as_ref().ok_or("splitting field is Q")?;
    ensure(field.d == fx.cubic_2_torsion_field, format!("got {}", field.name()))?;
    ensure(s.discriminant == Some(BigInt::from(48)), format!("discriminant {:?}", s.discriminant))?;
    Ok(format!("{} from discriminant 48", field.name()))
}

type ItemFn = fn(&Fixtures) -> Check;

const ITEMS: &[(&str, &str, ItemFn)] = &[
    ("order-even-disc-m3", "closed-form order for 2 | D, m = 3 mod 4 at (6, 3)", even_disc_order),
    ("half-integral-closure", "half-integral elements of (2, 3) with integral trace and norm", half_integral),
    ("orders-m1", "closed-form orders for m = 1 mod 4 at (15, 5), (65, 5), (10, 5)", m1_orders),
    ("action-even-disc", "mod-2 conjugation table and containment verdict at (6, 3)", action_even),
    ("action-m1", "mod-2 conjugation table and candidate fields at (15, 5)", action_odd),
    ("twist-norms", "twists of (O, k) at (6, 3) and their norms", twists),
    ("quintic-labels", "Galois groups of the four example quintics", quintic_labels),
    ("cm-quartic", "the quartic CM field is cyclic and inert at 2", cm_quartic),
    ("class-number-131", "class number of Q(sqrt(-131))", class_number),
    ("disc-5-mod-8", "real multiplication by Q(sqrt(13)) meets the 5 mod 8 condition", disc_5_mod_8),
    ("cyclic-2-torsion-tables", "candidate lists for cyclic 2-torsion of degree 3, 5, 7", cp_tables),
    ("non-maximal-equation-order", "Z[sqrt(-3)] fails 2-maximality", non_maximal),
    ("splitting-field-sqrt3", "splitting field of (x + 2)(x^2 - 2x - 11)", splitting_field),
];

pub fn verify_paper(fx: &Fixtures) -> VerifyReport {
    let items = ITEMS
        .iter()
        .map(|&(id, claim, f)| {
            let (pass, detail) = match f(fx) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Item { id, claim, pass, detail }
        })
        .collect();
    VerifyReport { items }
}
