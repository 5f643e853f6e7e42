use num_bigint::BigInt;
use serde::Serialize;

use super::{check_twist, lemma_order, ConjugationAction, LemmaOrderKind, QuatAlgebra, QuatError, Quaternion};

#[derive(Clone, Debug, Serialize)]
pub struct TwistAction {
    /// `mu`, `chi` or `mu_chi`.
    pub role: &'static str,
    pub action: ConjugationAction,
    /// Squarefree `s` with `Q(element) = Q(sqrt(s))`.
    #[serde(serialize_with = "crate::exactmath::ser::bigint")]
    pub field: BigInt,
}

/// Mod-2 behaviour of conjugation by `mu`, `chi` and `mu chi` on one order.
#[derive(Clone, Debug, Serialize)]
pub struct OrderKernel {
    pub order: LemmaOrderKind,
    pub basis: Vec<Quaternion>,
    pub actions: Vec<TwistAction>,
    /// Roles acting trivially on the order mod 2.
    pub kernel: Vec<&'static str>,
    /// Whether the roles outside the kernel act by one common involution.
    pub non_kernel_agree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QmVerdictKind {
    /// `L` is contained in the 2-torsion field.
    LContainedIn2TorsionField,
    /// The endomorphism algebra over the 2-torsion field contains one of the
    /// listed quadratic fields.
    ContainsOneOf,
}

#[derive(Clone, Debug, Serialize)]
pub struct QmVerdict {
    pub disc: u64,
    pub m: u64,
    pub kind: QmVerdictKind,
    /// Squarefree `d` of each candidate field `Q(sqrt(d))`; empty for the
    /// containment verdict.
    #[serde(serialize_with = "crate::exactmath::ser::bigints")]
    pub candidates: Vec<BigInt>,
    pub orders: Vec<OrderKernel>,
}

impl QmVerdict {
    pub fn result_tag(&self) -> &'static str {
        match self.kind {
            QmVerdictKind::LContainedIn2TorsionField => "L_contained_in_2_torsion_field",
            QmVerdictKind::ContainsOneOf => "endo_over_2_torsion_contains_one_of",
        }
    }
}

/// Decides the QM endomorphism-field verdict for `(D, m)` from the computed
/// mod-2 actions of `mu = k`, `chi = j` and `mu chi = m i` on every
/// closed-form order of discriminant `D`.
///
/// With `2 | D` and `m = 3 mod 4` all three act nontrivially mod 2, so the
/// Galois action on the endomorphisms is faithful mod 2 and `L` lies in the
/// 2-torsion field. With `m = 1 mod 4` exactly one of them acts trivially on
/// each order; the fields generated by the other two are the candidates.
pub fn qm_endo_verdict(disc: u64, m: u64) -> Result<QmVerdict, QuatError> {
    let alg = QuatAlgebra::new(disc, m)?;
    let orders = lemma_order(&alg)?;
    let mu = alg.k();
    let chi = alg.j();
    let mu_chi = alg.mul(&mu, &chi);

    let mut kernels = Vec::with_capacity(orders.len());
    for (kind, order) in &orders {
        check_twist(order, &mu, &chi)?;
        let mut actions = Vec::with_capacity(3);
        for (role, q) in [("chi", &chi), ("mu", &mu), ("mu_chi", &mu_chi)] {
            let action = order.conjugation_matrix(q)?;
            let field = alg.square_class_of_pure(q).expect("pure quaternion with nonzero norm");
            actions.push(TwistAction { role, action, field });
        }
        let kernel: Vec<&'static str> =
            actions.iter().filter(|a| a.action.identity_mod_2).map(|a| a.role).collect();
        let outside: Vec<_> = actions.iter().filter(|a| !a.action.identity_mod_2).collect();
        let non_kernel_agree = outside.windows(2).all(|w| w[0].action.mod2 == w[1].action.mod2);
        kernels.push(OrderKernel { order: *kind, basis: order.basis(), actions, kernel, non_kernel_agree });
    }

    let contained_case = disc % 2 == 0 && m % 4 == 3;
    if contained_case {
        let k = &kernels[0];
        if !k.kernel.is_empty() {
            return Err(QuatError::UnexpectedAction(format!("{:?} act trivially mod 2", k.kernel)));
        }
        return Ok(QmVerdict {
            disc,
            m,
            kind: QmVerdictKind::LContainedIn2TorsionField,
            candidates: Vec::new(),
            orders: kernels,
        });
    }

    let mut candidates: Vec<BigInt> = Vec::new();
    for k in &kernels {
        if k.kernel.len() != 1 || !k.non_kernel_agree {
            return Err(QuatError::UnexpectedAction(format!(
                "order {}: kernel {:?}, remaining actions agree: {}",
                k.order.label(),
                k.kernel,
                k.non_kernel_agree
            )));
        }
        for a in k.actions.iter().filter(|a| !a.action.identity_mod_2) {
            if !candidates.contains(&a.field) {
                candidates.push(a.field.clone());
            }
        }
    }
    // fixed presentation order: sqrt(m), sqrt(-D), sqrt(D/m)
    let rank = |d: &BigInt| {
        [BigInt::from(m), -BigInt::from(disc), BigInt::from(disc / m)].iter().position(|x| x == d).unwrap_or(3)
    };
    candidates.sort_by_key(rank);
    Ok(QmVerdict { disc, m, kind: QmVerdictKind::ContainsOneOf, candidates, orders: kernels })
}
