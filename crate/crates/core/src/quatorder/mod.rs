//! Quaternion algebras `(D/m, m)`, their orders as integer lattices, twists
//! of principally polarised orders, and the mod-2 conjugation actions that
//! decide where the endomorphism field of a QM abelian surface sits relative
//! to its 2-torsion field.

mod algebra;
mod order;
mod twist;
mod verdict;

pub use algebra::{algebra_discriminant, hilbert_symbol, legendre, QuatAlgebra, Quaternion};
pub use order::{
    half_integral_closure, is_order, lemma_order, lemma_order_kinds, standard_lattice, ConjugationAction,
    Lattice, LemmaOrderKind, OrderWitness, QuatOrder, ReducedDiscriminant,
};
pub use twist::{check_twist, twist_search, TwistedOrder};
pub use verdict::{qm_endo_verdict, OrderKernel, QmVerdict, QmVerdictKind, TwistAction};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatError {
    #[error("D = {0} is not a positive squarefree integer")]
    NotSquarefree(u64),
    #[error("m = {m} does not divide D = {disc}")]
    NotADivisor { disc: u64, m: u64 },
    #[error("({disc}/{m}, {m}) ramifies at {ramified:?}, whose product is not {disc}")]
    PresentationMismatch { disc: u64, m: u64, ramified: Vec<u64> },
    #[error("element has zero reduced norm")]
    DivisionByZeroNorm,
    #[error("no closed-form order is known for D = {disc}, m = {m}")]
    CongruenceOutOfScope { disc: u64, m: u64 },
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("not an order: {0}")]
    NotAnOrder(String),
    #[error("Gram determinant {0} is not a perfect square")]
    NonSquareGramDeterminant(String),
    #[error("orders live in different algebras")]
    AlgebraMismatch,
    #[error("conjugation does not preserve the order: image of {element} leaves it")]
    DoesNotNormalize { element: String },
    #[error("bad polarisation: {0}")]
    BadPolarization(String),
    #[error("not a twist: {0}")]
    NotATwist(String),
    #[error("multiplicative closure did not stabilise")]
    ClosureDiverged,
    #[error("unexpected mod-2 action: {0}")]
    UnexpectedAction(String),
}

/// Everything `quat_arith` reports for a pair of quaternions.
#[derive(Clone, Debug, serde::Serialize)]
pub struct QuatArith {
    pub product: Quaternion,
    pub sum: Quaternion,
    pub conjugate: Quaternion,
    pub trd: String,
    pub nrd: String,
    pub inverse: Option<Quaternion>,
}

pub fn quat_arith(algebra: &QuatAlgebra, x: &Quaternion, y: &Quaternion) -> QuatArith {
    QuatArith {
        product: algebra.mul(x, y),
        sum: x + y,
        conjugate: x.conj(),
        trd: x.trd().to_string(),
        nrd: algebra.nrd(x).to_string(),
        inverse: algebra.inverse(x).ok(),
    }
}
