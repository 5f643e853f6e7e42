//! Decision tables that turn Galois data on the 2-torsion into statements
//! about the endomorphism algebra `End^0(A)` and the endomorphism field `L`.
//!
//! Every statement carries a tag naming the result it comes from and a flag
//! saying whether the evidence behind it is exact or sampled.

mod containment;
mod cp;
mod kernel;
mod quintic;

pub use containment::{
    endo_field_containment, Containment, ContainmentReport, EndoFieldData, GaloisEvidence, Hypothesis,
    HypothesisCheck, HypothesisStatus, OrderDescriptor,
};
pub use cp::{classify_cp, CpBase};
pub use kernel::{cyclotomic_companion, cyclotomic_poly, is_identity_mod, matrix_order};
pub use quintic::{classify_quintic_jacobian, BaseField};

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::exactmath::{ExactError, UniPoly};
use crate::numfield::NumFieldError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EndoError {
    #[error("2g + 1 = {0} is not prime")]
    NotPrime(u64),
    #[error("hypothesis fails: {}", .0.summary())]
    HypothesisFailure(Box<EndoReport>),
    #[error("malformed descriptor: {0}")]
    Malformed(String),
    #[error(transparent)]
    NumField(#[from] NumFieldError),
}

impl From<ExactError> for EndoError {
    fn from(e: ExactError) -> Self {
        EndoError::NumField(e.into())
    }
}

/// The result a verdict line rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremTag {
    /// Galois endomorphism field, 2-maximal order and 2 not wildly ramified
    /// force `L` inside the 2-torsion field.
    EndoFieldIn2Torsion,
    /// `C_p` acting on the 2-torsion over a general base with `p` prime to
    /// the class number and the residue orders above 2.
    CpGeneralBase,
    /// `C_p` acting on the 2-torsion over the rationals.
    CpOverRationals,
    /// `C_p` acting on the 2-torsion over an imaginary quadratic field of
    /// class number prime to `p`.
    CpOverImaginaryQuadratic,
    /// Elliptic curves with cyclic cubic 2-torsion field have no CM.
    C3EllipticNoCm,
    /// Abelian surfaces over the rationals with cyclic quintic 2-torsion.
    C5SurfaceOverRationals,
    /// Quintic with Frobenius group of order 20.
    QuinticFrobenius,
    /// Quintic with dihedral group of order 10.
    QuinticDihedral,
    /// Quintic with cyclic group of order 5.
    QuinticCyclic,
    /// Over the rationals a CM jacobian with an order-5 element in the
    /// Galois group has Frobenius Galois group.
    QuinticCmForcesFrobenius,
    /// Frobenius Galois groups force a Galois endomorphism field, unramified
    /// at 2 when the order is 2-maximal.
    FrobeniusEndomorphismField,
    /// Real multiplication with cyclic quintic 2-torsion needs a field
    /// discriminant congruent to 5 mod 8.
    RealMultiplicationDisc5Mod8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    Exact,
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictLine {
    pub statement: String,
    pub theorem: TheoremTag,
    pub evidence: Evidence,
    pub data: Value,
}

impl VerdictLine {
    pub fn new(theorem: TheoremTag, evidence: Evidence, statement: impl Into<String>, data: Value) -> Self {
        VerdictLine { statement: statement.into(), theorem, evidence, data }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `End(A) = Z`.
    Trivial,
    Subfield,
    /// Listed because its congruence conditions hold; whether `A` realises
    /// it cannot be decided here.
    PossibleCmPower,
    Supplied,
}

/// A possible endomorphism algebra.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub algebra: String,
    pub field: String,
    pub degree: usize,
    pub polynomial: Option<UniPoly>,
    pub branch: Branch,
    pub theorem: TheoremTag,
}

impl Candidate {
    pub fn trivial(theorem: TheoremTag) -> Self {
        Candidate {
            algebra: "Z".into(),
            field: "Q".into(),
            degree: 1,
            polynomial: Some(UniPoly::from_ints(&[0, 1])),
            branch: Branch::Trivial,
            theorem,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportStatus {
    Ok,
    HypothesisFailure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EndoReport {
    pub input: Value,
    pub status: ReportStatus,
    pub theorems: Vec<TheoremTag>,
    pub lines: Vec<VerdictLine>,
    pub candidates: Vec<Candidate>,
}

impl EndoReport {
    fn new(input: Value) -> Self {
        EndoReport { input, status: ReportStatus::Ok, theorems: Vec::new(), lines: Vec::new(), candidates: Vec::new() }
    }

    fn push(&mut self, line: VerdictLine) {
        if !self.theorems.contains(&line.theorem) {
            self.theorems.push(line.theorem);
            self.theorems.sort();
        }
        self.lines.push(line);
    }

    pub fn summary(&self) -> String {
        self.lines.iter().map(|l| l.statement.as_str()).collect::<Vec<_>>().join("; ")
    }

    pub fn candidate_names(&self) -> Vec<&str> {
        self.candidates.iter().map(|c| c.algebra.as_str()).collect()
    }
}

#[cfg(test)]
mod tests;
