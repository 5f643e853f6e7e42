use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{QuatAlgebra, QuatError, Quaternion};
use crate::exactmath::{
    hnf_with_transform, is_squarefree, is_two_integral, isqrt_exact, BigRat, IntMatrix, RatMatrix,
};

/// Full-rank lattice in a quaternion algebra, stored by a rational basis
/// (rows are coordinates in `1, i, j, k`) together with the HNF data needed
/// for exact membership tests.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: RatMatrix,
    scale: BigInt,
    hnf: IntMatrix,
    transform: IntMatrix,
}

impl Lattice {
    pub fn from_basis(basis: &[Quaternion]) -> Result<Self, QuatError> {
        if basis.len() != 4 {
            return Err(QuatError::SingularBasis);
        }
        let rows: Vec<Vec<BigRat>> = basis.iter().map(|q| q.coords().to_vec()).collect();
        let basis = RatMatrix::from_rows(&rows).expect("4x4");
        let scale = basis.common_denominator();
        let scaled = basis.scaled_to_int(&scale);
        let hnf = hnf_with_transform(&scaled);
        if hnf.rank() < 4 {
            return Err(QuatError::SingularBasis);
        }
        Ok(Lattice { basis, scale, hnf: hnf.h, transform: hnf.u })
    }

    /// Lattice spanned by an arbitrary generating set of full rank; the
    /// returned basis is the (rescaled) HNF basis.
    pub fn from_generators(gens: &[Quaternion]) -> Result<Self, QuatError> {
        let rows: Vec<Vec<BigRat>> = gens.iter().map(|q| q.coords().to_vec()).collect();
        let m = RatMatrix::from_rows(&rows).map_err(|_| QuatError::SingularBasis)?;
        let scale = m.common_denominator();
        let hnf = hnf_with_transform(&m.scaled_to_int(&scale));
        if hnf.rank() < 4 {
            return Err(QuatError::SingularBasis);
        }
        let s = BigRat::from_integer(scale);
        let basis: Vec<Quaternion> = (0..4)
            .map(|r| {
                let row: Vec<BigRat> =
                    hnf.h.row(r).iter().map(|e| BigRat::from_integer(e.clone()) / &s).collect();
                Quaternion::from_slice(&row)
            })
            .collect();
        Self::from_basis(&basis)
    }

    pub fn basis(&self) -> Vec<Quaternion> {
        (0..4).map(|r| Quaternion::from_slice(self.basis.row(r))).collect()
    }

    pub fn basis_matrix(&self) -> &RatMatrix {
        &self.basis
    }

    /// Integer coordinates of `x` in this lattice's basis, or `None` when
    /// `x` is not a lattice vector.
    pub fn coords(&self, x: &Quaternion) -> Option<Vec<BigInt>> {
        let s = BigRat::from_integer(self.scale.clone());
        let mut target = Vec::with_capacity(4);
        for c in x.coords() {
            let v = c * &s;
            if !v.is_integer() {
                return None;
            }
            target.push(v.to_integer());
        }
        // target = c_h * H with H upper triangular
        let mut c_h = vec![BigInt::zero(); 4];
        for col in 0..4 {
            let pivot = &self.hnf[(col, col)];
            let (q, r) = target[col].div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            for j in col..4 {
                let sub = &q * &self.hnf[(col, j)];
                target[j] -= sub;
            }
            c_h[col] = q;
        }
        // H = U * B, so x = c_h * U * B
        Some((0..4).map(|j| (0..4).map(|r| &c_h[r] * &self.transform[(r, j)]).sum()).collect())
    }

    pub fn contains(&self, x: &Quaternion) -> bool {
        self.coords(x).is_some()
    }

    /// `|det|` of the basis matrix, the covolume relative to `Z[1,i,j,k]`.
    pub fn covolume(&self) -> BigRat {
        self.basis.det().expect("square").abs()
    }
}

/// Why a lattice failed to be an order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderWitness {
    MissingOne,
    NonIntegral { element: Quaternion, trd: String, nrd: String },
    NotClosed { left: usize, right: usize, product: Quaternion },
}

impl std::fmt::Display for OrderWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderWitness::MissingOne => write!(f, "1 is not in the lattice"),
            OrderWitness::NonIntegral { element, trd, nrd } => {
                write!(f, "{element} has trd {trd} and nrd {nrd}")
            }
            OrderWitness::NotClosed { left, right, product } => {
                write!(f, "product e{left}*e{right} = {product} leaves the lattice")
            }
        }
    }
}

/// Checks the order axioms; `None` means the lattice is an order, otherwise
/// the first violation found.
pub fn is_order(algebra: &QuatAlgebra, lattice: &Lattice) -> Option<OrderWitness> {
    if !lattice.contains(&algebra.one()) {
        return Some(OrderWitness::MissingOne);
    }
    let basis = lattice.basis();
    for e in &basis {
        let t = e.trd();
        let n = algebra.nrd(e);
        if !t.is_integer() || !n.is_integer() {
            return Some(OrderWitness::NonIntegral { element: e.clone(), trd: t.to_string(), nrd: n.to_string() });
        }
    }
    for (s, x) in basis.iter().enumerate() {
        for (t, y) in basis.iter().enumerate() {
            let p = algebra.mul(x, y);
            if !lattice.contains(&p) {
                return Some(OrderWitness::NotClosed { left: s, right: t, product: p });
            }
        }
    }
    None
}

/// A validated order, with the Gram matrix of `(x, y) -> trd(x conj(y))`.
#[derive(Clone, Debug)]
pub struct QuatOrder {
    algebra: QuatAlgebra,
    lattice: Lattice,
    gram: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedDiscriminant {
    #[serde(serialize_with = "crate::exactmath::ser::bigint")]
    pub value: BigInt,
    pub hereditary: bool,
}

impl QuatOrder {
    pub fn new(algebra: &QuatAlgebra, lattice: Lattice) -> Result<Self, QuatError> {
        if let Some(w) = is_order(algebra, &lattice) {
            return Err(QuatError::NotAnOrder(w.to_string()));
        }
        let basis = lattice.basis();
        let mut rows = Vec::with_capacity(4);
        for x in &basis {
            let mut row = Vec::with_capacity(4);
            for y in &basis {
                let t = algebra.mul(x, &y.conj()).trd();
                if !t.is_integer() {
                    return Err(QuatError::NotAnOrder(format!("trd({x} * conj({y})) = {t}")));
                }
                row.push(t.to_integer());
            }
            rows.push(row);
        }
        let gram = IntMatrix::from_rows(&rows).expect("4x4");
        Ok(QuatOrder { algebra: algebra.clone(), lattice, gram })
    }

    pub fn from_basis(algebra: &QuatAlgebra, basis: &[Quaternion]) -> Result<Self, QuatError> {
        Self::new(algebra, Lattice::from_basis(basis)?)
    }

    pub fn algebra(&self) -> &QuatAlgebra {
        &self.algebra
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn basis(&self) -> Vec<Quaternion> {
        self.lattice.basis()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn contains(&self, x: &Quaternion) -> bool {
        self.lattice.contains(x)
    }

    /// Positive square root of `|det(gram)|` and whether it is squarefree.
    pub fn reduced_discriminant(&self) -> Result<ReducedDiscriminant, QuatError> {
        let det = self.gram.det().expect("square gram").abs();
        let value = isqrt_exact(&det).ok_or(QuatError::NonSquareGramDeterminant(det.to_string()))?;
        let hereditary = is_squarefree(&value);
        Ok(ReducedDiscriminant { value, hereditary })
    }

    /// Whether the two orders agree after tensoring with the 2-adic integers.
    pub fn equal_at_2(&self, other: &QuatOrder) -> Result<bool, QuatError> {
        if self.algebra != other.algebra {
            return Err(QuatError::AlgebraMismatch);
        }
        let b1 = self.lattice.basis_matrix();
        let b2 = other.lattice.basis_matrix();
        let change = b2.mul(&b1.inverse().expect("nonsingular basis")).expect("4x4");
        let back = b1.mul(&b2.inverse().expect("nonsingular basis")).expect("4x4");
        Ok(change.entries().iter().chain(back.entries()).all(is_two_integral))
    }

    /// Matrix of `x -> q x q^-1` in this order's basis. Column `s` holds the
    /// coordinates of the image of basis element `s`.
    pub fn conjugation_matrix(&self, q: &Quaternion) -> Result<ConjugationAction, QuatError> {
        let basis = self.basis();
        let mut m = IntMatrix::zeros(4, 4);
        for (s, e) in basis.iter().enumerate() {
            let image = self.algebra.conjugate_by(q, e)?;
            let coords =
                self.lattice.coords(&image).ok_or_else(|| QuatError::DoesNotNormalize { element: e.to_string() })?;
            for (r, c) in coords.into_iter().enumerate() {
                m[(r, s)] = c;
            }
        }
        let mod2 = m.reduce_mod(2);
        let identity_mod_2 = mod2.is_identity();
        Ok(ConjugationAction { by: q.clone(), matrix: m, mod2, identity_mod_2 })
    }

    pub fn normalizes(&self, q: &Quaternion) -> bool {
        self.conjugation_matrix(q).is_ok()
    }

    /// Smallest order containing the given generators, by repeatedly adding
    /// products of basis elements until the lattice is multiplicatively
    /// closed. Fails as soon as a non-integral element appears.
    pub fn generated_by(algebra: &QuatAlgebra, gens: &[Quaternion]) -> Result<Self, QuatError> {
        let mut current: Vec<Quaternion> = gens.to_vec();
        current.push(algebra.one());
        for _ in 0..16 {
            let lattice = Lattice::from_generators(&current)?;
            let basis = lattice.basis();
            let mut extra = Vec::new();
            for x in &basis {
                let (t, n) = (x.trd(), algebra.nrd(x));
                if !t.is_integer() || !n.is_integer() {
                    return Err(QuatError::NotAnOrder(format!("{x} has trd {t} and nrd {n}")));
                }
                for y in &basis {
                    let p = algebra.mul(x, y);
                    if !lattice.contains(&p) {
                        extra.push(p);
                    }
                }
            }
            if extra.is_empty() {
                return QuatOrder::new(algebra, lattice);
            }
            current = basis;
            current.extend(extra);
        }
        Err(QuatError::ClosureDiverged)
    }
}

/// Conjugation by `by` on an order, with its reduction mod 2.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugationAction {
    pub by: Quaternion,
    pub matrix: IntMatrix,
    pub mod2: IntMatrix,
    pub identity_mod_2: bool,
}

/// The nonzero elements `(a + b i + c j + d k)/2` with `a, b, c, d` in
/// `{0, 1}` that have integral trace and norm.
pub fn half_integral_closure(algebra: &QuatAlgebra) -> Vec<Quaternion> {
    let mut out = Vec::new();
    for bits in 1u8..16 {
        let bit = |n: u8| i64::from((bits >> (3 - n)) & 1);
        let x = Quaternion::halves(2, bit(0), bit(1), bit(2), bit(3));
        if x.trd().is_integer() && algebra.nrd(&x).is_integer() {
            out.push(x);
        }
    }
    out
}

/// `Z[1, i, j, k]`.
pub fn standard_lattice() -> Vec<Quaternion> {
    vec![
        Quaternion::from_ints(1, 0, 0, 0),
        Quaternion::from_ints(0, 1, 0, 0),
        Quaternion::from_ints(0, 0, 1, 0),
        Quaternion::from_ints(0, 0, 0, 1),
    ]
}

/// Which closed-form order a basis describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LemmaOrderKind {
    /// `Z + (1+j+k)/2 Z + (1+j-k)/2 Z + (i+k)/2 Z`, for `2 | D`, `m = 3 mod 4`.
    EvenDiscM3,
    /// `Z + (1+j)/2 Z + k Z + (i+k)/2 Z`, for `m = 1 mod 4`.
    M1,
    /// `Z + (1+i)/2 Z + j Z + (j+k)/2 Z`, for `m = 1`, `D = 1 mod 4`.
    M1D1,
    /// `Z + (1+k)/2 Z + j Z + (i+j)/2 Z`, for `m = 1`, `D = 3 mod 4`.
    M1D3,
}

impl LemmaOrderKind {
    pub fn label(self) -> &'static str {
        match self {
            LemmaOrderKind::EvenDiscM3 => "O",
            LemmaOrderKind::M1 => "O",
            LemmaOrderKind::M1D1 => "O1",
            LemmaOrderKind::M1D3 => "O3",
        }
    }

    pub fn basis(self) -> Vec<Quaternion> {
        let h = Quaternion::halves;
        match self {
            LemmaOrderKind::EvenDiscM3 => {
                vec![h(1, 1, 0, 0, 0), h(2, 1, 0, 1, 1), h(2, 1, 0, 1, -1), h(2, 0, 1, 0, 1)]
            }
            LemmaOrderKind::M1 => vec![h(1, 1, 0, 0, 0), h(2, 1, 0, 1, 0), h(1, 0, 0, 0, 1), h(2, 0, 1, 0, 1)],
            LemmaOrderKind::M1D1 => vec![h(1, 1, 0, 0, 0), h(2, 1, 1, 0, 0), h(1, 0, 0, 1, 0), h(2, 0, 0, 1, 1)],
            LemmaOrderKind::M1D3 => vec![h(1, 1, 0, 0, 0), h(2, 1, 0, 0, 1), h(1, 0, 0, 1, 0), h(2, 0, 1, 1, 0)],
        }
    }
}

/// The closed-form orders of discriminant `D` available for `(D, m)`.
pub fn lemma_order_kinds(disc: u64, m: u64) -> Result<Vec<LemmaOrderKind>, QuatError> {
    if disc % 2 == 0 && m % 4 == 3 {
        Ok(vec![LemmaOrderKind::EvenDiscM3])
    } else if m % 4 == 1 {
        match disc % 4 {
            1 => Ok(vec![LemmaOrderKind::M1, LemmaOrderKind::M1D1]),
            3 => Ok(vec![LemmaOrderKind::M1, LemmaOrderKind::M1D3]),
            _ => Ok(vec![LemmaOrderKind::M1]),
        }
    } else {
        Err(QuatError::CongruenceOutOfScope { disc, m })
    }
}

/// The closed-form order(s) for `(D, m)`, each validated as an order of
/// reduced discriminant `D`.
pub fn lemma_order(algebra: &QuatAlgebra) -> Result<Vec<(LemmaOrderKind, QuatOrder)>, QuatError> {
    let kinds = lemma_order_kinds(algebra.disc(), algebra.m())?;
    let mut out = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let order = QuatOrder::from_basis(algebra, &kind.basis())?;
        let rd = order.reduced_discriminant()?;
        if rd.value != BigInt::from(algebra.disc()) {
            return Err(QuatError::NotAnOrder(format!(
                "closed-form order {} has reduced discriminant {}",
                kind.label(),
                rd.value
            )));
        }
        out.push((kind, order));
    }
    Ok(out)
}

impl QuatOrder {
    /// Index `[other : self]` for `self` contained in `other`.
    pub fn index_in(&self, other: &QuatOrder) -> Option<BigInt> {
        if !self.basis().iter().all(|e| other.contains(e)) {
            return None;
        }
        let ratio = self.lattice.covolume() / other.lattice.covolume();
        debug_assert!(ratio.is_integer());
        Some(ratio.to_integer())
    }
}
