use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::resolvent::f20_resolvent;
use super::{is_square_int, is_square_rat, NumFieldError};
use crate::exactmath::{
    divisors, factor_degrees_mod_p, isqrt_exact, mod_u64, next_prime, poly_disc, rational_roots, BigRat, UniPoly,
};

/// Usable primes sampled by default when looking for cycle types.
pub const DEFAULT_BUDGET: usize = 200;
const QUARTIC_SAMPLE: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GaloisLabel {
    C5,
    D5,
    F5,
    A5,
    S5,
    C4,
    V4,
    D4,
    A4,
    S4,
}

impl fmt::Display for GaloisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Cycle types (ascending cycle lengths) of the elements of each transitive
/// group, as a permutation group on the roots.
pub fn allowed_cycle_types(label: GaloisLabel) -> Vec<Vec<usize>> {
    let t = |v: &[&[usize]]| v.iter().map(|x| x.to_vec()).collect::<Vec<_>>();
    match label {
        GaloisLabel::C5 => t(&[&[1, 1, 1, 1, 1], &[5]]),
        GaloisLabel::D5 => t(&[&[1, 1, 1, 1, 1], &[5], &[1, 2, 2]]),
        GaloisLabel::F5 => t(&[&[1, 1, 1, 1, 1], &[5], &[1, 2, 2], &[1, 4]]),
        GaloisLabel::A5 => t(&[&[1, 1, 1, 1, 1], &[5], &[1, 2, 2], &[1, 1, 3]]),
        GaloisLabel::S5 => {
            t(&[&[1, 1, 1, 1, 1], &[5], &[1, 2, 2], &[1, 1, 3], &[1, 4], &[1, 1, 1, 2], &[2, 3]])
        }
        GaloisLabel::C4 => t(&[&[1, 1, 1, 1], &[4], &[2, 2]]),
        GaloisLabel::V4 => t(&[&[1, 1, 1, 1], &[2, 2]]),
        GaloisLabel::D4 => t(&[&[1, 1, 1, 1], &[2, 2], &[1, 1, 2], &[4]]),
        GaloisLabel::A4 => t(&[&[1, 1, 1, 1], &[2, 2], &[1, 3]]),
        GaloisLabel::S4 => t(&[&[1, 1, 1, 1], &[2, 2], &[1, 1, 2], &[4], &[1, 3]]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Confidence {
    Exact,
    /// One-sided: a group strictly larger than the label would have shown
    /// an excluded cycle type with probability growing in `budget`.
    MonteCarlo { budget: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleTypeCount {
    pub cycle_type: Vec<usize>,
    pub count: usize,
    pub first_prime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuinticResolvent {
    /// Prime at which the quintic splits and its roots were lifted.
    pub prime: u64,
    pub precision: u32,
    pub tschirnhaus: i64,
    pub coefficients: Vec<String>,
    pub rational_root: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticResolvent {
    pub cubic: UniPoly,
    pub rational_roots: Vec<String>,
    /// For a single rational root `r`: discriminants of `x^2 - r x + d` and
    /// `x^2 + a x + (b - r)`, which must both split over `Q(sqrt(disc))` for
    /// the group to be cyclic.
    pub cyclic_test: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisCertificate {
    pub input: UniPoly,
    /// Monic integer polynomial actually classified.
    pub classified: UniPoly,
    /// `x -> x / a` when the input was not monic.
    pub substitution: Option<String>,
    pub discriminant: String,
    pub disc_square: bool,
    pub quintic_resolvent: Option<QuinticResolvent>,
    pub quartic_resolvent: Option<QuarticResolvent>,
    pub cycle_types: Vec<CycleTypeCount>,
    pub primes_used: usize,
    pub first_prime: u64,
    pub last_prime: u64,
    pub seed: u64,
    pub irreducibility: String,
    pub confidence: Confidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisResult {
    pub label: GaloisLabel,
    pub certificate: GaloisCertificate,
}

impl GaloisResult {
    pub fn saw(&self, cycle_type: &[usize]) -> bool {
        self.certificate.cycle_types.iter().any(|c| c.cycle_type == cycle_type)
    }
}

struct Sample {
    types: Vec<CycleTypeCount>,
    used: usize,
    first: u64,
    last: u64,
}

/// Frobenius cycle types at `budget` consecutive primes from `start` that do
/// not divide the discriminant of the monic polynomial `g`.
fn sample_cycle_types(g: &UniPoly, disc: &BigInt, start: u64, budget: usize) -> Result<Sample, NumFieldError> {
    let mut counts: BTreeMap<Vec<usize>, (usize, u64)> = BTreeMap::new();
    let mut p = next_prime(start);
    let (mut used, first) = (0, p);
    let mut last = p;
    while used < budget {
        if mod_u64(disc, p) != 0 {
            let t = factor_degrees_mod_p(g, p)?;
            counts.entry(t).or_insert((0, p)).0 += 1;
            used += 1;
            last = p;
        }
        p = next_prime(p + 1);
    }
    let types = counts
        .into_iter()
        .map(|(cycle_type, (count, first_prime))| CycleTypeCount { cycle_type, count, first_prime })
        .collect();
    Ok(Sample { types, used, first, last })
}

struct Prepared {
    input: UniPoly,
    monic: UniPoly,
    substitution: Option<String>,
    disc: BigInt,
}

fn prepare(f: &UniPoly, degree: usize) -> Result<Prepared, NumFieldError> {
    let (monic, a) = f.monic_substitution();
    let disc = poly_disc(&monic)?;
    if disc.is_zero() {
        return Err(NumFieldError::ZeroDiscriminant);
    }
    if let Some(r) = rational_roots(&monic).first() {
        // report the root of the caller's polynomial
        let root = r / BigRat::from_integer(a.clone());
        return Err(NumFieldError::Reducible(format!("rational root {root}")));
    }
    debug_assert_eq!(monic.degree(), degree);
    let substitution = (a != BigInt::from(1)).then(|| format!("x -> x/{a}"));
    Ok(Prepared { input: f.clone(), monic, substitution, disc: disc.to_integer() })
}

fn check_consistent(label: GaloisLabel, types: &[CycleTypeCount]) -> Result<(), NumFieldError> {
    let allowed = allowed_cycle_types(label);
    match types.iter().find(|t| !allowed.contains(&t.cycle_type)) {
        Some(t) => Err(NumFieldError::Inconsistent(format!(
            "cycle type {:?} at p = {} cannot occur in {label}",
            t.cycle_type, t.first_prime
        ))),
        None => Ok(()),
    }
}

/// Galois group of an irreducible integer quintic.
///
/// The discriminant decides membership in A5 and a degree-6 resolvent
/// decides membership in the Frobenius group F20, both exactly. That leaves
/// C5 against D5 when both hold, which only sampling can separate: seeing a
/// double transposition proves D5, and C5 is reported with Monte-Carlo
/// confidence when none appears among `budget` unramified primes. Sampling
/// starts at the prime after `101 + seed mod 10000`.
pub fn quintic_galois(f: &UniPoly, budget: usize, seed: u64) -> Result<GaloisResult, NumFieldError> {
    if f.degree() != 5 {
        return Err(NumFieldError::NotQuintic(f.degree()));
    }
    let prep = prepare(f, 5)?;
    let disc_square = is_square_int(&prep.disc);
    let start = 101 + seed % 10_000;
    let sample = sample_cycle_types(&prep.monic, &prep.disc, start, budget)?;
    let res = f20_resolvent(&prep.monic, &prep.disc)?;
    let in_f20 = res.rational_root.is_some();

    let saw = |t: &[usize]| sample.types.iter().any(|c| c.cycle_type == t);
    let (label, confidence) = match (disc_square, in_f20) {
        (true, true) if saw(&[1, 2, 2]) => (GaloisLabel::D5, Confidence::Exact),
        (true, true) => (GaloisLabel::C5, Confidence::MonteCarlo { budget, seed }),
        (true, false) => (GaloisLabel::A5, Confidence::Exact),
        (false, true) => (GaloisLabel::F5, Confidence::Exact),
        (false, false) => (GaloisLabel::S5, Confidence::Exact),
    };
    check_consistent(label, &sample.types)?;

    // without a linear factor the only other factorisation is 2 + 3, which
    // admits neither a 5-cycle nor a 4-cycle
    let witness = sample.types.iter().find(|c| c.cycle_type == [5] || c.cycle_type == [1, 4]);
    let irreducibility = match witness {
        Some(c) => format!("certified: no rational root and cycle type {:?} at p = {}", c.cycle_type, c.first_prime),
        None => format!("assumed: no 5-cycle or 4-cycle among {} primes", sample.used),
    };

    Ok(GaloisResult {
        label,
        certificate: GaloisCertificate {
            input: prep.input,
            classified: prep.monic,
            substitution: prep.substitution,
            discriminant: prep.disc.to_string(),
            disc_square,
            quintic_resolvent: Some(QuinticResolvent {
                prime: res.prime,
                precision: res.precision,
                tschirnhaus: res.tschirnhaus,
                coefficients: res.coeffs.iter().map(|c| c.to_string()).collect(),
                rational_root: res.rational_root.map(|r| r.to_string()),
            }),
            quartic_resolvent: None,
            cycle_types: sample.types,
            primes_used: sample.used,
            first_prime: sample.first,
            last_prime: sample.last,
            seed,
            irreducibility,
            confidence,
        },
    })
}

/// `x^2 + u x + v` splits over `Q(sqrt(delta))`.
fn splits_over(u: &BigRat, v: &BigRat, delta: &BigRat) -> (bool, BigRat) {
    let disc = u * u - BigRat::from_integer(4.into()) * v;
    let ok = is_square_rat(&disc) || is_square_rat(&(&disc * delta));
    (ok, disc)
}

/// Galois group of an irreducible integer quartic through its resolvent
/// cubic `y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)`.
/// A factor `x^2 + p x + q` over Z of a monic integral quartic without
/// rational roots, found by running `q` over the divisors of the constant term.
fn quadratic_factor(f: &UniPoly) -> Option<UniPoly> {
    let c = f.int_coeffs().ok()?;
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    for q in divisors(d).into_iter().flat_map(|q| [q.clone(), -q]) {
        let s = d / &q;
        // p + r = a, p r = b - q - s, p s + q r = c
        let prod = b - &q - &s;
        let disc = a * a - BigInt::from(4) * &prod;
        let Some(root) = (!disc.is_negative()).then(|| isqrt_exact(&disc)).flatten() else { continue };
        for p2 in [a + &root, a - &root] {
            if p2.is_odd() {
                continue;
            }
            let p = &p2 / 2;
            let r = a - &p;
            if &p * &s + &q * &r == *cc {
                return Some(UniPoly::from_bigints(&[q, p, BigInt::from(1)]));
            }
        }
    }
    None
}

pub fn quartic_galois(g: &UniPoly) -> Result<GaloisResult, NumFieldError> {
    if g.degree() != 4 {
        return Err(NumFieldError::NotQuartic(g.degree()));
    }
    let prep = prepare(g, 4)?;
    if let Some(q) = quadratic_factor(&prep.monic) {
        return Err(NumFieldError::Reducible(format!("quadratic factor {q} of the monic form")));
    }
    let [d, c, b, a] = [0, 1, 2, 3].map(|i| prep.monic.coeff(i));
    let four = BigRat::from_integer(4.into());
    let cubic = UniPoly::new(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b.clone(),
        BigRat::from_integer(1.into()),
    ]);
    let mut roots = rational_roots(&cubic);
    roots.dedup();
    let delta = BigRat::from_integer(prep.disc.clone());
    let disc_square = is_square_int(&prep.disc);

    let mut cyclic_test = None;
    let label = match roots.len() {
        0 if disc_square => GaloisLabel::A4,
        0 => GaloisLabel::S4,
        1 => {
            let r = &roots[0];
            let (ok1, d1) = splits_over(&-r, &d, &delta);
            let (ok2, d2) = splits_over(&a, &(&b - r), &delta);
            cyclic_test = Some(vec![d1.to_string(), d2.to_string()]);
            if ok1 && ok2 {
                GaloisLabel::C4
            } else {
                GaloisLabel::D4
            }
        }
        _ => GaloisLabel::V4,
    };
    let sample = sample_cycle_types(&prep.monic, &prep.disc, 101, QUARTIC_SAMPLE)?;
    check_consistent(label, &sample.types)?;
    let irreducibility = match sample.types.iter().find(|c| c.cycle_type == [4]) {
        Some(c) => format!("certified: 4-cycle at p = {}", c.first_prime),
        None => "certified: no rational root and no quadratic factor over Z".into(),
    };

    Ok(GaloisResult {
        label,
        certificate: GaloisCertificate {
            input: prep.input,
            classified: prep.monic,
            substitution: prep.substitution,
            discriminant: prep.disc.to_string(),
            disc_square,
            quintic_resolvent: None,
            quartic_resolvent: Some(QuarticResolvent {
                cubic,
                rational_roots: roots.iter().map(|r| r.to_string()).collect(),
                cyclic_test,
            }),
            cycle_types: sample.types,
            primes_used: sample.used,
            first_prime: sample.first,
            last_prime: sample.last,
            seed: 0,
            irreducibility,
            confidence: Confidence::Exact,
        },
    })
}
