use super::{inv_mod_u64, is_prime_u64, mod_u64, mul_mod_u64, ExactError, UniPoly};

/// Polynomial over the prime field `F_p`, coefficients ascending, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    /// Reduction of an integer polynomial modulo `p`.
    pub fn reduce(f: &UniPoly, p: u64) -> Result<Self, ExactError> {
        if !is_prime_u64(p) {
            return Err(ExactError::BadPrime(p));
        }
        let ints = f.int_coeffs()?;
        Ok(Self::new(p, ints.iter().map(|c| mod_u64(c, p)).collect()))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod_u64(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = divisor.degree();
        let inv_lead = inv_mod_u64(*divisor.coeffs.last().expect("nonzero"), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(p, Vec::new()), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = mul_mod_u64(rem[k + dd], inv_lead, p);
            if q == 0 {
                continue;
            }
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mul_mod_u64(q, c, p)) % p;
            }
            quot[k] = q;
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = inv_mod_u64(lead, self.p);
                Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod_u64(c, inv, self.p)).collect())
            }
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod_u64(c, i as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, c)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut acc = Self::new(self.p, vec![1]).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return self.degree() == 0;
        }
        self.gcd(&d).degree() == 0
    }

    /// Degrees of the irreducible factors of a squarefree polynomial by
    /// distinct-degree splitting.
    pub fn distinct_degree_pattern(&self) -> Vec<usize> {
        let p = self.p;
        let mut f = self.monic();
        let mut degrees = Vec::new();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                degrees.extend(std::iter::repeat_n(d, g.degree() / d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.degree() > 0 {
            degrees.push(f.degree());
        }
        degrees.sort_unstable();
        degrees
    }
}

/// Multiset (ascending) of degrees of the irreducible factors of `f` mod `p`.
pub fn factor_degrees_mod_p(f: &UniPoly, p: u64) -> Result<Vec<usize>, ExactError> {
    if !is_prime_u64(p) {
        return Err(ExactError::BadPrime(p));
    }
    let ints = f.int_coeffs()?;
    if ints.last().is_none_or(|c| mod_u64(c, p) == 0) {
        return Err(ExactError::BadPrime(p));
    }
    let fp = FpPoly::reduce(f, p)?;
    if !fp.is_squarefree() {
        return Err(ExactError::NotSquarefreeModP(p));
    }
    Ok(fp.distinct_degree_pattern())
}

/// Complete factorisation of `f` mod `p` into monic irreducibles with
/// multiplicities, by trial division over all monic candidates in order of
/// degree. Only meant for tiny fields (in practice `p = 2`).
pub fn factor_mod_p(f: &UniPoly, p: u64) -> Result<Vec<(FpPoly, usize)>, ExactError> {
    let mut g = FpPoly::reduce(f, p)?;
    if g.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let half = g.degree() / 2;
    let work = (p as f64).powi(half as i32);
    if work > 1e6 {
        return Err(ExactError::FieldTooLarge(format!("p = {p}, degree {}", g.degree())));
    }
    g = g.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d <= g.degree() {
        for cand in monic_polys(p, d) {
            let mut mult = 0;
            loop {
                let (q, r) = g.div_rem(&cand);
                if !r.is_zero() {
                    break;
                }
                g = q;
                mult += 1;
            }
            if mult > 0 {
                // candidates are tried by increasing degree, so any divisor
                // found here is irreducible
                out.push((cand, mult));
            }
        }
        d += 1;
    }
    if g.degree() > 0 {
        // what is left has no factor of degree <= half its degree
        out.push((g, 1));
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs.cmp(&b.0.coeffs)));
    Ok(out)
}

fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = FpPoly> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut n| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(n % p);
            n /= p;
        }
        c.push(1);
        FpPoly::new(p, c)
    })
}

impl FpPoly {
    pub fn to_uni(&self) -> UniPoly {
        UniPoly::from_ints(&self.coeffs.iter().map(|&c| c as i64).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn patterns() {
        let f = UniPoly::from_ints(&[-2, 0, 0, 0, 0, 1]);
        assert_eq!(factor_degrees_mod_p(&f, 3).unwrap(), vec![1, 4]);
        assert_eq!(factor_degrees_mod_p(&UniPoly::from_ints(&[1, 0, 1]), 5).unwrap(), vec![1, 1]);
        let quartic = UniPoly::from_ints(&[3, 4, 2, -1, 1]);
        assert_eq!(factor_degrees_mod_p(&quartic, 2).unwrap(), vec![4]);
    }

    #[test]
    fn errors() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(factor_degrees_mod_p(&f, 2), Err(ExactError::NotSquarefreeModP(2)));
        assert_eq!(factor_degrees_mod_p(&f, 9), Err(ExactError::BadPrime(9)));
        assert_eq!(factor_degrees_mod_p(&UniPoly::from_ints(&[1, 3]), 3), Err(ExactError::BadPrime(3)));
    }

    #[test]
    fn full_factorisation_mod_2() {
        let f = UniPoly::from_ints(&[3, 0, 1]);
        let fac = factor_mod_p(&f, 2).unwrap();
        assert_eq!(fac, vec![(FpPoly::new(2, vec![1, 1]), 2)]);
        let g = UniPoly::from_ints(&[1, 1, 1]);
        assert_eq!(factor_mod_p(&g, 2).unwrap(), vec![(FpPoly::new(2, vec![1, 1, 1]), 1)]);
    }

    // Exhaustive oracle: strip roots and then trial-divide by every monic
    // polynomial, recording the degree of each factor found.
    fn naive_degrees(coeffs: &[u64], p: u64) -> Vec<usize> {
        let mut f = FpPoly::new(p, coeffs.to_vec()).monic();
        let mut out = Vec::new();
        for d in 1..=f.degree() {
            if f.degree() == 0 {
                break;
            }
            for cand in monic_polys(p, d) {
                while f.degree() > 0 && f.rem(&cand).is_zero() {
                    f = f.div_rem(&cand).0;
                    out.push(d);
                }
            }
        }
        out.sort_unstable();
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn ddf_matches_naive(
            coeffs in proptest::collection::vec(-20i64..=20, 2..=6),
            pidx in 0usize..6,
        ) {
            let p = [2u64, 3, 5, 7, 11, 13][pidx];
            let f = UniPoly::from_ints(&coeffs);
            match factor_degrees_mod_p(&f, p) {
                Ok(degs) => {
                    prop_assert_eq!(degs.iter().sum::<usize>(), f.degree());
                    let red: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
                    prop_assert_eq!(degs, naive_degrees(&red, p));
                }
                Err(ExactError::BadPrime(_)) | Err(ExactError::NotSquarefreeModP(_)) => {}
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
