//! Exact-rational polynomials in named graded generators: the Euler class e
//! (degree 2), the Pontryagin class p1 (degree 4), the kappa classes
//! kappa_j (degree 2j), and the ell classes l_i (degree 4i).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    Euler,
    P1,
    Kappa(u32),
    Ell(u32),
}

impl Generator {
    pub fn degree(&self) -> u32 {
        match self {
            Generator::Euler => 2,
            Generator::P1 => 4,
            Generator::Kappa(j) => 2 * j,
            Generator::Ell(i) => 4 * i,
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::Euler => write!(f, "e"),
            Generator::P1 => write!(f, "p1"),
            Generator::Kappa(j) => write!(f, "kappa{}", j),
            Generator::Ell(i) => write!(f, "l{}", i),
        }
    }
}

/// A multiset of generators; exponents are stored only when nonzero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub BTreeMap<Generator, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn generator(g: Generator) -> Self {
        Monomial(BTreeMap::from([(g, 1)]))
    }

    pub fn power(g: Generator, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(BTreeMap::from([(g, e)]))
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.degree() * e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (g, e) in &other.0 {
            *out.entry(*g).or_insert(0) += e;
        }
        Monomial(out)
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.0.get(&g).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", g)?;
            } else {
                write!(f, "{}^{}", g, e)?;
            }
        }
        Ok(())
    }
}

/// Exact-rational polynomial in graded generators; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        GradedPolynomial::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = GradedPolynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn constant_i64(c: i64) -> Self {
        GradedPolynomial::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn one() -> Self {
        GradedPolynomial::constant_i64(1)
    }

    pub fn from_generator(g: Generator) -> Self {
        let mut p = GradedPolynomial::zero();
        p.add_term(Monomial::generator(g), BigRational::one());
        p
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = GradedPolynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> GradedPolynomial {
        if c.is_zero() {
            return GradedPolynomial::zero();
        }
        GradedPolynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> GradedPolynomial {
        let mut out = GradedPolynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The degree-d homogeneous component.
    pub fn component(&self, degree: u32) -> GradedPolynomial {
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|m| m.degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

impl std::fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        entries.sort_by_key(|(m, _)| (m.degree(), (*m).clone()));
        for (i, (m, c)) in entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", c, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ring_axioms_hold_on_samples() {
        let e = GradedPolynomial::from_generator(Generator::Euler);
        let p = GradedPolynomial::from_generator(Generator::P1);
        let a = e.add(&p.scale(&rat(1, 2)));
        let b = p.mul(&e);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b.add(&e)), a.mul(&b).add(&a.mul(&e)));
    }

    #[test]
    fn degrees_are_tracked() {
        let m = Monomial::power(Generator::Ell(2), 3);
        assert_eq!(m.degree(), 24);
        assert_eq!(Monomial::generator(Generator::Kappa(3)).degree(), 6);
        assert_eq!(Monomial::generator(Generator::Kappa(0)).degree(), 0);
    }

    #[test]
    fn cancellation_removes_terms() {
        let e = GradedPolynomial::from_generator(Generator::Euler);
        assert!(e.sub(&e).is_zero());
    }

    #[test]
    fn display_is_sorted_by_degree() {
        let p = GradedPolynomial::from_generator(Generator::P1)
            .add(&GradedPolynomial::constant_i64(3))
            .add(&GradedPolynomial::monomial(
                Monomial::power(Generator::P1, 2),
                rat(1, 12),
            ));
        assert_eq!(p.to_string(), "3 + p1 + 1/12*p1^2");
    }
}
