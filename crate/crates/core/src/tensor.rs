//! Formal sums of simple tensors of graded monomials: the connected-sum
//! pullback calculus and the maximal-length independence certificate.

use crate::graded::{Generator, Monomial};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("desk scale exceeded: n and N are capped at 5")]
    ScaleExceeded,
}

/// A finite sum of simple tensors with a fixed number of slots. The length
/// of a simple tensor is the number of slots holding a non-scalar monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorClass {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, BigRational>,
}

impl TensorClass {
    pub fn zero(arity: usize) -> Self {
        TensorClass {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        let mut t = TensorClass::zero(arity);
        t.add_term(vec![Monomial::one(); arity], BigRational::one());
        t
    }

    /// 1 ⊗ … ⊗ m ⊗ … ⊗ 1 with m in the given slot.
    pub fn single(arity: usize, slot: usize, m: Monomial) -> Self {
        assert!(slot < arity);
        let mut slots = vec![Monomial::one(); arity];
        slots[slot] = m;
        let mut t = TensorClass::zero(arity);
        t.add_term(slots, BigRational::one());
        t
    }

    pub fn simple(slots: Vec<Monomial>, coeff: BigRational) -> Self {
        let mut t = TensorClass::zero(slots.len());
        t.add_term(slots, coeff);
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slots: Vec<Monomial>, coeff: BigRational) {
        assert_eq!(slots.len(), self.arity);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(slots).or_insert_with(BigRational::zero);
        *entry += coeff;
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

    pub fn add(&self, other: &TensorClass) -> TensorClass {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (slots, c) in &other.terms {
            out.add_term(slots.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> TensorClass {
        if c.is_zero() {
            return TensorClass::zero(self.arity);
        }
        TensorClass {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Slotwise product in the tensor ring.
    pub fn mul(&self, other: &TensorClass) -> TensorClass {
        assert_eq!(self.arity, other.arity);
        let mut out = TensorClass::zero(self.arity);
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                let slots: Vec<Monomial> = s1.iter().zip(s2).map(|(a, b)| a.mul(b)).collect();
                out.add_term(slots, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TensorClass {
        let mut out = TensorClass::one(self.arity);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &BigRational)> {
        self.terms.iter()
    }

    pub fn length_of(slots: &[Monomial]) -> usize {
        slots.iter().filter(|m| !m.is_one()).count()
    }

    pub fn max_length(&self) -> usize {
        self.terms
            .keys()
            .map(|s| Self::length_of(s))
            .max()
            .unwrap_or(0)
    }

    /// All simple tensors of maximal length, with coefficients.
    pub fn max_length_terms(&self) -> Vec<(Vec<Monomial>, BigRational)> {
        let max = self.max_length();
        self.terms
            .iter()
            .filter(|(s, _)| Self::length_of(s) == max)
            .map(|(s, c)| (s.clone(), c.clone()))
            .collect()
    }
}

impl std::fmt::Display for TensorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (slots, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*[", c)?;
            for (j, m) in slots.iter().enumerate() {
                if j > 0 {
                    write!(f, " (x) ")?;
                }
                write!(f, "{}", m)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Pullback of an ell-monomial under the connected-sum map with n summands:
/// each l_i expands to the sum over slots of 1 ⊗ … ⊗ l_i ⊗ … ⊗ 1, and
/// monomials expand multiplicatively.
pub fn connected_sum_pullback(monomial: &Monomial, n: usize) -> TensorClass {
    assert!(n >= 1);
    let mut out = TensorClass::one(n);
    for (g, e) in &monomial.0 {
        debug_assert!(matches!(g, Generator::Ell(_)), "expected an ell-monomial");
        let mut diag = TensorClass::zero(n);
        for slot in 0..n {
            diag = diag.add(&TensorClass::single(n, slot, Monomial::generator(*g)));
        }
        out = out.mul(&diag.pow(*e));
    }
    out
}

/// Certificate datum for one monomial: the common slot multiset of all its
/// maximal-length tensors (sorted, scalar slots included).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificateEntry {
    pub monomial: Monomial,
    pub max_length: usize,
    pub slot_multiset: Vec<Monomial>,
}

#[derive(Clone, Debug)]
pub struct IndependenceCertificate {
    pub generators: u32,
    pub total_degree_cap: u32,
    pub entries: Vec<CertificateEntry>,
    pub injective: bool,
}

fn exponent_tuples(n: u32, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n as usize];
    fn rec(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            rec(current, pos + 1, remaining - e, out);
        }
        current[pos] = 0;
    }
    rec(&mut current, 0, cap, &mut out);
    out.sort();
    out
}

/// Expands the pullback of every monomial l_1^{m_1}…l_n^{m_n} with
/// Σ m_i ≤ cap over cap slots, extracts the maximal-length tensors, and
/// checks that the monomial → slot-multiset map is injective.
pub fn independence_certificate(n: u32, cap: u32) -> Result<IndependenceCertificate, TensorError> {
    if n == 0 || cap == 0 || n > 5 || cap > 5 {
        return Err(TensorError::ScaleExceeded);
    }
    let slots = cap as usize;
    let mut entries = Vec::new();
    for exps in exponent_tuples(n, cap) {
        let mut monomial = Monomial::one();
        for (idx, e) in exps.iter().enumerate() {
            if *e > 0 {
                monomial = monomial.mul(&Monomial::power(Generator::Ell(idx as u32 + 1), *e));
            }
        }
        let expansion = connected_sum_pullback(&monomial, slots);
        let max_terms = expansion.max_length_terms();
        let max_length = expansion.max_length();
        let mut multisets: BTreeSet<Vec<Monomial>> = BTreeSet::new();
        for (term_slots, _) in &max_terms {
            let mut sorted = term_slots.clone();
            sorted.sort();
            multisets.insert(sorted);
        }
        // all maximal-length terms are slot permutations of one another
        debug_assert_eq!(multisets.len(), 1);
        let slot_multiset = multisets.into_iter().next().expect("nonzero expansion");
        debug_assert_eq!(max_length, exps.iter().sum::<u32>() as usize);
        entries.push(CertificateEntry {
            monomial,
            max_length,
            slot_multiset,
        });
    }
    let distinct: BTreeSet<&Vec<Monomial>> = entries.iter().map(|e| &e.slot_multiset).collect();
    let injective = distinct.len() == entries.len();
    Ok(IndependenceCertificate {
        generators: n,
        total_degree_cap: cap,
        entries,
        injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ell(i: u32) -> Monomial {
        Monomial::generator(Generator::Ell(i))
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn single_class_expands_to_diagonal_sum() {
        let t = connected_sum_pullback(&ell(1), 2);
        let mut expected = TensorClass::zero(2);
        expected.add_term(vec![ell(1), Monomial::one()], rat(1));
        expected.add_term(vec![Monomial::one(), ell(1)], rat(1));
        assert_eq!(t, expected);
    }

    #[test]
    fn square_expands_with_binomial_coefficient() {
        let sq = Monomial::power(Generator::Ell(1), 2);
        let t = connected_sum_pullback(&sq, 2);
        let mut expected = TensorClass::zero(2);
        expected.add_term(
            vec![Monomial::power(Generator::Ell(1), 2), Monomial::one()],
            rat(1),
        );
        expected.add_term(vec![ell(1), ell(1)], rat(2));
        expected.add_term(
            vec![Monomial::one(), Monomial::power(Generator::Ell(1), 2)],
            rat(1),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn pullback_with_one_slot_is_identity() {
        let m = Monomial::power(Generator::Ell(2), 3);
        let t = connected_sum_pullback(&m, 1);
        assert_eq!(t, TensorClass::simple(vec![m], rat(1)));
    }

    #[test]
    fn pullback_is_multiplicative() {
        let a = Monomial::power(Generator::Ell(1), 2);
        let b = ell(2).mul(&ell(1));
        let lhs = connected_sum_pullback(&a.mul(&b), 3);
        let rhs = connected_sum_pullback(&a, 3).mul(&connected_sum_pullback(&b, 3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn max_length_terms_are_permutations() {
        let t = connected_sum_pullback(&ell(1).mul(&ell(2)), 3);
        let max = t.max_length_terms();
        assert_eq!(t.max_length(), 2);
        // l1 and l2 in distinct slots: 3·2 = 6 ordered placements
        assert_eq!(max.len(), 6);
    }

    #[test]
    fn certificate_distinguishes_l2_from_l1_squared() {
        let cert = independence_certificate(2, 2).unwrap();
        assert!(cert.injective);
        let find = |m: &Monomial| {
            cert.entries
                .iter()
                .find(|e| &e.monomial == m)
                .expect("monomial present")
                .slot_multiset
                .clone()
        };
        let sq = Monomial::power(Generator::Ell(1), 2);
        assert_ne!(find(&sq), find(&ell(2)));
    }

    #[test]
    fn base_case_certificate() {
        let cert = independence_certificate(1, 2).unwrap();
        assert!(cert.injective);
        assert_eq!(cert.entries.len(), 3); // 1, l1, l1^2
    }

    #[test]
    fn scale_guard() {
        assert_eq!(
            independence_certificate(6, 2).unwrap_err(),
            TensorError::ScaleExceeded
        );
    }

    #[test]
    fn certificates_are_injective_at_desk_scale() {
        for n in 1..=5u32 {
            for cap in 1..=5u32 {
                let cert = independence_certificate(n, cap).unwrap();
                assert!(cert.injective, "(n,cap) = ({n},{cap})");
            }
        }
        let full = independence_certificate(5, 5).unwrap();
        assert_eq!(full.entries.len(), 252); // C(10,5) exponent tuples
    }
}
