//! Genus calculus for the x/tanh(x/2) multiplicative sequence: rank-2
//! components, fiber integration for surface bundles, the rank-3 real Chern
//! character, the ell classes, and their expansion for products of surfaces.

use crate::graded::{Generator, GradedPolynomial, Monomial};
use crate::series::l_tilde_series;
use crate::tensor::TensorClass;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GenusError {
    #[error("rank {0} not supported: only ranks 1..=3 are implemented")]
    UnsupportedRank(u32),
    #[error("a product of surfaces needs an even number of factors")]
    OddArity,
}

/// Degree-4j component of the x/tanh(x/2) sequence for a rank-2 oriented
/// bundle: the coefficient of x^(2j) times e^(2j). For j = 0 this is the
/// constant 2.
pub fn l_tilde_rank2(j: u32) -> GradedPolynomial {
    let c = l_tilde_series(2 * j as usize).coeff(2 * j as usize);
    GradedPolynomial::monomial(Monomial::power(Generator::Euler, 2 * j), c)
}

/// Fiber integration along a surface bundle on polynomials in the Euler
/// class: e^(m+1) ↦ kappa_m for m ≥ 1, e ↦ kappa_0 (kept symbolic), and
/// constants integrate to zero.
pub fn fiber_integrate_surface(poly: &GradedPolynomial) -> GradedPolynomial {
    let mut out = GradedPolynomial::zero();
    for (m, c) in poly.terms() {
        let e_pow = m.exponent(Generator::Euler);
        debug_assert_eq!(
            m.degree(),
            2 * e_pow,
            "fiber integration input must be a polynomial in e"
        );
        if e_pow == 0 {
            continue;
        }
        out.add_term(Monomial::generator(Generator::Kappa(e_pow - 1)), c.clone());
    }
    out
}

/// Total Chern character of the complexified universal bundle, as a
/// polynomial in p1. For rank 3 this is 1 + 2·cosh(x) with x² = p1, so
/// 3 + p1 + p1²/12 + p1³/360 + …; rank 2 drops the trivial summand and
/// rank 1 is the constant 1.
pub fn chern_character_real(rank: u32, max_degree: u32) -> Result<GradedPolynomial, GenusError> {
    if rank == 0 || rank > 3 {
        return Err(GenusError::UnsupportedRank(rank));
    }
    debug_assert!(max_degree % 2 == 0, "max_degree should be even");
    let constant = GradedPolynomial::constant_i64(rank as i64);
    if rank == 1 {
        return Ok(constant);
    }
    let mut out = constant;
    let mut m = 1u32;
    while 4 * m <= max_degree {
        // coefficient of x^(2m) in 2·cosh(x) is 2/(2m)!
        let fact = (1..=2 * m as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        let c = BigRational::new(BigInt::from(2), fact);
        out.add_term(Monomial::power(Generator::P1, m), c);
        m += 1;
    }
    Ok(out)
}

/// The degree-d component ch_d of the rank-3 Chern character.
pub fn chern_character_component(rank: u32, degree: u32) -> Result<GradedPolynomial, GenusError> {
    Ok(chern_character_real(rank, degree)?.component(degree))
}

#[derive(Clone, Debug)]
pub struct Bo3RelationReport {
    pub ch4_squared: GradedPolynomial,
    pub twelve_ch8: GradedPolynomial,
    pub equal: bool,
    /// The analogous degree-12 products, reported but not matched against
    /// any stated identity: ch4·ch8 and ch12, plus their constant ratio.
    pub ch4_times_ch8: GradedPolynomial,
    pub ch12: GradedPolynomial,
    pub degree12_ratio: Option<BigRational>,
}

/// Checks ch4² = 12·ch8 in ℚ[p1] for the rank-3 Chern character.
pub fn verify_bo3_relation() -> Bo3RelationReport {
    let ch4 = chern_character_component(3, 4).expect("rank 3 supported");
    let ch8 = chern_character_component(3, 8).expect("rank 3 supported");
    let ch12 = chern_character_component(3, 12).expect("rank 3 supported");
    let ch4_squared = ch4.mul(&ch4);
    let twelve_ch8 = ch8.scale(&BigRational::from_integer(BigInt::from(12)));
    let equal = ch4_squared == twelve_ch8;
    let ch4_times_ch8 = ch4.mul(&ch8);
    let p1_cubed = Monomial::power(Generator::P1, 3);
    let num = ch4_times_ch8.coefficient(&p1_cubed);
    let den = ch12.coefficient(&p1_cubed);
    let degree12_ratio = if den.is_zero() { None } else { Some(num / den) };
    Bo3RelationReport {
        ch4_squared,
        twelve_ch8,
        equal,
        ch4_times_ch8,
        ch12,
        degree12_ratio,
    }
}

/// l_i = 2·ch_{4i} in the rank-3 context: (4/(2i)!)·p1^i.
pub fn ell_from_ch(i: u32) -> GradedPolynomial {
    assert!(i >= 1);
    chern_character_component(3, 4 * i)
        .expect("rank 3 supported")
        .scale(&BigRational::from_integer(BigInt::from(2)))
}

#[derive(Clone, Debug)]
pub struct EllRelationReport {
    /// Constant c with l1² = c·l2, computed from first principles.
    pub computed_constant: BigRational,
    /// Constant of the underlying Chern-character identity ch4² = c·ch8.
    pub chern_relation_constant: BigRational,
    /// Whether the two constants agree. They do not: substituting
    /// l_i = 2·ch_{4i} doubles the constant, giving 24 rather than 12.
    pub matches_chern_constant: bool,
}

/// Computes the constant in l1² = c·l2 and compares it with the constant of
/// the ch4²/ch8 identity it is sometimes conflated with.
pub fn ell_relation() -> EllRelationReport {
    let l1 = ell_from_ch(1);
    let l2 = ell_from_ch(2);
    let p1_sq = Monomial::power(Generator::P1, 2);
    let computed_constant = l1.mul(&l1).coefficient(&p1_sq) / l2.coefficient(&p1_sq);
    let ch4 = chern_character_component(3, 4).expect("rank 3 supported");
    let ch8 = chern_character_component(3, 8).expect("rank 3 supported");
    let chern_relation_constant = ch4.mul(&ch4).coefficient(&p1_sq) / ch8.coefficient(&p1_sq);
    let matches_chern_constant = computed_constant == chern_relation_constant;
    EllRelationReport {
        computed_constant,
        chern_relation_constant,
        matches_chern_constant,
    }
}

/// Slot decomposition of l_i for a product of 2k surface bundles.
#[derive(Clone, Debug)]
pub struct SurfaceProductEll {
    pub genera: Vec<u32>,
    pub class_index: u32,
    /// Sum over tuples (m_1,…,m_2k) with Σ m_j = i + k of the slotwise
    /// product: slot j carries kappa_{2m_j − 1} when m_j ≥ 1 and the scalar
    /// constant of the degree-0 component when m_j = 0.
    pub expansion: TensorClass,
}

/// Expands l_i of a product of an even number of surface bundles as a sum
/// of external products of odd kappa classes with exact coefficients.
pub fn ell_product_of_surfaces(genera: &[u32], i: u32) -> Result<SurfaceProductEll, GenusError> {
    if genera.len() % 2 != 0 || genera.is_empty() {
        return Err(GenusError::OddArity);
    }
    assert!(i >= 1);
    let slots = genera.len();
    let k = (slots / 2) as u32;
    let total = (i + k) as usize;
    let series = l_tilde_series(2 * total);
    let mut expansion = TensorClass::zero(slots);
    let mut tuple = vec![0usize; slots];
    fn rec(
        tuple: &mut Vec<usize>,
        pos: usize,
        remaining: usize,
        series: &crate::series::FormalPowerSeries,
        expansion: &mut TensorClass,
    ) {
        if pos + 1 == tuple.len() {
            tuple[pos] = remaining;
            let mut coeff = BigRational::one();
            let mut slots_content = Vec::with_capacity(tuple.len());
            for &m in tuple.iter() {
                coeff *= series.coeff(2 * m);
                if m == 0 {
                    slots_content.push(Monomial::one());
                } else {
                    slots_content.push(Monomial::generator(Generator::Kappa(2 * m as u32 - 1)));
                }
            }
            expansion.add_term(slots_content, coeff);
            tuple[pos] = 0;
            return;
        }
        for m in 0..=remaining {
            tuple[pos] = m;
            rec(tuple, pos + 1, remaining - m, series, expansion);
        }
        tuple[pos] = 0;
    }
    rec(&mut tuple, 0, total, &series, &mut expansion);
    Ok(SurfaceProductEll {
        genera: genera.to_vec(),
        class_index: i,
        expansion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rank2_components_carry_series_coefficients() {
        assert_eq!(l_tilde_rank2(0), GradedPolynomial::constant_i64(2));
        assert_eq!(
            l_tilde_rank2(1),
            GradedPolynomial::monomial(Monomial::power(Generator::Euler, 2), rat(1, 6))
        );
        assert_eq!(
            l_tilde_rank2(2),
            GradedPolynomial::monomial(Monomial::power(Generator::Euler, 4), rat(-1, 360))
        );
    }

    #[test]
    fn fiber_integration_examples() {
        let e2 = GradedPolynomial::monomial(Monomial::power(Generator::Euler, 2), rat(1, 6));
        assert_eq!(
            fiber_integrate_surface(&e2),
            GradedPolynomial::monomial(Monomial::generator(Generator::Kappa(1)), rat(1, 6))
        );
        let e4 = GradedPolynomial::monomial(Monomial::power(Generator::Euler, 4), rat(-1, 360));
        assert_eq!(
            fiber_integrate_surface(&e4),
            GradedPolynomial::monomial(Monomial::generator(Generator::Kappa(3)), rat(-1, 360))
        );
        assert!(fiber_integrate_surface(&GradedPolynomial::constant_i64(2)).is_zero());
        // e^1 is kept as the symbol kappa_0
        let e1 = GradedPolynomial::from_generator(Generator::Euler);
        assert_eq!(
            fiber_integrate_surface(&e1),
            GradedPolynomial::from_generator(Generator::Kappa(0))
        );
    }

    #[test]
    fn fiber_integration_is_linear_and_lowers_degree_by_two() {
        let a = GradedPolynomial::monomial(Monomial::power(Generator::Euler, 3), rat(5, 7));
        let b = GradedPolynomial::monomial(Monomial::power(Generator::Euler, 2), rat(-2, 3));
        let sum = fiber_integrate_surface(&a.add(&b));
        assert_eq!(
            sum,
            fiber_integrate_surface(&a).add(&fiber_integrate_surface(&b))
        );
        for (m, _) in a.terms() {
            let image = fiber_integrate_surface(&GradedPolynomial::monomial(m.clone(), rat(1, 1)));
            for (im, _) in image.terms() {
                assert_eq!(im.degree() + 2, m.degree());
            }
        }
    }

    #[test]
    fn chern_character_components() {
        let ch = chern_character_real(3, 12).unwrap();
        assert_eq!(ch.component(0), GradedPolynomial::constant_i64(3));
        assert_eq!(
            ch.component(4),
            GradedPolynomial::from_generator(Generator::P1)
        );
        assert_eq!(
            ch.component(8),
            GradedPolynomial::monomial(Monomial::power(Generator::P1, 2), rat(1, 12))
        );
        assert_eq!(
            chern_character_real(7, 8).unwrap_err(),
            GenusError::UnsupportedRank(7)
        );
    }

    #[test]
    fn chern_character_lives_in_multiples_of_four() {
        let ch = chern_character_real(3, 20).unwrap();
        for d in ch.degrees() {
            assert_eq!(d % 4, 0);
        }
    }

    #[test]
    fn bo3_relation_holds() {
        let rep = verify_bo3_relation();
        assert!(rep.equal);
        assert_eq!(
            rep.ch4_squared,
            GradedPolynomial::monomial(Monomial::power(Generator::P1, 2), rat(1, 1))
        );
        assert_eq!(rep.ch4_squared, rep.twelve_ch8);
        // degree-12 bookkeeping: ch4·ch8 = p1^3/12, ch12 = p1^3/360
        assert_eq!(rep.degree12_ratio, Some(rat(30, 1)));
    }

    #[test]
    fn ell_classes_and_relation_constant() {
        assert_eq!(
            ell_from_ch(1),
            GradedPolynomial::monomial(Monomial::generator(Generator::P1), rat(2, 1))
        );
        assert_eq!(
            ell_from_ch(2),
            GradedPolynomial::monomial(Monomial::power(Generator::P1, 2), rat(1, 6))
        );
        let rel = ell_relation();
        assert_eq!(rel.computed_constant, rat(24, 1));
        assert_eq!(rel.chern_relation_constant, rat(12, 1));
        assert!(!rel.matches_chern_constant);
    }

    #[test]
    fn surface_product_slot_terms() {
        let out = ell_product_of_surfaces(&[18, 2], 1).unwrap();
        let t = &out.expansion;
        // (m1,m2) = (2,0): coefficient c4·c0 = (-1/360)·2 on kappa3 (x) 1
        let kappa3_slot = vec![Monomial::generator(Generator::Kappa(3)), Monomial::one()];
        let found: Vec<_> = t
            .terms()
            .filter(|(slots, _)| **slots == kappa3_slot)
            .collect();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].1, &(rat(-1, 360) * rat(2, 1)));
        // (1,1): (1/6)(1/6) on kappa1 (x) kappa1
        let kappa1_both = vec![
            Monomial::generator(Generator::Kappa(1)),
            Monomial::generator(Generator::Kappa(1)),
        ];
        let found: Vec<_> = t
            .terms()
            .filter(|(slots, _)| **slots == kappa1_both)
            .collect();
        assert_eq!(found[0].1, &(rat(1, 36)));
    }

    #[test]
    fn surface_product_rejects_odd_arity() {
        assert_eq!(
            ell_product_of_surfaces(&[5], 1).unwrap_err(),
            GenusError::OddArity
        );
    }

    #[test]
    fn surface_product_total_degree_is_4_i_plus_k() {
        // the pre-integration weight of a slot carrying kappa_{2m-1} is 4m;
        // scalar slots weigh 0; every term must total 4(i+k)
        for (genera, i) in [(vec![18u32, 2], 1u32), (vec![3, 3, 4, 5], 2)] {
            let k = (genera.len() / 2) as u32;
            let out = ell_product_of_surfaces(&genera, i).unwrap();
            for (slots, _) in out.expansion.terms() {
                let weight: u32 = slots
                    .iter()
                    .map(|m| match m.0.first_key_value() {
                        Some((Generator::Kappa(j), _)) => 2 * (j + 1),
                        None => 0,
                        _ => panic!("unexpected generator"),
                    })
                    .sum();
                assert_eq!(weight, 4 * (i + k));
            }
        }
    }
}
