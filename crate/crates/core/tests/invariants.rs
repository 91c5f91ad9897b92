//! Property tests for the spec-level invariants: congruence invariance of
//! the signature, additivity under direct sums, negation closure of vector
//! enumeration, exactness of the index identity, linearity of fiber
//! integration, and the ring-homomorphism law of the connected-sum pullback.

use nielsen_core::genus::fiber_integrate_surface;
use nielsen_core::graded::{Generator, GradedPolynomial, Monomial};
use nielsen_core::lattice::{Lattice, Vector};
use nielsen_core::linalg::{det_bareiss, int_identity, int_mat_mul, int_transpose};
use nielsen_core::tensor::connected_sum_pullback;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn symmetric_gram(n: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    proptest::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |upper| {
        let mut gram = vec![vec![BigInt::from(0); n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let v = BigInt::from(it.next().unwrap());
                gram[i][j] = v.clone();
                gram[j][i] = v;
            }
        }
        gram
    })
}

/// Unimodular matrices as products of elementary shears and swaps.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut u = int_identity(n);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            // row_i += c * row_j
            for col in 0..n {
                let t = BigInt::from(c) * &u[j][col];
                u[i][col] += t;
            }
        }
        u
    })
}

proptest! {
    #[test]
    fn signature_is_congruence_invariant(
        gram in symmetric_gram(4),
        u in unimodular(4),
    ) {
        prop_assume!(det_bareiss(&u).abs() == BigInt::from(1));
        let l = Lattice::new(gram.clone()).unwrap();
        let conj = int_mat_mul(&int_mat_mul(&int_transpose(&u), &gram), &u);
        let l2 = Lattice::new(conj).unwrap();
        prop_assert_eq!(l.signature(), l2.signature());
    }

    #[test]
    fn direct_sum_adds_signatures(a in symmetric_gram(2), b in symmetric_gram(3)) {
        let la = Lattice::new(a).unwrap();
        let lb = Lattice::new(b).unwrap();
        let sum = la.direct_sum(&lb);
        let (sa, sb, ss) = (la.signature(), lb.signature(), sum.signature());
        prop_assert_eq!(ss.positive, sa.positive + sb.positive);
        prop_assert_eq!(ss.negative, sa.negative + sb.negative);
        prop_assert_eq!(ss.rank_deficit, sa.rank_deficit + sb.rank_deficit);
    }

    #[test]
    fn enumeration_is_negation_closed_and_duplicate_free(
        gram in symmetric_gram(3),
        norm in -6i64..=6,
    ) {
        let l = Lattice::new(gram).unwrap();
        let vs = l.enumerate_vectors(norm, Some(2)).unwrap();
        for w in vs.windows(2) {
            prop_assert!(w[0] < w[1], "strictly sorted output");
        }
        for v in &vs {
            prop_assert!(vs.binary_search(&v.negated()).is_ok());
        }
    }

    #[test]
    fn index_identity_is_exact(
        gram in symmetric_gram(3),
        coords in proptest::collection::vec(-2i64..=2, 3),
    ) {
        let l = Lattice::new(gram).unwrap();
        let v = Vector::from_i64(&coords);
        prop_assume!(!v.is_zero());
        let rep = l.sublattice_report(&[v]).unwrap();
        if let nielsen_core::lattice::IndexInAmbient::Finite(idx) = rep.index_in_ambient {
            let lhs = &idx * &idx * l.det().abs();
            let rhs = det_bareiss(&rep.span_gram).abs()
                * det_bareiss(&rep.complement_gram).abs();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fiber_integration_is_linear(
        terms in proptest::collection::vec((0u32..6, -9i64..=9, 1i64..=9), 1..5),
        more in proptest::collection::vec((0u32..6, -9i64..=9, 1i64..=9), 1..5),
    ) {
        let poly = |ts: &[(u32, i64, i64)]| {
            let mut p = GradedPolynomial::zero();
            for (pow, n, d) in ts {
                p.add_term(
                    Monomial::power(Generator::Euler, *pow),
                    BigRational::new(BigInt::from(*n), BigInt::from(*d)),
                );
            }
            p
        };
        let a = poly(&terms);
        let b = poly(&more);
        let sum_first = fiber_integrate_surface(&a.add(&b));
        let integrate_first = fiber_integrate_surface(&a).add(&fiber_integrate_surface(&b));
        prop_assert_eq!(sum_first, integrate_first);
    }

    #[test]
    fn pullback_is_a_ring_homomorphism(
        xs in proptest::collection::vec((1u32..=4, 1u32..=2), 0..3),
        ys in proptest::collection::vec((1u32..=4, 1u32..=2), 0..3),
        slots in 1usize..=4,
    ) {
        let monomial = |ps: &[(u32, u32)]| {
            let mut m = Monomial::one();
            for (i, e) in ps {
                m = m.mul(&Monomial::power(Generator::Ell(*i), *e));
            }
            m
        };
        let x = monomial(&xs);
        let y = monomial(&ys);
        let lhs = connected_sum_pullback(&x.mul(&y), slots);
        let rhs = connected_sum_pullback(&x, slots).mul(&connected_sum_pullback(&y, slots));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn max_length_multiset_is_permutation_invariant(
        exps in proptest::collection::vec(0u32..=2, 3),
        perm_seed in 0usize..6,
    ) {
        let n = 3usize;
        let mut m = Monomial::one();
        for (i, e) in exps.iter().enumerate() {
            m = m.mul(&Monomial::power(Generator::Ell(i as u32 + 1), *e));
        }
        prop_assume!(exps.iter().sum::<u32>() as usize <= n);
        let expansion = connected_sum_pullback(&m, n);
        let perms = [[0usize,1,2],[0,2,1],[1,0,2],[1,2,0],[2,0,1],[2,1,0]];
        let perm = perms[perm_seed];
        // permute the slots of every maximal-length term
        let base: Vec<Vec<Monomial>> = expansion
            .max_length_terms()
            .into_iter()
            .map(|(slots, _)| {
                let mut sorted = slots;
                sorted.sort();
                sorted
            })
            .collect();
        let permuted: Vec<Vec<Monomial>> = expansion
            .max_length_terms()
            .into_iter()
            .map(|(slots, _)| {
                let mut moved: Vec<Monomial> = perm.iter().map(|&p| slots[p].clone()).collect();
                moved.sort();
                moved
            })
            .collect();
        prop_assert_eq!(base, permuted);
    }
}
