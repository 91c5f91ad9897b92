//! Decision procedures combining the flat-bundle vanishing threshold, the
//! arithmetic-group stable ranges, surface-bundle genus thresholds, root
//! stabilizer data, and the assembled section-obstruction report.

use crate::lattice::{Lattice, LatticeError, SublatticeReport, Vector};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("stable range needs rank p+q >= 2")]
    RankTooSmall,
    #[error("vector {0} is not a root: norm must be -2")]
    NotARoot(usize),
    #[error("root tuple contains a duplicate at position {0}")]
    DuplicateRoot(usize),
    #[error("the ambient form must be nondegenerate")]
    DegenerateForm,
    #[error("total degree {0} exceeds the checked region (max 9)")]
    RegionTooLarge(u32),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Cohomological ranges for an arithmetic subgroup of SO⁺(p,q): the
/// bijective range ⌊(p+q)/2⌋ − 2 and the sharper transfer to the compact
/// side, min(2q, ⌊(p+q)/2⌋ − 2).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StableRange {
    pub p: u32,
    pub q: u32,
    pub bijective_upto: i64,
    pub iso_upto_with_2q: i64,
}

pub fn borel_stable_range(p: u32, q: u32) -> Result<StableRange, ObstructionError> {
    if p + q < 2 {
        return Err(ObstructionError::RankTooSmall);
    }
    let bijective_upto = ((p + q) / 2) as i64 - 2;
    let iso_upto_with_2q = bijective_upto.min(2 * q as i64);
    Ok(StableRange {
        p,
        q,
        bijective_upto,
        iso_upto_with_2q,
    })
}

/// True iff the degree-4i class vanishes on the flat side in fiber
/// dimension 4k: i > k, equivalently 4(i+k) > 8k.
pub fn bott_obstruction(i: u32, k: u32) -> bool {
    assert!(i >= 1 && k >= 1);
    i > k
}

/// Smallest genus g with g/2 − 1 ≥ class_degree, i.e. 2·(class_degree + 1).
pub fn harer_genus_threshold(class_degree: u32) -> u32 {
    assert!(class_degree >= 1);
    2 * (class_degree + 1)
}

/// Stabilizer data for a tuple of distinct roots in a nondegenerate even
/// lattice of signature (p,q): span signature (n1,n2), the ambient group
/// SO⁺(p−n1, q−n2) of the orthogonal-complement automorphisms, its stable
/// range, the odd-degree vanishing bound, and the symmetric-group bound on
/// the finite quotient.
#[derive(Clone, Debug)]
pub struct StabilizerReport {
    pub tuple_size: usize,
    pub span_signature: (usize, usize),
    pub degenerate_span: bool,
    pub ambient_so: (u32, u32),
    pub stable_range: StableRange,
    pub odd_vanishing_upto: i64,
    pub finite_quotient_bound: BigInt,
    pub sublattice: SublatticeReport,
}

pub fn stabilizer_report(
    lattice: &Lattice,
    roots: &[Vector],
) -> Result<StabilizerReport, ObstructionError> {
    if !lattice.is_nondegenerate() {
        return Err(ObstructionError::DegenerateForm);
    }
    let minus_two = BigInt::from(-2);
    let mut seen = BTreeSet::new();
    for (idx, r) in roots.iter().enumerate() {
        lattice.check_vector(r)?;
        if lattice.norm(r) != minus_two {
            return Err(ObstructionError::NotARoot(idx));
        }
        if !seen.insert(r.clone()) {
            return Err(ObstructionError::DuplicateRoot(idx));
        }
    }
    let sub = lattice.sublattice_report(roots)?;
    let (n1, n2) = sub.span_signature.pair();
    let degenerate_span = sub.span_signature.is_degenerate();
    let sig = lattice.signature();
    let ambient_so = ((sig.positive - n1) as u32, (sig.negative - n2) as u32);
    let stable_range = borel_stable_range(ambient_so.0, ambient_so.1)?;
    let factorial = (1..=roots.len() as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    Ok(StabilizerReport {
        tuple_size: roots.len(),
        span_signature: (n1, n2),
        degenerate_span,
        ambient_so,
        stable_range,
        odd_vanishing_upto: stable_range.bijective_upto,
        finite_quotient_bound: factorial,
        sublattice: sub,
    })
}

/// One row of the even-bidegree bookkeeping: for tuple size n and a
/// partition (n1, n2), the largest odd fiber-complement degree inside the
/// region versus the vanishing bound ⌊(22−n)/2⌋ − 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct E2Row {
    pub tuple_size: u32,
    pub partition: (u32, u32),
    /// Largest odd p with p + 2·tuple_size ≤ the region degree; None when
    /// no odd degree fits.
    pub max_odd_degree: Option<u32>,
    pub vanishing_upto: i64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct E2Report {
    pub max_total_degree: u32,
    pub rows: Vec<E2Row>,
    pub all_ok: bool,
}

/// Confirms that in total degree ≤ max_total_degree every odd cohomological
/// degree appearing against a rank-2n row lies inside the vanishing range
/// of the corresponding stabilizer group, for each tuple size and each
/// signature partition with n1 ≤ 3 and n2 ≤ 19.
pub fn e2_region_check(
    max_total_degree: u32,
    tuple_sizes: std::ops::RangeInclusive<u32>,
) -> Result<E2Report, ObstructionError> {
    if max_total_degree > 9 {
        return Err(ObstructionError::RegionTooLarge(max_total_degree));
    }
    let mut rows = Vec::new();
    for n in tuple_sizes {
        let vanishing_upto = ((22 - n as i64) / 2) - 2;
        let budget = max_total_degree as i64 - 2 * n as i64;
        let max_odd_degree = if budget >= 1 {
            Some(if budget % 2 == 1 { budget } else { budget - 1 } as u32)
        } else {
            None
        };
        let ok = match max_odd_degree {
            Some(p) => (p as i64) <= vanishing_upto,
            None => true,
        };
        for n1 in 0..=n.min(3) {
            let n2 = n - n1;
            if n2 > 19 {
                continue;
            }
            rows.push(E2Row {
                tuple_size: n,
                partition: (n1, n2),
                max_odd_degree,
                vanishing_upto,
                ok,
            });
        }
    }
    let all_ok = rows.iter().all(|r| r.ok);
    Ok(E2Report {
        max_total_degree,
        rows,
        all_ok,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ObstructionCandidate {
    pub class_index: u32,
    pub degree: u32,
    pub in_stable_range: bool,
    pub bott_obstruction: bool,
}

/// Why a "section obstructed" verdict was reached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certification {
    /// The form contains the K3 intersection form as a summand, where the
    /// degree-8 class is nonzero through the Einstein-moduli detection chain.
    K3Summand,
    /// A surface factor of the stated genus meets the stability threshold
    /// for the first flat-vanishing class.
    SurfaceGenus { genus: u32, threshold: u32 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Obstructed(Vec<Certification>),
    CandidatesOnly,
}

impl Verdict {
    pub fn text(&self) -> &'static str {
        match self {
            Verdict::Obstructed(_) => "section obstructed",
            Verdict::CandidatesOnly => "candidates only - nontriviality not certified",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub fiber_dim_quarter: u32,
    pub signature: (usize, usize),
    pub stable_range: StableRange,
    pub candidates: Vec<ObstructionCandidate>,
    pub verdict: Verdict,
}

/// Assembles the section-obstruction report for a 4k-dimensional mapping
/// class: lists the classes of degree 4i inside the stable isomorphism
/// range min(2q, ⌊(p+q)/2⌋−2) together with their flat-vanishing flag
/// (i > k), and certifies nonvanishing only when the K3-summand flag is set
/// (k = 1) or a surface factor meets the genus threshold of the first
/// flat-vanishing degree 4(k+1).
pub fn obstruction_report(
    lattice: &Lattice,
    k: u32,
    k3_summand: bool,
    surface_genera: Option<&[u32]>,
) -> Result<ObstructionReport, ObstructionError> {
    assert!(k >= 1);
    let sig = lattice.signature();
    if sig.is_degenerate() {
        return Err(ObstructionError::DegenerateForm);
    }
    let stable_range = borel_stable_range(sig.positive as u32, sig.negative as u32)?;
    let reach = stable_range.iso_upto_with_2q;
    let mut candidates = Vec::new();
    let mut i = 1u32;
    while 4 * i as i64 <= reach {
        candidates.push(ObstructionCandidate {
            class_index: i,
            degree: 4 * i,
            in_stable_range: true,
            bott_obstruction: bott_obstruction(i, k),
        });
        i += 1;
    }
    let first_flat_class = k + 1;
    let witness_in_range = candidates
        .iter()
        .any(|c| c.class_index == first_flat_class && c.bott_obstruction);
    let mut certifications = Vec::new();
    if witness_in_range {
        if k3_summand && k == 1 {
            certifications.push(Certification::K3Summand);
        }
        if let Some(genera) = surface_genera {
            let threshold = harer_genus_threshold(4 * first_flat_class);
            if let Some(&g) = genera.iter().filter(|&&g| g >= threshold).max() {
                certifications.push(Certification::SurfaceGenus {
                    genus: g,
                    threshold,
                });
            }
        }
    }
    let verdict = if certifications.is_empty() {
        Verdict::CandidatesOnly
    } else {
        Verdict::Obstructed(certifications)
    };
    Ok(ObstructionReport {
        fiber_dim_quarter: k,
        signature: sig.pair(),
        stable_range,
        candidates,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{hyperbolic_plane, k3, rank_one};

    #[test]
    fn stable_ranges_match_hand_values() {
        let r = borel_stable_range(3, 19).unwrap();
        assert_eq!(r.bijective_upto, 9);
        assert_eq!(r.iso_upto_with_2q, 9);

        let r = borel_stable_range(3, 18).unwrap();
        assert_eq!(r.bijective_upto, 8);

        let r = borel_stable_range(2, 2).unwrap();
        assert_eq!(r.bijective_upto, 0);

        assert_eq!(
            borel_stable_range(1, 0).unwrap_err(),
            ObstructionError::RankTooSmall
        );
    }

    #[test]
    fn bott_boundary() {
        assert!(bott_obstruction(2, 1));
        assert!(!bott_obstruction(1, 1));
        assert!(bott_obstruction(3, 2));
    }

    #[test]
    fn genus_thresholds() {
        assert_eq!(harer_genus_threshold(8), 18);
        assert_eq!(harer_genus_threshold(4), 10);
        assert_eq!(harer_genus_threshold(1), 4);
    }

    fn e8_root(block: usize, idx: usize) -> Vector {
        let mut coords = vec![0i64; 22];
        coords[6 + 8 * block + idx] = 1;
        Vector::from_i64(&coords)
    }

    #[test]
    fn single_root_stabilizer() {
        let rep = stabilizer_report(&k3(), &[e8_root(0, 0)]).unwrap();
        assert_eq!(rep.span_signature, (0, 1));
        assert_eq!(rep.ambient_so, (3, 18));
        assert_eq!(rep.odd_vanishing_upto, 8);
        assert_eq!(rep.finite_quotient_bound, BigInt::one());
        assert!(!rep.degenerate_span);
    }

    #[test]
    fn two_orthogonal_roots_stabilizer() {
        // basis roots 1 and 2 of the first E8 block pair to zero
        let rep = stabilizer_report(&k3(), &[e8_root(0, 0), e8_root(0, 1)]).unwrap();
        assert_eq!(rep.span_signature, (0, 2));
        assert_eq!(rep.ambient_so, (3, 17));
        assert_eq!(rep.finite_quotient_bound, BigInt::from(2));
    }

    #[test]
    fn indefinite_span_keeps_signature_bounds() {
        // roots pairing to 3 span an indefinite rank-2 sublattice
        let k = k3();
        let mut a = vec![0i64; 22];
        a[0] = 1;
        a[1] = -1;
        let mut b = vec![0i64; 22];
        b[1] = 3;
        b[6] = 1; // (0,3) in the first H block plus an E8 root
        let d1 = Vector::from_i64(&a);
        let d2 = Vector::from_i64(&b);
        assert_eq!(k.pair(&d1, &d2), BigInt::from(3));
        let rep = stabilizer_report(&k, &[d1, d2]).unwrap();
        assert_eq!(rep.span_signature, (1, 1));
        assert!(!rep.degenerate_span);
        assert_eq!(rep.ambient_so, (2, 18));
        assert!(rep.span_signature.0 <= 3 && rep.span_signature.1 <= 19);
    }

    #[test]
    fn degenerate_span_is_flagged_not_fatal() {
        // pairing 2 between two roots makes the span gram singular
        let k = k3();
        let mut a = vec![0i64; 22];
        a[0] = 1;
        a[1] = -1;
        let mut b = vec![0i64; 22];
        b[1] = 2;
        b[6] = 1;
        let d1 = Vector::from_i64(&a);
        let d2 = Vector::from_i64(&b);
        assert_eq!(k.pair(&d1, &d2), BigInt::from(2));
        let rep = stabilizer_report(&k, &[d1, d2]).unwrap();
        assert!(rep.degenerate_span);
        assert_eq!(rep.span_signature, (0, 1));
        assert!(matches!(
            rep.sublattice.index_in_ambient,
            crate::lattice::IndexInAmbient::Degenerate
        ));
    }

    #[test]
    fn non_root_and_duplicate_are_rejected() {
        let k = k3();
        let mut coords = vec![0i64; 22];
        coords[0] = 1;
        coords[1] = -2; // norm -4
        let bad = Vector::from_i64(&coords);
        assert_eq!(
            stabilizer_report(&k, &[bad]).unwrap_err(),
            ObstructionError::NotARoot(0)
        );
        let r = e8_root(0, 0);
        assert_eq!(
            stabilizer_report(&k, &[r.clone(), r]).unwrap_err(),
            ObstructionError::DuplicateRoot(1)
        );
    }

    #[test]
    fn e2_region_is_clear_through_degree_nine() {
        let rep = e2_region_check(9, 1..=4).unwrap();
        assert!(rep.all_ok);
        let n1_rows: Vec<_> = rep.rows.iter().filter(|r| r.tuple_size == 1).collect();
        assert_eq!(n1_rows.len(), 2); // partitions (0,1), (1,0)
        assert_eq!(n1_rows[0].max_odd_degree, Some(7));
        assert_eq!(n1_rows[0].vanishing_upto, 8);
        let n4_rows: Vec<_> = rep.rows.iter().filter(|r| r.tuple_size == 4).collect();
        assert_eq!(n4_rows[0].max_odd_degree, Some(1));
        assert_eq!(n4_rows[0].vanishing_upto, 7);
    }

    #[test]
    fn e2_region_guard() {
        assert_eq!(
            e2_region_check(11, 1..=2).unwrap_err(),
            ObstructionError::RegionTooLarge(11)
        );
    }

    #[test]
    fn k3_report_is_obstructed_with_candidate_two() {
        let rep = obstruction_report(&k3(), 1, true, None).unwrap();
        assert_eq!(rep.signature, (3, 19));
        assert_eq!(rep.stable_range.iso_upto_with_2q, 9);
        let indices: Vec<u32> = rep.candidates.iter().map(|c| c.class_index).collect();
        assert_eq!(indices, vec![1, 2]);
        assert!(rep.candidates[1].bott_obstruction);
        assert!(!rep.candidates[0].bott_obstruction);
        assert_eq!(
            rep.verdict,
            Verdict::Obstructed(vec![Certification::K3Summand])
        );
        assert_eq!(rep.verdict.text(), "section obstructed");
    }

    #[test]
    fn surface_product_report_meets_threshold() {
        // intersection form of a genus-18 x genus-2 product: 73 hyperbolic planes
        let h = hyperbolic_plane();
        let mut form = h.clone();
        for _ in 1..73 {
            form = form.direct_sum(&h);
        }
        let rep = obstruction_report(&form, 1, false, Some(&[18, 2])).unwrap();
        assert_eq!(
            rep.verdict,
            Verdict::Obstructed(vec![Certification::SurfaceGenus {
                genus: 18,
                threshold: 18
            }])
        );
    }

    #[test]
    fn small_form_yields_no_candidates() {
        let l = rank_one(1).direct_sum(&rank_one(-1));
        let rep = obstruction_report(&l, 1, false, None).unwrap();
        assert!(rep.candidates.is_empty());
        assert_eq!(rep.verdict, Verdict::CandidatesOnly);
        assert_eq!(
            rep.verdict.text(),
            "candidates only - nontriviality not certified"
        );
    }

    #[test]
    fn genus_below_threshold_is_not_certified() {
        let h = hyperbolic_plane();
        let mut form = h.clone();
        for _ in 1..20 {
            form = form.direct_sum(&h);
        }
        let rep = obstruction_report(&form, 1, false, Some(&[17, 2])).unwrap();
        assert_eq!(rep.verdict, Verdict::CandidatesOnly);
    }

    #[test]
    fn candidate_two_appears_exactly_when_range_reaches_eight() {
        for p in 1..10u32 {
            for q in 1..12u32 {
                if p + q < 2 {
                    continue;
                }
                let mut gram = vec![vec![BigInt::from(0); (p + q) as usize]; (p + q) as usize];
                for i in 0..p as usize {
                    gram[i][i] = BigInt::from(1);
                }
                for i in p as usize..(p + q) as usize {
                    gram[i][i] = BigInt::from(-1);
                }
                let l = Lattice::new(gram).unwrap();
                let rep = obstruction_report(&l, 1, false, None).unwrap();
                let reach = borel_stable_range(p, q).unwrap().iso_upto_with_2q;
                let has_two = rep.candidates.iter().any(|c| c.class_index == 2);
                assert_eq!(has_two, reach >= 8, "signature ({p},{q})");
            }
        }
    }
}
