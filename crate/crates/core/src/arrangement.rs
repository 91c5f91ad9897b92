//! Betti numbers for complements of finite arrangements of codimension-3
//! linear subspaces in odd-dimensional real space, in the all-transversal
//! case where degree-2n homology is free on the n-subsets of subspaces.

use crate::lattice::{k3, Lattice, Vector};
use crate::linalg::{rat_rank, rat_rref, RatMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("ambient dimension must be odd")]
    EvenAmbient,
    #[error("ambient dimension must be positive")]
    ZeroAmbient,
    #[error("subspace {0} must be given by exactly 3 normal vectors of the ambient dimension")]
    BadNormals(usize),
    #[error("subspace {0}: normal vectors do not have rank 3")]
    NormalsRankDeficient(usize),
    #[error("subspaces {0} and {1} coincide")]
    DuplicateSubspace(usize, usize),
    #[error("transversality fails on the subset {witness:?}")]
    TransversalityFailure { witness: Vec<usize> },
    #[error("degree {requested} is outside the validity window (max degree {max})")]
    WindowExceeded { requested: usize, max: usize },
    #[error("vector {0} is not a root: norm must be -2")]
    NotARoot(usize),
    #[error("roots {0} and {1} are proportional and give the same wall")]
    ProportionalRoots(usize, usize),
    #[error("roots {0} and {1} project to the same linear-model subspace")]
    CoincidentSubspaces(usize, usize),
    #[error("the root construction requires the K3 lattice")]
    AmbientNotK3,
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// A finite arrangement of codimension-3 linear subspaces of ℝ^N (N odd),
/// each encoded by 3 linearly independent rational normal vectors.
#[derive(Clone, Debug)]
pub struct Arrangement {
    ambient_dim: usize,
    subspaces: Vec<RatMat>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransversalityOutcome {
    pub ok: bool,
    /// First failing subset in (size, lexicographic) order, if any.
    pub witness: Option<Vec<usize>>,
}

/// Betti table of the complement: betti[2n] = C(m,n) within the validity
/// window, odd degrees zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiTable {
    pub betti: BTreeMap<usize, BigInt>,
    pub valid_upto: usize,
}

impl std::fmt::Display for BettiTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (degree, rank) in &self.betti {
            writeln!(f, "{}: {}", degree, rank)?;
        }
        Ok(())
    }
}

fn binomial(m: usize, n: usize) -> BigInt {
    if n > m {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..n {
        acc = acc * BigInt::from((m - i) as u64) / BigInt::from((i + 1) as u64);
    }
    acc
}

impl Arrangement {
    pub fn new(ambient_dim: usize, subspaces: Vec<RatMat>) -> Result<Self, ArrangementError> {
        if ambient_dim == 0 {
            return Err(ArrangementError::ZeroAmbient);
        }
        if ambient_dim % 2 == 0 {
            return Err(ArrangementError::EvenAmbient);
        }
        for (idx, normals) in subspaces.iter().enumerate() {
            if normals.len() != 3 || normals.iter().any(|v| v.len() != ambient_dim) {
                return Err(ArrangementError::BadNormals(idx));
            }
            if rat_rank(normals) != 3 {
                return Err(ArrangementError::NormalsRankDeficient(idx));
            }
        }
        // pairwise distinct as subspaces: compare canonical row spaces
        let canonical: Vec<RatMat> = subspaces.iter().map(|s| rat_rref(s)).collect();
        for i in 0..canonical.len() {
            for j in i + 1..canonical.len() {
                if canonical[i] == canonical[j] {
                    return Err(ArrangementError::DuplicateSubspace(i, j));
                }
            }
        }
        Ok(Arrangement {
            ambient_dim,
            subspaces,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[RatMat] {
        &self.subspaces
    }

    /// Checks, for every subset S with |S| ≤ max_subset, that the stacked
    /// normal vectors have rank exactly min(3|S|, N). Returns the first
    /// failing subset (in size-then-lexicographic order) as a witness.
    pub fn transversality_check(&self, max_subset: usize) -> TransversalityOutcome {
        let m = self.subspaces.len();
        for size in 1..=max_subset.min(m) {
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                let stacked: RatMat = subset
                    .iter()
                    .flat_map(|&i| self.subspaces[i].iter().cloned())
                    .collect();
                let expected = (3 * size).min(self.ambient_dim);
                if rat_rank(&stacked) != expected {
                    return TransversalityOutcome {
                        ok: false,
                        witness: Some(subset),
                    };
                }
                if !next_combination(&mut subset, m) {
                    break;
                }
            }
        }
        TransversalityOutcome {
            ok: true,
            witness: None,
        }
    }

    /// Largest tuple size the binomial formula is allowed to report for this
    /// ambient dimension: n ≤ min(⌊N/3⌋, ⌊N/4⌋ + 1).
    pub fn window_max_tuples(&self) -> usize {
        (self.ambient_dim / 3).min(self.ambient_dim / 4 + 1)
    }

    /// Betti numbers of the complement up to max_degree: betti[2n] = C(m,n),
    /// betti[odd] = 0. Requires transversality of every subset of the
    /// relevant size; degrees beyond the validity window are refused.
    pub fn betti_complement(&self, max_degree: usize) -> Result<BettiTable, ArrangementError> {
        if self.ambient_dim % 2 == 0 {
            return Err(ArrangementError::EvenAmbient);
        }
        let n_max = max_degree / 2;
        let window = self.window_max_tuples();
        if n_max > window {
            return Err(ArrangementError::WindowExceeded {
                requested: max_degree,
                max: 2 * window,
            });
        }
        let check_size = n_max.max(2).min(self.subspaces.len());
        let outcome = self.transversality_check(check_size);
        if let Some(witness) = outcome.witness {
            return Err(ArrangementError::TransversalityFailure { witness });
        }
        let m = self.subspaces.len();
        let mut betti = BTreeMap::new();
        for degree in 0..=max_degree {
            if degree % 2 == 0 {
                betti.insert(degree, binomial(m, degree / 2));
            } else {
                betti.insert(degree, BigInt::zero());
            }
        }
        Ok(BettiTable {
            betti,
            valid_upto: max_degree,
        })
    }
}

/// Linear model of the root walls: the tangent space of the period domain at
/// the standard positive 3-plane is Hom(τ₀, τ₀^⊥) ≅ ℝ^(3×19) = ℝ^57, and a
/// root δ cuts out the codimension-3 subspace of maps φ with
/// ⟨δ, φ(t_i)⟩ = 0 for the three basis directions t_i of τ₀. The normals are
/// the three row embeddings of the pairing vector of δ against a fixed basis
/// of τ₀^⊥. Roots whose pairing vectors are parallel would give coincident
/// walls and are rejected.
pub fn k3_arrangement_from_roots(
    lattice: &Lattice,
    roots: &[Vector],
) -> Result<Arrangement, ArrangementError> {
    if lattice != &k3() {
        return Err(ArrangementError::AmbientNotK3);
    }
    let minus_two = BigInt::from(-2);
    for (idx, r) in roots.iter().enumerate() {
        lattice.check_vector(r)?;
        if lattice.norm(r) != minus_two {
            return Err(ArrangementError::NotARoot(idx));
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if is_collinear(&roots[i].0, &roots[j].0) {
                return Err(ArrangementError::ProportionalRoots(i, j));
            }
        }
    }
    // basis of τ₀^⊥ for τ₀ spanned by e_b + f_b in the three H blocks:
    // the differences e_b − f_b and the 16 unit vectors of the E8 blocks
    let mut perp_basis: Vec<Vector> = Vec::with_capacity(19);
    for b in 0..3 {
        let mut coords = vec![0i64; 22];
        coords[2 * b] = 1;
        coords[2 * b + 1] = -1;
        perp_basis.push(Vector::from_i64(&coords));
    }
    for unit in 6..22 {
        let mut coords = vec![0i64; 22];
        coords[unit] = 1;
        perp_basis.push(Vector::from_i64(&coords));
    }
    let pairings: Vec<Vec<BigInt>> = roots
        .iter()
        .map(|r| perp_basis.iter().map(|b| lattice.pair(r, b)).collect())
        .collect();
    for i in 0..pairings.len() {
        for j in i + 1..pairings.len() {
            if is_collinear(&pairings[i], &pairings[j]) {
                return Err(ArrangementError::CoincidentSubspaces(i, j));
            }
        }
    }
    let subspaces: Vec<RatMat> = pairings
        .iter()
        .map(|w| {
            (0..3)
                .map(|row| {
                    let mut normal = vec![BigRational::zero(); 57];
                    for (col, val) in w.iter().enumerate() {
                        normal[19 * row + col] = BigRational::from_integer(val.clone());
                    }
                    normal
                })
                .collect()
        })
        .collect();
    Arrangement::new(57, subspaces)
}

/// Advances `subset` to the next k-combination of {0,…,m−1} in lexicographic
/// order; returns false when the last combination has been consumed.
fn next_combination(subset: &mut [usize], m: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < m - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn is_collinear(a: &[BigInt], b: &[BigInt]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}
