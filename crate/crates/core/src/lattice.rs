//! Integer lattices with exact symmetric Gram matrices: invariants, vector
//! enumeration, sublattice spans, orthogonal complements, index computations.

use crate::linalg::{
    det_bareiss, inertia, int_kernel, int_mat_mul, int_transpose, row_span_basis, to_rat_mat,
    IntMat,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix must be square and nonempty")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0},{1})")]
    NonSymmetric(usize, usize),
    #[error(
        "coordinate box required: the lattice is not definite, so the solution set may be infinite"
    )]
    BoxRequired,
    #[error("empty input: at least one vector required")]
    EmptyInput,
    #[error("vector has {found} coordinates but the lattice has rank {rank}")]
    DimensionMismatch { rank: usize, found: usize },
}

/// A lattice vector in the coordinates of the ambient basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vector(pub Vec<BigInt>);

impl Vector {
    pub fn from_i64(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn negated(&self) -> Self {
        Vector(self.0.iter().map(|x| -x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Signature of a symmetric form: positive and negative inertia counts plus
/// the rank deficit of the radical.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub rank_deficit: usize,
}

impl Signature {
    pub fn is_degenerate(&self) -> bool {
        self.rank_deficit > 0
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.positive, self.negative)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IndexInAmbient {
    Finite(BigInt),
    Degenerate,
}

impl std::fmt::Display for IndexInAmbient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexInAmbient::Finite(n) => write!(f, "{}", n),
            IndexInAmbient::Degenerate => write!(f, "degenerate"),
        }
    }
}

/// Span, orthogonal complement and index data for a tuple of vectors.
#[derive(Clone, Debug)]
pub struct SublatticeReport {
    pub span_basis: Vec<Vector>,
    pub span_gram: IntMat,
    pub span_rank: usize,
    pub span_signature: Signature,
    pub complement_basis: Vec<Vector>,
    pub complement_gram: IntMat,
    pub complement_signature: Signature,
    /// Index of span ⊕ complement in the ambient lattice, when the span is
    /// nondegenerate and the ambient form is nonsingular.
    pub index_in_ambient: IndexInAmbient,
}

/// A finite-rank free ℤ-module with an exact symmetric bilinear form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    gram: IntMat,
}

impl Lattice {
    pub fn new(gram: IntMat) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NonSymmetric(i, j));
                }
            }
        }
        Ok(Lattice { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let gram = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Lattice::new(gram).expect("invalid builtin gram")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(&self.gram)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == BigInt::one()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[i][i] % BigInt::from(2)).is_zero())
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// Sylvester signature by exact congruence diagonalization over ℚ.
    pub fn signature(&self) -> Signature {
        let c = inertia(&to_rat_mat(&self.gram));
        Signature {
            positive: c.positive,
            negative: c.negative,
            rank_deficit: c.zero,
        }
    }

    pub fn pair(&self, a: &Vector, b: &Vector) -> BigInt {
        assert_eq!(a.dim(), self.rank());
        assert_eq!(b.dim(), self.rank());
        let mut acc = BigInt::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                acc += ai * &self.gram[i][j] * bj;
            }
        }
        acc
    }

    pub fn norm(&self, v: &Vector) -> BigInt {
        self.pair(v, v)
    }

    pub fn check_vector(&self, v: &Vector) -> Result<(), LatticeError> {
        if v.dim() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                rank: self.rank(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Block-diagonal sum: ranks add, determinants multiply, even iff both even.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let n = self.rank();
        let m = other.rank();
        let mut gram = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        Lattice { gram }
    }

    fn definiteness(&self) -> Option<i32> {
        let sig = self.signature();
        if sig.positive == self.rank() {
            Some(1)
        } else if sig.negative == self.rank() {
            Some(-1)
        } else {
            None
        }
    }

    /// All vectors of the given norm. For definite lattices the search is
    /// complete without a box (Fincke–Pohst style recursion on an exact LDL
    /// split); an optional box further clamps each coordinate. Indefinite or
    /// degenerate lattices require a box and are scanned exhaustively, which
    /// costs (2·box+1)^rank. Output is sorted lexicographically.
    pub fn enumerate_vectors(
        &self,
        norm: i64,
        coord_bound: Option<u64>,
    ) -> Result<Vec<Vector>, LatticeError> {
        let mut out = match self.definiteness() {
            Some(1) => self.enumerate_definite(BigInt::from(norm), coord_bound),
            Some(-1) => {
                let flipped = Lattice {
                    gram: self
                        .gram
                        .iter()
                        .map(|r| r.iter().map(|x| -x).collect())
                        .collect(),
                };
                flipped.enumerate_definite(BigInt::from(-norm), coord_bound)
            }
            _ => {
                let b = coord_bound.ok_or(LatticeError::BoxRequired)? as i64;
                let ranges: Vec<(i64, i64)> = vec![(-b, b); self.rank()];
                self.enumerate_in_ranges(&BigInt::from(norm), &ranges)
            }
        };
        out.sort();
        Ok(out)
    }

    /// Exhaustive scan over an explicit per-coordinate range box. This is the
    /// partitionable form: splitting any coordinate range and merging the
    /// sorted results reproduces the full answer.
    pub fn enumerate_in_ranges(&self, norm: &BigInt, ranges: &[(i64, i64)]) -> Vec<Vector> {
        assert_eq!(ranges.len(), self.rank());
        let mut out = Vec::new();
        let mut coords: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        if ranges.iter().any(|r| r.0 > r.1) {
            return out;
        }
        loop {
            let v = Vector(coords.iter().map(|&x| BigInt::from(x)).collect());
            if &self.norm(&v) == norm {
                out.push(v);
            }
            // odometer increment, most significant coordinate first
            let mut i = ranges.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if coords[i] < ranges[i].1 {
                    coords[i] += 1;
                    for j in i + 1..ranges.len() {
                        coords[j] = ranges[j].0;
                    }
                    break;
                }
            }
        }
    }

    fn enumerate_definite(&self, target: BigInt, coord_bound: Option<u64>) -> Vec<Vector> {
        if target.is_negative() {
            return Vec::new();
        }
        let n = self.rank();
        // LDL split: q(v) = sum_i d_i (v_i + sum_{j>i} mu_ij v_j)^2
        let mut a = to_rat_mat(&self.gram);
        let mut d = vec![BigRational::zero(); n];
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            d[i] = a[i][i].clone();
            assert!(d[i].is_positive(), "form not positive definite");
            for j in i + 1..n {
                mu[i][j] = &a[i][j] / &d[i];
            }
            for r in i + 1..n {
                for c in i + 1..n {
                    let t = &a[r][i] * &a[i][c] / &d[i];
                    a[r][c] -= t;
                }
            }
        }
        let mut coords = vec![BigInt::zero(); n];
        let mut out = Vec::new();
        let quota = BigRational::from_integer(target);
        self.definite_rec(
            n,
            &quota,
            &d,
            &mu,
            coord_bound.map(|b| BigInt::from(b)),
            &mut coords,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn definite_rec(
        &self,
        level: usize,
        quota: &BigRational,
        d: &[BigRational],
        mu: &[Vec<BigRational>],
        coord_bound: Option<BigInt>,
        coords: &mut Vec<BigInt>,
        out: &mut Vec<Vector>,
    ) {
        if level == 0 {
            if quota.is_zero() {
                out.push(Vector(coords.clone()));
            }
            return;
        }
        let i = level - 1;
        let mut center = BigRational::zero();
        for j in i + 1..coords.len() {
            if !coords[j].is_zero() {
                center += &mu[i][j] * BigRational::from_integer(coords[j].clone());
            }
        }
        let radius_sq = quota / &d[i];
        // v_i ranges over integers with (v_i + center)^2 <= radius_sq
        let neg_center = -&center;
        let mut hi = floor_plus_sqrt(&neg_center, &radius_sq);
        let mut lo = -floor_plus_sqrt(&center, &radius_sq);
        if let Some(b) = &coord_bound {
            if &hi > b {
                hi = b.clone();
            }
            let nb = -b.clone();
            if lo < nb {
                lo = nb;
            }
        }
        let mut v = lo;
        while v <= hi {
            let shifted = BigRational::from_integer(v.clone()) + &center;
            let used = &d[i] * &shifted * &shifted;
            let rest = quota - &used;
            debug_assert!(!rest.is_negative());
            coords[i] = v.clone();
            self.definite_rec(i, &rest, d, mu, coord_bound.clone(), coords, out);
            coords[i] = BigInt::zero();
            v += 1;
        }
    }

    /// Span, saturated orthogonal complement, and index data for a nonempty
    /// vector tuple. Degenerate spans are reported, not rejected.
    pub fn sublattice_report(&self, vecs: &[Vector]) -> Result<SublatticeReport, LatticeError> {
        if vecs.is_empty() {
            return Err(LatticeError::EmptyInput);
        }
        for v in vecs {
            self.check_vector(v)?;
        }
        let rows: IntMat = vecs.iter().map(|v| v.0.clone()).collect();
        let span_rows = row_span_basis(&rows);
        let span_rank = span_rows.len();
        let span_gram = int_mat_mul(
            &int_mat_mul(&span_rows, &self.gram),
            &int_transpose(&span_rows),
        );
        let span_sig = inertia(&to_rat_mat(&span_gram));
        let span_signature = Signature {
            positive: span_sig.positive,
            negative: span_sig.negative,
            rank_deficit: span_sig.zero,
        };

        // complement = integer kernel of the pairing map x -> (⟨x, v⟩)_v
        let pairing = int_mat_mul(&rows, &self.gram);
        let comp_rows = int_kernel(&pairing);
        let complement_gram = int_mat_mul(
            &int_mat_mul(&comp_rows, &self.gram),
            &int_transpose(&comp_rows),
        );
        let comp_sig = inertia(&to_rat_mat(&complement_gram));
        let complement_signature = Signature {
            positive: comp_sig.positive,
            negative: comp_sig.negative,
            rank_deficit: comp_sig.zero,
        };

        let ambient_det = self.det();
        let index_in_ambient = if span_signature.is_degenerate() || ambient_det.is_zero() {
            IndexInAmbient::Degenerate
        } else {
            // index^2 * |det ambient| = |det span| * |det complement|
            let num = det_bareiss(&span_gram).abs() * det_bareiss(&complement_gram).abs();
            let den = ambient_det.abs();
            let sq = &num / &den;
            debug_assert!((&sq * &den) == num, "index identity must divide exactly");
            let idx = sq.sqrt();
            debug_assert!(&idx * &idx == sq, "index identity must be a perfect square");
            IndexInAmbient::Finite(idx)
        };

        Ok(SublatticeReport {
            span_basis: span_rows.into_iter().map(Vector).collect(),
            span_gram,
            span_rank,
            span_signature,
            complement_basis: comp_rows.into_iter().map(Vector).collect(),
            complement_gram,
            complement_signature,
            index_in_ambient,
        })
    }
}

/// Largest integer m with m ≤ c + sqrt(r), for rational c and r ≥ 0.
fn floor_plus_sqrt(c: &BigRational, r: &BigRational) -> BigInt {
    debug_assert!(!r.is_negative());
    let holds = |m: &BigInt| -> bool {
        let diff = BigRational::from_integer(m.clone()) - c;
        !diff.is_positive() || &diff * &diff <= *r
    };
    let guess = c.to_f64().unwrap_or(0.0) + r.to_f64().unwrap_or(0.0).sqrt();
    let mut m = BigInt::from(guess.floor() as i64);
    while holds(&(&m + 1)) {
        m += 1;
    }
    while !holds(&m) {
        m -= 1;
    }
    m
}

/// The hyperbolic plane H: Gram [[0,1],[1,0]].
pub fn hyperbolic_plane() -> Lattice {
    Lattice::from_i64(&[&[0, 1], &[1, 0]])
}

/// The E8 form as the Cartan matrix of the E8 root system.
pub fn e8() -> Lattice {
    Lattice::from_i64(&[
        &[2, 0, -1, 0, 0, 0, 0, 0],
        &[0, 2, 0, -1, 0, 0, 0, 0],
        &[-1, 0, 2, -1, 0, 0, 0, 0],
        &[0, -1, -1, 2, -1, 0, 0, 0],
        &[0, 0, 0, -1, 2, -1, 0, 0],
        &[0, 0, 0, 0, -1, 2, -1, 0],
        &[0, 0, 0, 0, 0, -1, 2, -1],
        &[0, 0, 0, 0, 0, 0, -1, 2],
    ])
}

pub fn minus_e8() -> Lattice {
    let g = e8();
    let gram = g
        .gram()
        .iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect();
    Lattice::new(gram).unwrap()
}

/// Rank-1 form (s) for s = ±1.
pub fn rank_one(sign: i64) -> Lattice {
    Lattice::from_i64(&[&[sign]])
}

/// The K3 intersection form H ⊕ H ⊕ H ⊕ (−E8) ⊕ (−E8), signature (3,19).
pub fn k3() -> Lattice {
    let h = hyperbolic_plane();
    let me8 = minus_e8();
    h.direct_sum(&h)
        .direct_sum(&h)
        .direct_sum(&me8)
        .direct_sum(&me8)
}

pub fn by_name(name: &str) -> Option<Lattice> {
    match name {
        "H" => Some(hyperbolic_plane()),
        "E8" => Some(e8()),
        "-E8" => Some(minus_e8()),
        "K3" => Some(k3()),
        "(1)" => Some(rank_one(1)),
        "(-1)" => Some(rank_one(-1)),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 6] = ["H", "E8", "-E8", "K3", "(1)", "(-1)"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_accepts_symmetric_rejects_other() {
        assert!(Lattice::from_i64(&[&[0, 1], &[1, 1]]).rank() == 2);
        let bad = Lattice::new(vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(2), BigInt::from(1)],
        ]);
        assert_eq!(bad.unwrap_err(), LatticeError::NonSymmetric(0, 1));
    }

    #[test]
    fn hyperbolic_plane_invariants() {
        let h = hyperbolic_plane();
        assert!(h.is_even());
        assert!(h.is_unimodular());
        assert_eq!(h.signature().pair(), (1, 1));
    }

    #[test]
    fn rank_one_is_odd_unimodular() {
        let l = rank_one(1);
        assert!(!l.is_even());
        assert!(l.is_unimodular());
        assert_eq!(l.signature().pair(), (1, 0));
    }

    #[test]
    fn direct_sums_match_stated_blocks() {
        let h = hyperbolic_plane();
        let hh = h.direct_sum(&h);
        assert_eq!(hh.rank(), 4);
        assert_eq!(hh.signature().pair(), (2, 2));

        let k = k3();
        assert_eq!(k.rank(), 22);
        assert!(k.is_even());
        assert!(k.is_unimodular());
        assert_eq!(k.signature().pair(), (3, 19));

        let odd = rank_one(1).direct_sum(&rank_one(-1));
        assert!(!odd.is_even());
        assert!(odd.is_unimodular());
        assert_eq!(odd.signature().pair(), (1, 1));
    }

    #[test]
    fn signature_of_minus_e8() {
        assert_eq!(minus_e8().signature().pair(), (0, 8));
        assert_eq!(e8().signature().pair(), (8, 0));
    }

    #[test]
    fn signature_reports_degeneracy() {
        let l = Lattice::from_i64(&[&[-2, -2], &[-2, -2]]);
        let s = l.signature();
        assert_eq!(s.pair(), (0, 1));
        assert_eq!(s.rank_deficit, 1);
    }

    #[test]
    fn enumerate_h_roots_in_box() {
        let h = hyperbolic_plane();
        let roots = h.enumerate_vectors(-2, Some(1)).unwrap();
        assert_eq!(
            roots,
            vec![Vector::from_i64(&[-1, 1]), Vector::from_i64(&[1, -1])]
        );
    }

    #[test]
    fn enumerate_requires_box_when_indefinite() {
        let h = hyperbolic_plane();
        assert_eq!(
            h.enumerate_vectors(-2, None).unwrap_err(),
            LatticeError::BoxRequired
        );
    }

    #[test]
    fn e8_has_240_roots() {
        let roots = e8().enumerate_vectors(2, None).unwrap();
        assert_eq!(roots.len(), 240);
        // closed under negation, no duplicates
        for r in &roots {
            assert!(roots.binary_search(&r.negated()).is_ok());
        }
        let mut dedup = roots.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), roots.len());
    }

    #[test]
    fn definite_enumeration_agrees_with_grid_scan() {
        let l = Lattice::from_i64(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        let fp = l.enumerate_vectors(4, Some(3)).unwrap();
        let ranges = vec![(-3, 3); 3];
        let mut grid = l.enumerate_in_ranges(&BigInt::from(4), &ranges);
        grid.sort();
        assert_eq!(fp, grid);
    }

    #[test]
    fn sublattice_report_for_h_root() {
        let h = hyperbolic_plane();
        let rep = h.sublattice_report(&[Vector::from_i64(&[1, -1])]).unwrap();
        assert_eq!(rep.span_rank, 1);
        assert_eq!(rep.span_gram, vec![vec![BigInt::from(-2)]]);
        assert_eq!(rep.span_signature.pair(), (0, 1));
        assert_eq!(rep.complement_basis, vec![Vector::from_i64(&[1, 1])]);
        assert_eq!(
            rep.index_in_ambient,
            IndexInAmbient::Finite(BigInt::from(2))
        );
    }

    #[test]
    fn sublattice_report_for_k3_root() {
        let k = k3();
        // first basis root of the first -E8 block sits at coordinate 6
        let mut coords = vec![0i64; 22];
        coords[6] = 1;
        let root = Vector::from_i64(&coords);
        assert_eq!(k.norm(&root), BigInt::from(-2));
        let rep = k.sublattice_report(&[root]).unwrap();
        assert_eq!(rep.span_signature.pair(), (0, 1));
        assert_eq!(rep.complement_signature.pair(), (3, 18));
        assert_eq!(
            rep.index_in_ambient,
            IndexInAmbient::Finite(BigInt::from(2))
        );
    }

    #[test]
    fn opposite_roots_collapse_to_one_span() {
        let k = k3();
        let mut coords = vec![0i64; 22];
        coords[6] = 1;
        let root = Vector::from_i64(&coords);
        let single = k.sublattice_report(&[root.clone()]).unwrap();
        let pair = k
            .sublattice_report(&[root.clone(), root.negated()])
            .unwrap();
        assert_eq!(pair.span_rank, 1);
        assert_eq!(pair.span_gram, single.span_gram);
        assert_eq!(pair.complement_basis, single.complement_basis);
        assert_eq!(pair.index_in_ambient, single.index_in_ambient);
    }

    #[test]
    fn index_identity_holds_exactly() {
        let h = hyperbolic_plane();
        let rep = h.sublattice_report(&[Vector::from_i64(&[1, -1])]).unwrap();
        let IndexInAmbient::Finite(idx) = rep.index_in_ambient else {
            panic!("expected finite index");
        };
        let lhs = &idx * &idx * h.det().abs();
        let rhs = det_bareiss(&rep.span_gram).abs() * det_bareiss(&rep.complement_gram).abs();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn named_builtins_resolve() {
        for name in BUILTIN_NAMES {
            assert!(by_name(name).is_some(), "missing builtin {name}");
        }
        assert!(by_name("F4").is_none());
    }

    #[test]
    fn box_split_merge_matches_whole_box() {
        let h = hyperbolic_plane();
        let norm = BigInt::from(-2);
        let whole = h.enumerate_in_ranges(&norm, &[(-2, 2), (-2, 2)]);
        let left = h.enumerate_in_ranges(&norm, &[(-2, 0), (-2, 2)]);
        let right = h.enumerate_in_ranges(&norm, &[(1, 2), (-2, 2)]);
        let mut merged = [left, right].concat();
        merged.sort();
        let mut whole_sorted = whole;
        whole_sorted.sort();
        assert_eq!(merged, whole_sorted);
    }
}
