//! Isometries of a lattice: reflections, determinant, spinor norm via a
//! constructive Cartan–Dieudonné factorization over ℚ, and classification
//! into the chain Aut(Q) ⊃ Aut′ ⊃ Aut″.
//!
//! Convention: the spinor norm of a reflection through v is the sign of
//! ⟨v,v⟩. On the hyperbolic plane this gives the reflection through (1,1)
//! spinor norm +1 and the reflection through (1,−1) spinor norm −1.

use crate::lattice::{Lattice, Vector};
use crate::linalg::{
    det_bareiss, int_mat_mul, int_transpose, inverse_unimodular, rat_identity, rat_kernel,
    rat_mat_mul, to_rat_mat, IntMat, RatMat,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IsometryError {
    #[error("cannot reflect through an isotropic vector (norm 0)")]
    IsotropicVector,
    #[error("reflection is not integral on this lattice")]
    NotIntegral,
    #[error("spinor norm requires a nondegenerate form")]
    DegenerateForm,
    #[error("isometries live on different lattices")]
    LatticeMismatch,
    #[error("matrix does not preserve the gram form")]
    GramNotPreserved,
    #[error("matrix determinant is not ±1")]
    NotUnimodular,
    #[error("matrix shape does not match the lattice rank")]
    ShapeMismatch,
}

/// Which of the four (det, spin) components of Aut(Q) an isometry lies in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupTag {
    /// det = +1 and spin = +1.
    AutDoublePrime,
    /// det·spin = +1 but not both +1 (so det = spin = −1).
    AutPrimeNotDoublePrime,
    /// det = −1, spin = +1: outside Aut′, the reflection-type coset.
    OutsideAutPrimeDetMinus,
    /// det = +1, spin = −1: outside Aut′, the rotation-type coset.
    OutsideAutPrimeDetPlus,
}

impl std::fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SubgroupTag::AutDoublePrime => "Aut''",
            SubgroupTag::AutPrimeNotDoublePrime => "Aut'\\Aut''",
            SubgroupTag::OutsideAutPrimeDetMinus => "Aut\\Aut' (det=-1,spin=+1)",
            SubgroupTag::OutsideAutPrimeDetPlus => "Aut\\Aut' (det=+1,spin=-1)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IsometryClass {
    pub determinant: i8,
    pub spinor_norm: i8,
    pub subgroup_tag: SubgroupTag,
}

impl IsometryClass {
    fn from_signs(determinant: i8, spinor_norm: i8) -> Self {
        let subgroup_tag = match (determinant, spinor_norm) {
            (1, 1) => SubgroupTag::AutDoublePrime,
            (-1, -1) => SubgroupTag::AutPrimeNotDoublePrime,
            (-1, 1) => SubgroupTag::OutsideAutPrimeDetMinus,
            (1, -1) => SubgroupTag::OutsideAutPrimeDetPlus,
            _ => unreachable!("signs are ±1"),
        };
        IsometryClass {
            determinant,
            spinor_norm,
            subgroup_tag,
        }
    }

    pub fn in_aut_prime(&self) -> bool {
        self.determinant * self.spinor_norm == 1
    }

    pub fn in_aut_double_prime(&self) -> bool {
        self.determinant == 1 && self.spinor_norm == 1
    }
}

/// An integer matrix acting on lattice coordinates and preserving the gram
/// form: matrixᵀ · gram · matrix = gram, det = ±1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Isometry {
    lattice: Lattice,
    matrix: IntMat,
}

impl Isometry {
    pub fn new(lattice: Lattice, matrix: IntMat) -> Result<Self, IsometryError> {
        let n = lattice.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(IsometryError::ShapeMismatch);
        }
        let mt = int_transpose(&matrix);
        let preserved = int_mat_mul(&int_mat_mul(&mt, lattice.gram()), &matrix);
        if &preserved != lattice.gram() {
            return Err(IsometryError::GramNotPreserved);
        }
        if det_bareiss(&matrix).abs() != BigInt::one() {
            return Err(IsometryError::NotUnimodular);
        }
        Ok(Isometry { lattice, matrix })
    }

    pub fn identity(lattice: Lattice) -> Self {
        let matrix = crate::linalg::int_identity(lattice.rank());
        Isometry { lattice, matrix }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == crate::linalg::int_identity(self.lattice.rank())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let n = self.lattice.rank();
        assert_eq!(v.dim(), n);
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            for j in 0..n {
                if !v.0[j].is_zero() {
                    out[i] += &self.matrix[i][j] * &v.0[j];
                }
            }
        }
        Vector(out)
    }

    pub fn determinant(&self) -> i8 {
        if det_bareiss(&self.matrix) == BigInt::one() {
            1
        } else {
            -1
        }
    }

    pub fn compose(&self, other: &Isometry) -> Result<Isometry, IsometryError> {
        if self.lattice != other.lattice {
            return Err(IsometryError::LatticeMismatch);
        }
        Ok(Isometry {
            lattice: self.lattice.clone(),
            matrix: int_mat_mul(&self.matrix, &other.matrix),
        })
    }

    pub fn inverse(&self) -> Isometry {
        let inv = inverse_unimodular(&self.matrix).expect("isometry determinant is ±1");
        Isometry {
            lattice: self.lattice.clone(),
            matrix: inv,
        }
    }

    /// Real spinor norm: factor over ℚ into reflections and multiply the
    /// signs of the reflection vectors' norms.
    pub fn spinor_norm(&self) -> Result<i8, IsometryError> {
        if !self.lattice.is_nondegenerate() {
            return Err(IsometryError::DegenerateForm);
        }
        let factors = self.reflection_factors();
        let gram = to_rat_mat(self.lattice.gram());
        let mut spin = 1i8;
        for w in &factors {
            if rat_norm(&gram, w).is_negative() {
                spin = -spin;
            }
        }
        Ok(spin)
    }

    pub fn classify(&self) -> Result<IsometryClass, IsometryError> {
        let spin = self.spinor_norm()?;
        Ok(IsometryClass::from_signs(self.determinant(), spin))
    }

    /// Constructive Cartan–Dieudonné factorization over ℚ. Returns rational
    /// reflection vectors w₁,…,w_r with g = s_{w₁}·s_{w₂}⋯s_{w_r} and
    /// r ≤ 2·rank. The parity of r equals the determinant sign.
    pub fn reflection_factors(&self) -> Vec<Vec<BigRational>> {
        let n = self.lattice.rank();
        let gram = to_rat_mat(self.lattice.gram());
        let g = to_rat_mat(&self.matrix);
        let subspace = rat_identity(n);
        let factors = factor_recursive(&gram, &g, &subspace);
        debug_assert!(factors.len() <= 2 * n);
        debug_assert_eq!(
            self.determinant(),
            if factors.len() % 2 == 0 { 1 } else { -1 }
        );
        #[cfg(debug_assertions)]
        {
            let mut prod = rat_identity(n);
            for w in &factors {
                prod = rat_mat_mul(&prod, &reflection_matrix_rat(&gram, w));
            }
            debug_assert_eq!(prod, g, "factorization must reproduce the isometry");
        }
        factors
    }
}

fn rat_pair(gram: &RatMat, a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            acc += ai * &gram[i][j] * bj;
        }
    }
    acc
}

fn rat_norm(gram: &RatMat, v: &[BigRational]) -> BigRational {
    rat_pair(gram, v, v)
}

fn reflection_matrix_rat(gram: &RatMat, w: &[BigRational]) -> RatMat {
    let n = w.len();
    let q = rat_norm(gram, w);
    assert!(!q.is_zero());
    let mut m = rat_identity(n);
    // w · (wᵀ G), scaled by 2/q
    let mut wtg = vec![BigRational::zero(); n];
    for j in 0..n {
        for (i, wi) in w.iter().enumerate() {
            if !wi.is_zero() {
                wtg[j] += wi * &gram[i][j];
            }
        }
    }
    let scale = BigRational::from_integer(BigInt::from(2)) / q;
    for i in 0..n {
        if w[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let t = &scale * &w[i] * &wtg[j];
            m[i][j] -= t;
        }
    }
    m
}

fn apply_rat(m: &RatMat, v: &[BigRational]) -> Vec<BigRational> {
    let n = m.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..n {
            if !v[j].is_zero() {
                out[i] += &m[i][j] * &v[j];
            }
        }
    }
    out
}

fn vec_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vec_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Finds an anisotropic vector of the span moved by the isometry, given the
/// cached images of the basis. Returns the vector and its image.
///
/// If a moved basis vector is anisotropic we are done. Otherwise a moved
/// isotropic b_i pairs nontrivially with some b_j (the span form is
/// nondegenerate), and one of b_j, b_i + b_j, b_i − b_j is both anisotropic
/// and moved: were all of them fixed, b_i itself would be fixed.
fn find_moved_anisotropic(
    gram: &RatMat,
    basis: &[Vec<BigRational>],
    images: &[Vec<BigRational>],
    moved: &[usize],
) -> (Vec<BigRational>, Vec<BigRational>) {
    for &i in moved {
        if !rat_norm(gram, &basis[i]).is_zero() {
            return (basis[i].clone(), images[i].clone());
        }
    }
    let i = moved[0];
    let j = (0..basis.len())
        .find(|&j| j != i && !rat_pair(gram, &basis[i], &basis[j]).is_zero())
        .expect("span form is nondegenerate");
    let q_j = rat_norm(gram, &basis[j]);
    if q_j.is_zero() {
        // both b_i ± b_j are anisotropic; at least one is moved
        let pairs = [
            (
                vec_add(&basis[i], &basis[j]),
                vec_add(&images[i], &images[j]),
            ),
            (
                vec_sub(&basis[i], &basis[j]),
                vec_sub(&images[i], &images[j]),
            ),
        ];
        for (u, hu) in pairs {
            if hu != u {
                debug_assert!(!rat_norm(gram, &u).is_zero());
                return (u, hu);
            }
        }
        unreachable!("fixing both b_i ± b_j would fix the moved vector b_i");
    }
    if images[j] != basis[j] {
        return (basis[j].clone(), images[j].clone());
    }
    // b_j is fixed and anisotropic; b_i + εb_j is moved for either sign, and
    // the two norms q(b_i) ± 2⟨b_i,b_j⟩ + q(b_j) cannot both vanish
    let plus = vec_add(&basis[i], &basis[j]);
    if !rat_norm(gram, &plus).is_zero() {
        let hu = vec_add(&images[i], &images[j]);
        debug_assert!(hu != plus);
        return (plus, hu);
    }
    let minus = vec_sub(&basis[i], &basis[j]);
    debug_assert!(!rat_norm(gram, &minus).is_zero());
    let hu = vec_sub(&images[i], &images[j]);
    debug_assert!(hu != minus);
    (minus, hu)
}

/// Basis of {v in span(basis) : ⟨v, x⟩ = 0}, as ambient vectors.
fn orthogonal_in_span(
    gram: &RatMat,
    basis: &[Vec<BigRational>],
    x: &[BigRational],
) -> Vec<Vec<BigRational>> {
    let row: Vec<BigRational> = basis.iter().map(|b| rat_pair(gram, b, x)).collect();
    let coeffs = rat_kernel(&[row]);
    coeffs
        .into_iter()
        .map(|c| {
            let n = x.len();
            let mut v = vec![BigRational::zero(); n];
            for (ci, b) in c.iter().zip(basis) {
                if ci.is_zero() {
                    continue;
                }
                for k in 0..n {
                    v[k] += ci * &b[k];
                }
            }
            v
        })
        .collect()
}

fn factor_recursive(
    gram: &RatMat,
    h: &RatMat,
    subspace: &[Vec<BigRational>],
) -> Vec<Vec<BigRational>> {
    if subspace.is_empty() {
        return Vec::new();
    }
    let images: Vec<Vec<BigRational>> = subspace.iter().map(|b| apply_rat(h, b)).collect();
    let moved: Vec<usize> = (0..subspace.len())
        .filter(|&i| images[i] != subspace[i])
        .collect();
    if moved.is_empty() {
        // h fixes a basis of the span, hence the span
        return Vec::new();
    }
    let (x, hx) = find_moved_anisotropic(gram, subspace, &images, &moved);
    let w = vec_sub(&hx, &x);
    let rest_basis = orthogonal_in_span(gram, subspace, &x);
    if !rat_norm(gram, &w).is_zero() {
        // s_w maps hx back to x and fixes everything h already fixed
        let s = reflection_matrix_rat(gram, &w);
        let h2 = rat_mat_mul(&s, h);
        let mut factors = vec![w];
        factors.extend(factor_recursive(gram, &h2, &rest_basis));
        factors
    } else {
        // degenerate step: ⟨hx−x, hx−x⟩ = 0 with x anisotropic, so hx+x is
        // anisotropic; reflect hx to −x and then −x to x
        let w1 = vec_add(&hx, &x);
        let s1 = reflection_matrix_rat(gram, &w1);
        let s2 = reflection_matrix_rat(gram, &x);
        let h2 = rat_mat_mul(&s2, &rat_mat_mul(&s1, h));
        let mut factors = vec![w1, x];
        factors.extend(factor_recursive(gram, &h2, &rest_basis));
        factors
    }
}

/// The reflection x ↦ x − 2⟨x,v⟩/⟨v,v⟩·v as a lattice isometry.
pub fn reflection(l: &Lattice, v: &Vector) -> Result<Isometry, IsometryError> {
    let n = l.rank();
    if v.dim() != n {
        return Err(IsometryError::ShapeMismatch);
    }
    let q = l.norm(v);
    if q.is_zero() {
        return Err(IsometryError::IsotropicVector);
    }
    let gram = to_rat_mat(l.gram());
    let w: Vec<BigRational> =
        v.0.iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
    let m = reflection_matrix_rat(&gram, &w);
    let mut matrix = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if !m[i][j].is_integer() {
                return Err(IsometryError::NotIntegral);
            }
            matrix[i][j] = m[i][j].to_integer();
        }
    }
    let iso = Isometry::new(l.clone(), matrix).expect("reflection preserves the form");
    debug_assert_eq!(iso.determinant(), -1);
    Ok(iso)
}
