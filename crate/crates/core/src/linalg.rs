//! Exact integer and rational matrix routines: determinants, Hermite normal
//! form, integer kernels, and symmetric congruence diagonalization.
//!
//! Everything here is fraction-free or rational-exact; no floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMat = Vec<Vec<BigInt>>;
pub type RatMat = Vec<Vec<BigRational>>;

pub fn int_identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn int_mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn int_transpose(a: &[Vec<BigInt>]) -> IntMat {
    let n = a.len();
    let m = a[0].len();
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

/// Determinant by the Bareiss fraction-free algorithm. Exact for any size.
pub fn det_bareiss(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: IntMat = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by Bareiss
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

/// Row Hermite normal form with transform: returns (H, U) with U·A = H and
/// det U = ±1. Pivots are positive, entries above a pivot reduced into
/// [0, pivot).
pub fn row_hermite(a: &[Vec<BigInt>]) -> (IntMat, IntMat) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h: IntMat = a.to_vec();
    let mut u = int_identity(rows);
    let mut pr = 0;
    for pc in 0..cols {
        if pr == rows {
            break;
        }
        // euclidean sweep in the column until one nonzero entry remains
        loop {
            let mut pivot: Option<usize> = None;
            for r in pr..rows {
                if !h[r][pc].is_zero()
                    && pivot.map_or(true, |p: usize| h[r][pc].abs() < h[p][pc].abs())
                {
                    pivot = Some(r);
                }
            }
            let Some(p) = pivot else { break };
            h.swap(pr, p);
            u.swap(pr, p);
            let mut done = true;
            for r in pr + 1..rows {
                if h[r][pc].is_zero() {
                    continue;
                }
                let q = floor_div(&h[r][pc], &h[pr][pc]);
                for c in 0..cols {
                    let t = &q * &h[pr][c];
                    h[r][c] -= t;
                }
                for c in 0..rows {
                    let t = &q * &u[pr][c];
                    u[r][c] -= t;
                }
                if !h[r][pc].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[pr][pc].is_zero() {
            continue;
        }
        if h[pr][pc].is_negative() {
            negate_row(&mut h[pr]);
            negate_row(&mut u[pr]);
        }
        for r in 0..pr {
            let q = floor_div(&h[r][pc], &h[pr][pc]);
            if q.is_zero() {
                continue;
            }
            for c in 0..cols {
                let t = &q * &h[pr][c];
                h[r][c] -= t;
            }
            for c in 0..rows {
                let t = &q * &u[pr][c];
                u[r][c] -= t;
            }
        }
        pr += 1;
    }
    (h, u)
}

/// Nonzero rows of the row Hermite normal form: a canonical basis of the row
/// span of `a` as a subgroup of ℤⁿ.
pub fn row_span_basis(a: &[Vec<BigInt>]) -> IntMat {
    let (h, _) = row_hermite(a);
    h.into_iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Basis of the right kernel {x ∈ ℤⁿ : A·x = 0}. The kernel of an integer
/// matrix is automatically saturated. Rows of the result are canonical
/// (Hermite-reduced).
pub fn int_kernel(a: &[Vec<BigInt>]) -> IntMat {
    if a.is_empty() {
        return Vec::new();
    }
    let at = int_transpose(a);
    let (h, u) = row_hermite(&at);
    let mut basis: IntMat = Vec::new();
    for (row_h, row_u) in h.iter().zip(u.iter()) {
        if row_h.iter().all(|x| x.is_zero()) {
            basis.push(row_u.clone());
        }
    }
    row_span_basis(&basis)
}

/// Inverse of an integer matrix with det = ±1, via the adjugate.
pub fn inverse_unimodular(a: &[Vec<BigInt>]) -> Option<IntMat> {
    let n = a.len();
    let det = det_bareiss(a);
    if det.abs() != BigInt::one() {
        return None;
    }
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ji forms the (i,j) entry of the adjugate
            let minor: IntMat = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| a[r][c].clone())
                        .collect()
                })
                .collect();
            let mut cof = det_bareiss(&minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv[i][j] = cof;
        }
    }
    if det == -BigInt::one() {
        for row in inv.iter_mut() {
            negate_row(row);
        }
    }
    Some(inv)
}

pub fn to_rat_mat(a: &[Vec<BigInt>]) -> RatMat {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

pub fn rat_mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> RatMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn rat_identity(n: usize) -> RatMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Rank over ℚ by Gaussian elimination.
pub fn rat_rank(a: &[Vec<BigRational>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let mut m: RatMat = a.to_vec();
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    for pc in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][pc].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if m[r][pc].is_zero() {
                continue;
            }
            let f = &m[r][pc] / &m[rank][pc];
            for c in pc..cols {
                let t = &f * &m[rank][c];
                m[r][c] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the right kernel over ℚ of a rational matrix.
pub fn rat_kernel(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if a.is_empty() {
        return Vec::new();
    }
    let rows = a.len();
    let cols = a[0].len();
    let mut m: RatMat = a.to_vec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for pc in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][pc].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][pc].recip();
        for c in 0..cols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][pc].is_zero() {
                let f = m[r][pc].clone();
                for c in 0..cols {
                    let t = &f * &m[rank][c];
                    m[r][c] -= t;
                }
            }
        }
        pivot_cols.push(pc);
        rank += 1;
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![BigRational::zero(); cols];
        v[fc] = BigRational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Reduced row echelon form over ℚ with zero rows dropped: a canonical
/// representative of the row space.
pub fn rat_rref(a: &[Vec<BigRational>]) -> RatMat {
    if a.is_empty() {
        return Vec::new();
    }
    let mut m: RatMat = a.to_vec();
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    for pc in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][pc].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][pc].recip();
        for c in 0..cols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][pc].is_zero() {
                let f = m[r][pc].clone();
                for c in 0..cols {
                    let t = &f * &m[rank][c];
                    m[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Result of diagonalizing a symmetric form by a rational congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InertiaCounts {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Sylvester inertia of a symmetric rational matrix: counts of positive,
/// negative and zero pivots under congruence diagonalization. A zero diagonal
/// pivot with a nonzero off-diagonal mate is repaired by the standard
/// row+column combination before elimination.
pub fn inertia(sym: &[Vec<BigRational>]) -> InertiaCounts {
    let n = sym.len();
    let mut a: RatMat = sym.to_vec();
    let mut positive = 0;
    let mut negative = 0;
    for k in 0..n {
        if a[k][k].is_zero() {
            // try a later diagonal entry first
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else {
                // all remaining diagonal zero: look for any nonzero pairing
                let mut found = None;
                'outer: for i in k..n {
                    for j in i + 1..n {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                // row_i += row_j and col_i += col_j make the diagonal 2·a[i][j]
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[i][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][i] += t;
                }
                if i != k {
                    a.swap(k, i);
                    for row in a.iter_mut() {
                        row.swap(k, i);
                    }
                }
            }
        }
        if a[k][k].is_zero() {
            break;
        }
        if a[k][k].is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for c in 0..n {
                let t = &f * &a[k][c];
                a[i][c] -= t;
            }
            for r in 0..n {
                let t = &f * &a[r][k];
                a[r][i] -= t;
            }
        }
    }
    InertiaCounts {
        positive,
        negative,
        zero: n - positive - negative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn mat(rows: &[&[i64]]) -> IntMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| bi(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(det_bareiss(&mat(&[&[0, 1], &[1, 0]])), bi(-1));
        assert_eq!(det_bareiss(&mat(&[&[2, 1], &[1, 2]])), bi(3));
        assert_eq!(
            det_bareiss(&mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            bi(0)
        );
    }

    #[test]
    fn hermite_transform_is_consistent() {
        let a = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (h, u) = row_hermite(&a);
        assert_eq!(int_mat_mul(&u, &a), h);
        assert_eq!(det_bareiss(&u).abs(), bi(1));
    }

    #[test]
    fn kernel_of_simple_map() {
        // x + y + z = 0 in ZZ^3
        let a = mat(&[&[1, 1, 1]]);
        let k = int_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((v.iter().sum::<BigInt>()).is_zero());
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 2y = 0 should give the primitive vector (1,-1), not (2,-2)
        let a = mat(&[&[2, 2]]);
        let k = int_kernel(&a);
        assert_eq!(k, mat(&[&[1, -1]]));
    }

    #[test]
    fn inertia_matches_hand_values() {
        let h = to_rat_mat(&mat(&[&[0, 1], &[1, 0]]));
        let c = inertia(&h);
        assert_eq!((c.positive, c.negative, c.zero), (1, 1, 0));

        let degenerate = to_rat_mat(&mat(&[&[-2, -2], &[-2, -2]]));
        let c = inertia(&degenerate);
        assert_eq!((c.positive, c.negative, c.zero), (0, 1, 1));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = mat(&[&[1, 2], &[1, 3]]);
        let inv = inverse_unimodular(&a).unwrap();
        assert_eq!(int_mat_mul(&a, &inv), int_identity(2));
    }
}
