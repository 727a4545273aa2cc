use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{LinalgError, RationalMatrix};

/// Reduced row-echelon form and pivot columns. The rank is `pivots.len()`.
pub fn rank_and_rref(a: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(p, row);
        let inv = m.get(row, col).recip();
        m.scale_row(row, &inv);
        for r in 0..m.rows() {
            if r != row && !m.get(r, col).is_zero() {
                let f: BigRational = m.get(r, col).clone();
                m.sub_row_multiple(r, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// `A = C R` with `C` the pivot columns of `A` and `R` the nonzero rows of
/// its RREF. Both factors have full rank `r`.
pub fn full_rank_factorization(a: &RationalMatrix) -> (RationalMatrix, RationalMatrix) {
    let (rref, pivots) = rank_and_rref(a);
    let c = a.select_columns(&pivots);
    let rows: Vec<usize> = (0..pivots.len()).collect();
    (c, rref.select_rows(&rows))
}

/// Moore-Penrose inverse of an arbitrary rational matrix,
/// `X = Rᵀ (R Rᵀ)⁻¹ (Cᵀ C)⁻¹ Cᵀ`.
pub fn pseudoinverse(a: &RationalMatrix) -> RationalMatrix {
    let (c, r) = full_rank_factorization(a);
    if r.rows() == 0 {
        return RationalMatrix::zeros(a.cols(), a.rows());
    }
    let rt = r.transpose();
    let ct = c.transpose();
    let rrt_inv = (&r * &rt).inverse().expect("R has full row rank");
    let ctc_inv = (&ct * &c).inverse().expect("C has full column rank");
    &(&(&rt * &rrt_inv) * &ctc_inv) * &ct
}

/// Exact Moore-Penrose inverse of a symmetric rational matrix.
///
/// Invertible input short-circuits to the ordinary inverse.
pub fn mp_pseudoinverse_exact(a: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if !a.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    if let Some(inv) = a.inverse() {
        return Ok(inv);
    }
    Ok(pseudoinverse(a))
}

/// Group inverse `T#` of a square matrix of index at most one, computed as
/// `C (R C)⁻² R` from a full-rank factorisation. `None` if the index is
/// larger (then `R C` is singular).
pub fn group_inverse(t: &RationalMatrix) -> Option<RationalMatrix> {
    if !t.is_square() {
        return None;
    }
    let (c, r) = full_rank_factorization(t);
    if r.rows() == 0 {
        return Some(RationalMatrix::zeros(t.rows(), t.cols()));
    }
    let rc_inv = (&r * &c).inverse()?;
    let sq = &rc_inv * &rc_inv;
    Some(&(&c * &sq) * &r)
}

/// Checks the four Penrose identities exactly.
pub fn verify_mp_axioms(a: &RationalMatrix, x: &RationalMatrix) -> bool {
    if a.rows() != x.cols() || a.cols() != x.rows() {
        return false;
    }
    let ax = a * x;
    let xa = x * a;
    ax.is_symmetric() && xa.is_symmetric() && &ax * a == *a && &xa * x == *x
}
