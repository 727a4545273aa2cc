//! Cyclic Jacobi rotations for small dense symmetric matrices.

use alloc::vec::Vec;

use super::SpectralError;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Unsorted eigenvalues and the matching eigenvectors (column `k` of the
/// row-major `vectors` belongs to `values[k]`).
#[derive(Debug, Clone)]
pub struct JacobiOutput {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

fn frobenius(a: &[f64]) -> f64 {
    libm::sqrt(a.iter().map(|x| x * x).sum())
}

fn off_diagonal(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    libm::sqrt(s)
}

/// Diagonalises a symmetric row-major matrix, sweeping until the
/// off-diagonal Frobenius norm drops below `1e-14 * ||A||_F`.
pub fn jacobi_eigen(input: &[f64], n: usize) -> Result<JacobiOutput, SpectralError> {
    if input.len() != n * n {
        return Err(SpectralError::DimensionMismatch);
    }
    let norm = frobenius(input);
    for i in 0..n {
        for j in 0..i {
            let (x, y) = (input[i * n + j], input[j * n + i]);
            if libm::fabs(x - y) > 1e-12 * norm.max(1.0) {
                return Err(SpectralError::NotSymmetric);
            }
        }
    }

    let mut a = input.to_vec();
    let mut v = alloc::vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let target = OFF_DIAGONAL_TOL * norm;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a, n) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if libm::fabs(theta) > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let np = c * arp - s * arq;
                    let nq = s * arp + c * arq;
                    a[r * n + p] = np;
                    a[p * n + r] = np;
                    a[r * n + q] = nq;
                    a[q * n + r] = nq;
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    if !converged && off_diagonal(&a, n) > target {
        return Err(SpectralError::NoConvergence);
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok(JacobiOutput { values, vectors: v })
}
