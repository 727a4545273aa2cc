//! Numeric spectra of symmetric matrices and the spectral indices built on
//! the positive and negative parts of a graph spectrum.

mod jacobi;

use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::linalg::{mp_pseudoinverse_exact, IntMatrix, RationalMatrix};

pub use jacobi::{jacobi_eigen, JacobiOutput};

/// Default relative threshold below which an eigenvalue counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    NotSymmetric,
    DimensionMismatch,
    /// The spectrum lacks a strictly positive or a strictly negative part.
    OneSigned,
    NoConvergence,
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::NotSymmetric => f.write_str("matrix is not symmetric"),
            SpectralError::DimensionMismatch => f.write_str("data length does not match n*n"),
            SpectralError::OneSigned => {
                f.write_str("spectrum needs at least one positive and one negative eigenvalue")
            }
            SpectralError::NoConvergence => f.write_str("Jacobi iteration did not converge"),
        }
    }
}

impl core::error::Error for SpectralError {}

/// Eigenvalues sorted in descending order together with the zero
/// threshold used to classify them.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    zero_tol: f64,
}

impl Spectrum {
    /// Sorts `values` descending.
    pub fn new(mut values: Vec<f64>, zero_tol: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { eigenvalues: values, zero_tol }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn min(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    /// Absolute cut-off: `zero_tol * max(1, max |λ|)`.
    pub fn zero_threshold(&self) -> f64 {
        let scale = self.eigenvalues.iter().fold(1.0f64, |acc, &x| acc.max(libm::fabs(x)));
        self.zero_tol * scale
    }

    pub fn is_zero(&self, x: f64) -> bool {
        libm::fabs(x) < self.zero_threshold()
    }

    pub fn positive(&self) -> impl Iterator<Item = f64> + '_ {
        let t = self.zero_threshold();
        self.eigenvalues.iter().copied().filter(move |&x| x >= t)
    }

    pub fn negative(&self) -> impl Iterator<Item = f64> + '_ {
        let t = self.zero_threshold();
        self.eigenvalues.iter().copied().filter(move |&x| x <= -t)
    }

    pub fn zero_count(&self) -> usize {
        let t = self.zero_threshold();
        self.eigenvalues.iter().filter(|x| libm::fabs(**x) < t).count()
    }
}

/// Extreme eigenvalues and the gap, index and power of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralIndices {
    pub lambda_max: f64,
    pub lambda_min: f64,
    /// Least positive eigenvalue.
    pub lambda_plus: f64,
    /// Largest negative eigenvalue.
    pub lambda_minus: f64,
    /// `lambda_plus - lambda_minus`
    pub gap: f64,
    /// `max(|lambda_plus|, |lambda_minus|)`
    pub ind: f64,
    /// Sum of absolute values of all eigenvalues.
    pub pow: f64,
}

/// All eigenvalues of a dense symmetric row-major `n x n` matrix.
pub fn eigenvalues_symmetric(a: &[f64], n: usize, zero_tol: f64) -> Result<Spectrum, SpectralError> {
    let out = jacobi_eigen(a, n)?;
    Ok(Spectrum::new(out.values, zero_tol))
}

/// Adjacency spectrum of a graph with the default zero threshold.
pub fn graph_spectrum(g: &Graph) -> Spectrum {
    eigenvalues_symmetric(&g.adjacency_f64(), g.order(), DEFAULT_ZERO_TOL)
        .expect("adjacency matrices are symmetric")
}

pub fn spectral_indices(s: &Spectrum) -> Result<SpectralIndices, SpectralError> {
    let lambda_plus = s.positive().last().ok_or(SpectralError::OneSigned)?;
    let lambda_minus = s.negative().next().ok_or(SpectralError::OneSigned)?;
    let lambda_max = s.max().unwrap();
    let lambda_min = s.min().unwrap();
    let pow = s.positive().chain(s.negative()).map(libm::fabs).sum();
    Ok(SpectralIndices {
        lambda_max,
        lambda_min,
        lambda_plus,
        lambda_minus,
        gap: lambda_plus - lambda_minus,
        ind: lambda_plus.max(-lambda_minus),
        pow,
    })
}

/// Indices of `A` recovered from the spectrum of its exact pseudoinverse.
///
/// The nonzero eigenvalues of `A†` are the reciprocals of those of `A`, so
/// `λ₊(A) = 1 / λ_max(A†)` and `λ₋(A) = 1 / λ_min(A†)`.
pub fn reciprocal_indices_from_pinv(a: &IntMatrix) -> Result<SpectralIndices, SpectralError> {
    if a.rows() != a.cols() {
        return Err(SpectralError::DimensionMismatch);
    }
    let pinv = mp_pseudoinverse_exact(&RationalMatrix::from_int(a))
        .map_err(|_| SpectralError::NotSymmetric)?;
    let s = eigenvalues_symmetric(&pinv.to_f64(), a.rows(), DEFAULT_ZERO_TOL)?;
    let mu_max = s.positive().next().ok_or(SpectralError::OneSigned)?;
    let mu_min = s.negative().last().ok_or(SpectralError::OneSigned)?;
    let lambda_plus = 1.0 / mu_max;
    let lambda_minus = 1.0 / mu_min;
    let lambda_max = 1.0 / s.positive().last().unwrap();
    let lambda_min = 1.0 / s.negative().next().unwrap();
    let pow = s.positive().chain(s.negative()).map(|mu| 1.0 / libm::fabs(mu)).sum();
    Ok(SpectralIndices {
        lambda_max,
        lambda_min,
        lambda_plus,
        lambda_minus,
        gap: lambda_plus - lambda_minus,
        ind: lambda_plus.max(-lambda_minus),
        pow,
    })
}
