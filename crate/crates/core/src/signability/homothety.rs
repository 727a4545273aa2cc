use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::pseudo_inverse_graph;
use crate::graph::Graph;
use crate::linalg::RationalMatrix;
use crate::spectral::{eigenvalues_symmetric, graph_spectrum, DEFAULT_ZERO_TOL};

const MAX_DENOMINATOR: i64 = 1_000_000;
const NUMERIC_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Kappa {
    Rational(BigRational),
    Real(f64),
}

impl Kappa {
    pub fn to_f64(&self) -> f64 {
        match self {
            Kappa::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            Kappa::Real(x) => *x,
        }
    }
}

/// `W = kappa * P A P^T`, with `W_ij = kappa * A[perm[i]][perm[j]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Homothety {
    pub kappa: Kappa,
    pub permutation: Vec<usize>,
}

/// Best rational approximation with denominator at most `MAX_DENOMINATOR`,
/// accepted only when it reproduces `x` to near machine precision.
fn recognise_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    let mut best = None;
    for _ in 0..64 {
        let a = libm::floor(r);
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DENOMINATOR {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        best = Some((h1, k1));
        let frac = r - a as f64;
        if libm::fabs(h1 as f64 / k1 as f64 - x) <= 1e-15 * x.abs() || frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    let (h, k) = best?;
    if libm::fabs(h as f64 / k as f64 - x) <= 1e-13 * x.abs() {
        Some(BigRational::new(BigInt::from(h), BigInt::from(k)))
    } else {
        None
    }
}

fn spectral_radius(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |acc, &x| acc.max(libm::fabs(x)))
}

/// Lexicographically smallest relabeling matching a scaled weight matrix.
struct Matcher<'a> {
    g: &'a Graph,
    // `fits(i, j, a)`: does the scaled weight at (i, j) agree with adjacency bit `a`
    fits: &'a dyn Fn(usize, usize, bool) -> bool,
    w_degree: Vec<usize>,
    perm: Vec<usize>,
    used: u64,
}

impl Matcher<'_> {
    fn search(&mut self, i: usize) -> bool {
        let n = self.g.order();
        if i == n {
            return true;
        }
        if !(self.fits)(i, i, false) {
            return false;
        }
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.g.degree(v) != self.w_degree[i] {
                continue;
            }
            let consistent = (0..i).all(|k| (self.fits)(i, k, self.g.has_edge(v, self.perm[k])));
            if !consistent {
                continue;
            }
            self.perm.push(v);
            self.used |= 1 << v;
            if self.search(i + 1) {
                return true;
            }
            self.perm.pop();
            self.used &= !(1 << v);
        }
        false
    }
}

/// Checks whether the pseudo-inverse graph of `g` is a positive multiple of
/// a relabeling of `g`.
///
/// `kappa` comes from the ratio of spectral radii; when it is recognisably
/// rational the match is verified exactly, otherwise to `1e-9`.
pub fn homothety_check(g: &Graph) -> Option<Homothety> {
    let w = pseudo_inverse_graph(g)?;
    let w = w.weights();
    let n = g.order();
    let rho_a = spectral_radius(graph_spectrum(g).eigenvalues());
    let rho_w = spectral_radius(eigenvalues_symmetric(&w.to_f64(), n, DEFAULT_ZERO_TOL).ok()?.eigenvalues());
    if rho_a == 0.0 {
        return None;
    }
    let kappa_real = rho_w / rho_a;

    // nonzero weights count as edges
    let w_degree: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| !w.get(i, j).is_zero()).count()).collect();

    if let Some(q) = recognise_rational(kappa_real).filter(|q| q.is_positive()) {
        let fits = |i: usize, j: usize, a: bool| {
            let x = w.get(i, j);
            if a {
                *x == q
            } else {
                x.is_zero()
            }
        };
        let mut m = Matcher { g, fits: &fits, w_degree: w_degree.clone(), perm: Vec::with_capacity(n), used: 0 };
        if m.search(0) {
            let permutation = m.perm;
            return Some(Homothety { kappa: Kappa::Rational(q), permutation });
        }
    }

    // kappa not recognised, or recognised wrongly: match numerically
    let wf = w.to_f64();
    let fits = |i: usize, j: usize, a: bool| {
        let target = if a { 1.0 } else { 0.0 };
        libm::fabs(wf[i * n + j] / kappa_real - target) <= NUMERIC_TOL
    };
    let mut m = Matcher { g, fits: &fits, w_degree, perm: Vec::with_capacity(n), used: 0 };
    m.search(0).then_some(Homothety { kappa: Kappa::Real(kappa_real), permutation: m.perm })
}

/// `kappa * P A P^T` for a rational `kappa`, for callers that want to
/// re-verify a result.
pub fn scaled_relabeling(g: &Graph, kappa: &BigRational, perm: &[usize]) -> RationalMatrix {
    let n = g.order();
    RationalMatrix::from_fn(n, n, |i, j| {
        if g.has_edge(perm[i], perm[j]) {
            kappa.clone()
        } else {
            BigRational::zero()
        }
    })
}
