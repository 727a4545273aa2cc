//! Positive and negative signability of exact pseudoinverses.
//!
//! A symmetric matrix `M` is positively (negatively) signable when some
//! diagonal `±1` matrix `D` makes `D M D` entrywise non-negative
//! (non-positive). Since `(DMD)_ij = d_i d_j M_ij`, this is a parity
//! problem: each nonzero off-diagonal entry fixes `d_i d_j`, and a diagonal
//! entry of the wrong sign rules the target out. Decisions are made on the
//! exact rational matrix only.

mod homothety;
mod parity;

use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::graph::{Graph, WeightedGraph};
use crate::linalg::{mp_pseudoinverse_exact, LinalgError, RationalMatrix};

pub use homothety::{homothety_check, scaled_relabeling, Homothety, Kappa};
pub use parity::ParityUnionFind;

/// Largest order accepted by [`brute_force_signability`].
pub const BRUTE_FORCE_MAX_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignabilityError {
    NotSignable,
    TooLarge { order: usize, max: usize },
    Linalg(LinalgError),
}

impl fmt::Display for SignabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignabilityError::NotSignable => f.write_str("graph is not signably pseudo-invertible"),
            SignabilityError::TooLarge { order, max } => {
                write!(f, "order {order} exceeds the brute-force limit {max}")
            }
            SignabilityError::Linalg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SignabilityError {}

impl From<LinalgError> for SignabilityError {
    fn from(e: LinalgError) -> Self {
        SignabilityError::Linalg(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Positive,
    Negative,
}

/// Exact elementwise sign of a square matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    n: usize,
    data: Vec<i8>,
}

impl SignPattern {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.n + j]
    }
}

pub fn sign_pattern(m: &RationalMatrix) -> SignPattern {
    assert!(m.is_square(), "sign patterns are taken of square matrices");
    let data = m
        .entries()
        .iter()
        .map(|x| if x.is_zero() { 0 } else if x.is_positive() { 1 } else { -1 })
        .collect();
    SignPattern { n: m.rows(), data }
}

/// Diagonal of a signature matrix; the first entry is always `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignatureVector(Vec<i8>);

impl SignatureVector {
    /// Accepts `±1` entries and normalises the overall sign so the first
    /// entry is `+1`.
    pub fn new(mut entries: Vec<i8>) -> Option<Self> {
        if entries.iter().any(|&d| d != 1 && d != -1) {
            return None;
        }
        if entries.first() == Some(&-1) {
            entries.iter_mut().for_each(|d| *d = -*d);
        }
        Some(SignatureVector(entries))
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `D M D`
    pub fn conjugate(&self, m: &RationalMatrix) -> RationalMatrix {
        RationalMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            let x = m.get(i, j);
            if self.0[i] * self.0[j] == 1 {
                x.clone()
            } else {
                -x
            }
        })
    }
}

impl fmt::Display for SignatureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("diag(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Solves the parity constraints of `pattern` for one target sign.
///
/// Zero entries impose nothing; the lowest vertex of every constraint
/// component is fixed to `+1`.
pub fn find_signature(pattern: &SignPattern, target: Target) -> Option<SignatureVector> {
    let n = pattern.order();
    let bad_diagonal = match target {
        Target::Positive => -1,
        Target::Negative => 1,
    };
    if (0..n).any(|i| pattern.get(i, i) == bad_diagonal) {
        return None;
    }
    let mut uf = ParityUnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let s = pattern.get(i, j);
            if s == 0 {
                continue;
            }
            // positive target needs d_i d_j = s, negative needs d_i d_j = -s
            let odd = match target {
                Target::Positive => s < 0,
                Target::Negative => s > 0,
            };
            if !uf.relate(i, j, odd) {
                return None;
            }
        }
    }
    let mut anchor: Vec<Option<bool>> = alloc::vec![None; n];
    let mut d = Vec::with_capacity(n);
    for v in 0..n {
        let (root, p) = uf.find(v);
        let base = *anchor[root].get_or_insert(p);
        d.push(if p == base { 1 } else { -1 });
    }
    SignatureVector::new(d)
}

/// Direct check that `D M D` has the target sign everywhere.
pub fn verify_signature(m: &RationalMatrix, d: &SignatureVector, target: Target) -> bool {
    let n = m.rows();
    d.len() == n
        && (0..n).all(|i| {
            (0..n).all(|j| {
                let x = m.get(i, j);
                let signed_positive = if d.0[i] * d.0[j] == 1 { x.is_positive() } else { x.is_negative() };
                let signed_negative = if d.0[i] * d.0[j] == 1 { x.is_negative() } else { x.is_positive() };
                match target {
                    Target::Positive => !signed_negative,
                    Target::Negative => !signed_positive,
                }
            })
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignabilityKind {
    NotSignable,
    PositiveOnly,
    NegativeOnly,
    Both,
}

impl SignabilityKind {
    pub fn from_flags(positive: bool, negative: bool) -> Self {
        match (positive, negative) {
            (false, false) => SignabilityKind::NotSignable,
            (true, false) => SignabilityKind::PositiveOnly,
            (false, true) => SignabilityKind::NegativeOnly,
            (true, true) => SignabilityKind::Both,
        }
    }

    pub fn is_signable(self) -> bool {
        self != SignabilityKind::NotSignable
    }

    pub fn is_positive(self) -> bool {
        matches!(self, SignabilityKind::PositiveOnly | SignabilityKind::Both)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, SignabilityKind::NegativeOnly | SignabilityKind::Both)
    }

    /// Table tag: `+`, `-`, `±`, or empty for non-signable.
    pub fn tag(self) -> &'static str {
        match self {
            SignabilityKind::NotSignable => "",
            SignabilityKind::PositiveOnly => "+",
            SignabilityKind::NegativeOnly => "-",
            SignabilityKind::Both => "±",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignabilityKind::NotSignable => "NotSignable",
            SignabilityKind::PositiveOnly => "PositiveOnly",
            SignabilityKind::NegativeOnly => "NegativeOnly",
            SignabilityKind::Both => "Both",
        }
    }
}

impl fmt::Display for SignabilityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub kind: SignabilityKind,
    pub pos_witness: Option<SignatureVector>,
    pub neg_witness: Option<SignatureVector>,
}

impl Classification {
    fn from_witnesses(pos: Option<SignatureVector>, neg: Option<SignatureVector>) -> Self {
        Classification { kind: SignabilityKind::from_flags(pos.is_some(), neg.is_some()), pos_witness: pos, neg_witness: neg }
    }
}

/// Classifies an already computed symmetric pseudoinverse.
pub fn classify_matrix(pinv: &RationalMatrix) -> Classification {
    let pattern = sign_pattern(pinv);
    let pos = find_signature(&pattern, Target::Positive);
    let neg = find_signature(&pattern, Target::Negative);
    if let Some(d) = &pos {
        assert!(verify_signature(pinv, d, Target::Positive), "positive witness failed verification");
    }
    if let Some(d) = &neg {
        assert!(verify_signature(pinv, d, Target::Negative), "negative witness failed verification");
    }
    Classification::from_witnesses(pos, neg)
}

/// Exact pseudoinverse of the adjacency matrix together with its
/// classification.
pub fn classify_with_pinv(g: &Graph) -> (RationalMatrix, Classification) {
    let pinv = mp_pseudoinverse_exact(&g.adjacency_rational()).expect("adjacency matrices are symmetric");
    let c = classify_matrix(&pinv);
    (pinv, c)
}

pub fn classify(g: &Graph) -> Classification {
    classify_with_pinv(g).1
}

/// `D M D` for a positive witness, otherwise `-D M D` for a negative one.
pub fn signed_pseudoinverse(pinv: &RationalMatrix, c: &Classification) -> Option<RationalMatrix> {
    if let Some(d) = &c.pos_witness {
        return Some(d.conjugate(pinv));
    }
    c.neg_witness.as_ref().map(|d| -&d.conjugate(pinv))
}

/// Pseudo-inverse construction applied to a weighted symmetric matrix:
/// the signed exact pseudoinverse, or `None` if it is not signable.
pub fn pseudo_inverse_weighted(w: &RationalMatrix) -> Result<Option<RationalMatrix>, SignabilityError> {
    let pinv = mp_pseudoinverse_exact(w)?;
    let c = classify_matrix(&pinv);
    Ok(signed_pseudoinverse(&pinv, &c))
}

/// Weighted pseudo-inverse graph (loops kept), if the graph is signable.
pub fn pseudo_inverse_graph(g: &Graph) -> Option<WeightedGraph> {
    let (pinv, c) = classify_with_pinv(g);
    signed_pseudoinverse(&pinv, &c).map(|w| WeightedGraph::new(w).expect("signed pseudoinverse is non-negative"))
}

/// Inverts the pseudo-inverse graph again and compares with the original
/// adjacency exactly.
pub fn involution_check(g: &Graph) -> Result<bool, SignabilityError> {
    let w = pseudo_inverse_graph(g).ok_or(SignabilityError::NotSignable)?;
    let back = pseudo_inverse_weighted(w.weights())?;
    Ok(back.as_ref() == Some(&g.adjacency_rational()))
}

/// Tries all `2^(n-1)` signatures with a leading `+1`, for both targets.
///
/// Independent of the parity solver; used to cross-check it.
pub fn brute_force_signability(m: &RationalMatrix) -> Result<Classification, SignabilityError> {
    let n = m.rows();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(SignabilityError::TooLarge { order: n, max: BRUTE_FORCE_MAX_ORDER });
    }
    if n == 0 {
        let empty = SignatureVector(Vec::new());
        return Ok(Classification::from_witnesses(Some(empty.clone()), Some(empty)));
    }
    let signs: Vec<Vec<i8>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x: &BigRational = m.get(i, j);
                    if x.is_zero() { 0 } else if x.is_positive() { 1 } else { -1 }
                })
                .collect()
        })
        .collect();
    let mut pos = None;
    let mut neg = None;
    for mask in 0u32..(1u32 << (n - 1)) {
        let d: Vec<i8> = (0..n).map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 }).collect();
        let mut any_pos = false;
        let mut any_neg = false;
        for i in 0..n {
            for j in 0..n {
                match signs[i][j] * d[i] * d[j] {
                    1 => any_pos = true,
                    -1 => any_neg = true,
                    _ => {}
                }
            }
        }
        if pos.is_none() && !any_neg {
            pos = Some(SignatureVector(d.clone()));
        }
        if neg.is_none() && !any_pos {
            neg = Some(SignatureVector(d));
        }
        if pos.is_some() && neg.is_some() {
            break;
        }
    }
    Ok(Classification::from_witnesses(pos, neg))
}
