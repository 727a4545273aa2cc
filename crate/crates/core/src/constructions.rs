//! Graph families and their closed-form pseudoinverses and spectra.
//!
//! All constructors label vertices deterministically:
//!
//! - paths run `0 - 1 - ... - (m-1)` and cycles close with `(m-1, 0)`
//! - multipartite graphs place class `i` on a consecutive block
//! - the star `S_m = K_{m-1,1}` has its centre last
//! - `K_{m,m}` minus an edge uses classes `0..m` and `m..2m` and drops `(0, m)`
//! - coronas list the pendant vertices first, pendant `i` hanging on `k + i`

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::{Graph, GraphError, MAX_ORDER};
use crate::linalg::{group_inverse, ratio, IntMatrix, RationalMatrix};
use crate::signability::{classify_matrix, Classification};
use crate::spectral::{eigenvalues_symmetric, Spectrum, DEFAULT_ZERO_TOL};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    UnknownFamily(String),
    InvalidParameter { family: &'static str, reason: &'static str },
    DisconnectedBase,
    Graph(GraphError),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::UnknownFamily(name) => write!(f, "unknown graph family `{name}`"),
            ConstructionError::InvalidParameter { family, reason } => write!(f, "{family}: {reason}"),
            ConstructionError::DisconnectedBase => f.write_str("base graph must be connected"),
            ConstructionError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConstructionError {}

impl From<GraphError> for ConstructionError {
    fn from(e: GraphError) -> Self {
        ConstructionError::Graph(e)
    }
}

/// A named graph family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Star(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    CompleteBipartiteMinusEdge(usize),
}

pub const FAMILY_NAMES: [&str; 7] = [
    "cycle",
    "path",
    "complete",
    "star",
    "complete_bipartite",
    "complete_multipartite",
    "complete_bipartite_minus_edge",
];

fn invalid(family: &'static str, reason: &'static str) -> ConstructionError {
    ConstructionError::InvalidParameter { family, reason }
}

impl Family {
    /// Parses a family name and its integer parameters, validating ranges.
    pub fn parse(name: &str, params: &[usize]) -> Result<Self, ConstructionError> {
        let one = |family: &'static str| match params {
            [m] => Ok(*m),
            _ => Err(invalid(family, "expects exactly one parameter")),
        };
        let family = match name {
            "cycle" => Family::Cycle(one("cycle")?),
            "path" => Family::Path(one("path")?),
            "complete" => Family::Complete(one("complete")?),
            "star" => Family::Star(one("star")?),
            "complete_bipartite" => match params {
                [a, b] => Family::CompleteBipartite(*a, *b),
                _ => return Err(invalid("complete_bipartite", "expects two parameters")),
            },
            "complete_multipartite" => Family::CompleteMultipartite(params.to_vec()),
            "complete_bipartite_minus_edge" => Family::CompleteBipartiteMinusEdge(one("complete_bipartite_minus_edge")?),
            other => return Err(ConstructionError::UnknownFamily(other.into())),
        };
        family.validate()?;
        Ok(family)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Cycle(_) => "cycle",
            Family::Path(_) => "path",
            Family::Complete(_) => "complete",
            Family::Star(_) => "star",
            Family::CompleteBipartite(..) => "complete_bipartite",
            Family::CompleteMultipartite(_) => "complete_multipartite",
            Family::CompleteBipartiteMinusEdge(_) => "complete_bipartite_minus_edge",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Family::Cycle(m) | Family::Path(m) | Family::Complete(m) | Family::Star(m) => *m,
            Family::CompleteBipartite(a, b) => a + b,
            Family::CompleteMultipartite(parts) => parts.iter().sum(),
            Family::CompleteBipartiteMinusEdge(m) => 2 * m,
        }
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let name = self.name();
        match self {
            Family::Cycle(m) if *m < 3 => return Err(invalid(name, "needs m >= 3")),
            Family::Path(m) | Family::Complete(m) if *m < 1 => return Err(invalid(name, "needs m >= 1")),
            Family::Star(m) if *m < 2 => return Err(invalid(name, "needs m >= 2")),
            Family::CompleteBipartite(a, b) if *a < 1 || *b < 1 => return Err(invalid(name, "parts must be positive")),
            Family::CompleteMultipartite(parts) if parts.is_empty() || parts.contains(&0) => {
                return Err(invalid(name, "needs at least one part, all positive"))
            }
            Family::CompleteBipartiteMinusEdge(m) if *m < 2 => return Err(invalid(name, "needs m >= 2")),
            _ => {}
        }
        if self.order() > MAX_ORDER {
            return Err(GraphError::UnsupportedOrder { order: self.order(), max: MAX_ORDER }.into());
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Graph, ConstructionError> {
        self.validate()?;
        Ok(match self {
            Family::Cycle(m) => cycle(*m),
            Family::Path(m) => path(*m),
            Family::Complete(k) => complete(*k),
            Family::Star(m) => complete_multipartite(&[m - 1, 1]),
            Family::CompleteBipartite(a, b) => complete_multipartite(&[*a, *b]),
            Family::CompleteMultipartite(parts) => complete_multipartite(parts),
            Family::CompleteBipartiteMinusEdge(m) => {
                let mut g = complete_multipartite(&[*m, *m]);
                g.remove_edge(0, *m);
                g
            }
        })
    }

    /// Closed-form pseudoinverse of the family's adjacency matrix.
    pub fn closed_form_pinv(&self) -> Result<RationalMatrix, ConstructionError> {
        self.validate()?;
        Ok(match self {
            Family::Cycle(m) => pinv_cycle_closed_form(*m),
            Family::Path(m) => pinv_path_closed_form(*m),
            Family::Complete(k) => pinv_complete(*k),
            Family::Star(m) => pinv_complete_bipartite(m - 1, 1),
            Family::CompleteBipartite(a, b) => pinv_complete_bipartite(*a, *b),
            Family::CompleteMultipartite(parts) => {
                pinv_multipartitioned(&PartitionSpec { parts: parts.clone(), base: None })?
            }
            Family::CompleteBipartiteMinusEdge(m) => pinv_kmm_minus_e(*m),
        })
    }
}

/// Builds a labeled representative of a named family.
pub fn make_family(name: &str, params: &[usize]) -> Result<Graph, ConstructionError> {
    Family::parse(name, params)?.build()
}

fn path(m: usize) -> Graph {
    let mut g = Graph::empty(m).expect("validated order");
    for i in 1..m {
        g.add_edge(i - 1, i);
    }
    g
}

fn cycle(m: usize) -> Graph {
    let mut g = path(m);
    g.add_edge(m - 1, 0);
    g
}

fn complete(k: usize) -> Graph {
    complete_multipartite(&alloc::vec![1; k])
}

fn complete_multipartite(parts: &[usize]) -> Graph {
    let base = complete_graph_unchecked(parts.len());
    expand_unchecked(&base, parts)
}

fn complete_graph_unchecked(k: usize) -> Graph {
    let mut g = Graph::empty(k).expect("validated order");
    for i in 0..k {
        for j in i + 1..k {
            g.add_edge(i, j);
        }
    }
    g
}

fn class_offsets(parts: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(parts.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for p in parts {
        acc += p;
        offsets.push(acc);
    }
    offsets
}

fn expand_unchecked(base: &Graph, parts: &[usize]) -> Graph {
    let offsets = class_offsets(parts);
    let mut g = Graph::empty(offsets[parts.len()]).expect("validated order");
    for (a, b) in base.edges() {
        for u in offsets[a]..offsets[a + 1] {
            for v in offsets[b]..offsets[b + 1] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Circulant pseudoinverse of `C_m` from the residue of `m` mod 4.
///
/// Entry `(i, j)` is `a_p` with `p = (i - j) mod m`; `p = 0` falls in the
/// even branch.
pub fn pinv_cycle_closed_form(m: usize) -> RationalMatrix {
    assert!(m >= 3, "cycles need m >= 3");
    let mi = m as i64;
    let sign = |e: i64| if e % 2 == 0 { 1 } else { -1 };
    let a = |p: i64| -> BigRational {
        if m.is_multiple_of(4) {
            if p % 2 == 1 {
                ratio((mi / 2 - p) * sign((p - 1) / 2), mi)
            } else {
                BigRational::zero()
            }
        } else if p % 2 == 1 {
            ratio(sign((p - 1) / 2), 2)
        } else {
            match m % 4 {
                1 => ratio(sign(p / 2), 2),
                2 => BigRational::zero(),
                _ => ratio(sign(p / 2 + 1), 2),
            }
        }
    };
    let coeffs: Vec<BigRational> = (0..mi).map(a).collect();
    RationalMatrix::from_fn(m, m, |i, j| coeffs[(i + m - j) % m].clone())
}

/// Pseudoinverse of `P_m`: the integer inverse for even `m`, the rational
/// pseudoinverse for odd `m`.
pub fn pinv_path_closed_form(m: usize) -> RationalMatrix {
    assert!(m >= 1, "paths need m >= 1");
    let denom = m as i64 + 1;
    RationalMatrix::from_fn(m, m, |r, c| {
        // 1-indexed with i <= j
        let (i, j) = (r.min(c) as i64 + 1, r.max(c) as i64 + 1);
        if (i + j) % 2 == 0 {
            return BigRational::zero();
        }
        let s = if ((j - i - 1) / 2) % 2 == 0 { 1 } else { -1 };
        if m.is_multiple_of(2) {
            if i % 2 == 1 {
                int(s)
            } else {
                BigRational::zero()
            }
        } else if i % 2 == 0 {
            ratio(s * i, denom)
        } else {
            ratio(s * (denom - j), denom)
        }
    })
}

/// `A(K_k)^{-1} = J/(k-1) - I`; the zero matrix for `k = 1`.
pub fn pinv_complete(k: usize) -> RationalMatrix {
    if k == 1 {
        return RationalMatrix::zeros(1, 1);
    }
    let off = ratio(1, k as i64 - 1);
    let diag = &off - BigRational::one();
    RationalMatrix::from_fn(k, k, |i, j| if i == j { diag.clone() } else { off.clone() })
}

/// `A(K_{m1,m2}) / (m1 m2)`
pub fn pinv_complete_bipartite(m1: usize, m2: usize) -> RationalMatrix {
    assert!(m1 >= 1 && m2 >= 1, "parts must be positive");
    let w = ratio(1, (m1 * m2) as i64);
    let n = m1 + m2;
    RationalMatrix::from_fn(n, n, |i, j| if (i < m1) != (j < m1) { w.clone() } else { BigRational::zero() })
}

/// Pseudoinverse of `K_{m,m}` with the edge `(0, m)` removed.
///
/// The biadjacency block is `K = J - e1 e1^T` and
/// `K^+ = (e1 1^T + 1 e1^T - (m+1) e1 e1^T) / (m-1)`.
pub fn pinv_kmm_minus_e(m: usize) -> RationalMatrix {
    assert!(m >= 2, "needs m >= 2");
    let mi = m as i64;
    let k_pinv = |a: usize, b: usize| -> BigRational {
        let num = match (a == 0, b == 0) {
            (true, true) => 2 - (mi + 1),
            (true, false) | (false, true) => 1,
            (false, false) => 0,
        };
        ratio(num, mi - 1)
    };
    RationalMatrix::from_fn(2 * m, 2 * m, |i, j| match (i < m, j < m) {
        (true, false) => k_pinv(j - m, i),
        (false, true) => k_pinv(i - m, j),
        _ => BigRational::zero(),
    })
}

/// Closed-form spectrum of `K_{m,m}` minus an edge: `±(1 - m ± sqrt(m^2 + 2m - 3)) / 2`
/// and `2m - 4` zeros.
pub fn kmm_minus_e_spectrum(m: usize) -> Spectrum {
    assert!(m >= 2, "needs m >= 2");
    let mf = m as f64;
    let r = libm::sqrt(mf * mf + 2.0 * mf - 3.0);
    let mut values = Vec::with_capacity(2 * m);
    for s in [1.0, -1.0] {
        values.push(s * (1.0 - mf + r) / 2.0);
        values.push(s * (1.0 - mf - r) / 2.0);
    }
    values.extend(core::iter::repeat_n(0.0, 2 * m - 4));
    Spectrum::new(values, DEFAULT_ZERO_TOL)
}

/// Class sizes `m_1..m_k` and an optional base graph on `k` vertices
/// (absent means `K_k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    pub parts: Vec<usize>,
    pub base: Option<Graph>,
}

impl PartitionSpec {
    pub fn new(parts: Vec<usize>, base: Option<Graph>) -> Result<Self, ConstructionError> {
        let spec = PartitionSpec { parts, base };
        spec.validate()?;
        Ok(spec)
    }

    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn base_graph(&self) -> Graph {
        match &self.base {
            Some(g) => g.clone(),
            None => complete_graph_unchecked(self.parts.len()),
        }
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        const NAME: &str = "partition";
        if self.parts.is_empty() || self.parts.contains(&0) {
            return Err(invalid(NAME, "needs at least one part, all positive"));
        }
        if let Some(base) = &self.base {
            if base.order() != self.parts.len() {
                return Err(invalid(NAME, "base order must equal the number of parts"));
            }
            if !base.is_connected() {
                return Err(ConstructionError::DisconnectedBase);
            }
        }
        if self.order() > MAX_ORDER {
            return Err(GraphError::UnsupportedOrder { order: self.order(), max: MAX_ORDER }.into());
        }
        Ok(())
    }

    fn class_of(&self) -> Vec<usize> {
        self.parts.iter().enumerate().flat_map(|(c, &p)| core::iter::repeat_n(c, p)).collect()
    }
}

/// Blow-up of the base graph: vertex `i` becomes an independent set of
/// size `m_i`, with complete joins along base edges.
pub fn multipartitioned_expand(spec: &PartitionSpec) -> Result<Graph, ConstructionError> {
    spec.validate()?;
    Ok(expand_unchecked(&spec.base_graph(), &spec.parts))
}

/// `m - k` zeros plus the spectrum of `M^{1/2} A M^{1/2}`.
pub fn multipartitioned_spectrum(spec: &PartitionSpec) -> Result<Spectrum, ConstructionError> {
    spec.validate()?;
    let base = spec.base_graph();
    let k = spec.parts.len();
    let reduced: Vec<f64> = (0..k * k)
        .map(|idx| {
            let (i, j) = (idx / k, idx % k);
            if base.has_edge(i, j) {
                libm::sqrt((spec.parts[i] * spec.parts[j]) as f64)
            } else {
                0.0
            }
        })
        .collect();
    let s = eigenvalues_symmetric(&reduced, k, DEFAULT_ZERO_TOL).expect("reduced matrix is symmetric");
    let mut values = s.eigenvalues().to_vec();
    values.extend(core::iter::repeat_n(0.0, spec.order() - k));
    Ok(Spectrum::new(values, DEFAULT_ZERO_TOL))
}

/// The `k x k` matrix `B` with `A^+ = (beta_ij E_{m_i x m_j})`.
///
/// `B = M^{-1/2} (M^{1/2} A M^{1/2})^+ M^{-1/2}` equals `(A M)^# M^{-1}`,
/// where `#` is the group inverse; the latter stays rational.
pub fn multipartitioned_reduced_pinv(spec: &PartitionSpec) -> Result<RationalMatrix, ConstructionError> {
    spec.validate()?;
    let k = spec.parts.len();
    let base = spec.base_graph();
    let t = RationalMatrix::from_fn(k, k, |i, j| {
        if base.has_edge(i, j) {
            int(spec.parts[j] as i64)
        } else {
            BigRational::zero()
        }
    });
    // A M is similar to a symmetric matrix, so its group inverse exists
    let t_sharp = group_inverse(&t).expect("A M is diagonalisable");
    let m_inv = RationalMatrix::from_fn(k, k, |i, j| if i == j { ratio(1, spec.parts[i] as i64) } else { BigRational::zero() });
    Ok(&t_sharp * &m_inv)
}

/// Full `m x m` pseudoinverse of the blow-up.
pub fn pinv_multipartitioned(spec: &PartitionSpec) -> Result<RationalMatrix, ConstructionError> {
    let b = multipartitioned_reduced_pinv(spec)?;
    let class = spec.class_of();
    let m = class.len();
    Ok(RationalMatrix::from_fn(m, m, |u, v| b.get(class[u], class[v]).clone()))
}

/// Signability class of the reduced pseudoinverse, which transfers to the
/// blow-up.
pub fn multipartitioned_reduced_classification(spec: &PartitionSpec) -> Result<Classification, ConstructionError> {
    Ok(classify_matrix(&multipartitioned_reduced_pinv(spec)?))
}

/// One pendant vertex attached to every vertex of `base`; block adjacency
/// `[[0, I], [I, B]]` with pendants first.
pub fn corona(base: &Graph) -> Result<Graph, ConstructionError> {
    let k = base.order();
    if 2 * k > MAX_ORDER {
        return Err(GraphError::UnsupportedOrder { order: 2 * k, max: MAX_ORDER }.into());
    }
    let mut g = Graph::empty(2 * k)?;
    for i in 0..k {
        g.add_edge(i, k + i);
    }
    for (a, b) in base.edges() {
        g.add_edge(k + a, k + b);
    }
    Ok(g)
}

/// Integer inverse `[[-B, I], [I, 0]]` of the corona adjacency.
pub fn corona_inverse_closed_form(base: &Graph) -> IntMatrix {
    let k = base.order();
    IntMatrix::from_fn(2 * k, 2 * k, |i, j| match (i < k, j < k) {
        (true, true) => -(base.has_edge(i, j) as i64),
        (true, false) => (j - k == i) as i64,
        (false, true) => (i - k == j) as i64,
        (false, false) => 0,
    })
}

/// Power index of a corona from the base spectrum: `sum sqrt(mu^2 + 4)`.
pub fn corona_power_index(base_spectrum: &[f64]) -> f64 {
    base_spectrum.iter().map(|mu| libm::sqrt(mu * mu + 4.0)).sum()
}
