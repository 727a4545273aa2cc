//! Per-graph survey records, census counts and descriptive statistics of
//! spectral indices over signable graphs.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::graph::{canonical_form, encode_graph6, Graph, CANON_MAX_ORDER};
use crate::linalg::det_integer;
use crate::signability::{classify_with_pinv, Classification, SignabilityKind};
use crate::spectral::{eigenvalues_symmetric, spectral_indices, SpectralIndices, DEFAULT_ZERO_TOL};
use crate::stats::{DescriptiveStats, StatsAccumulator, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurveyError {
    Disconnected,
    /// Orders above the graph6 limit cannot be recorded.
    Unencodable,
}

impl fmt::Display for SurveyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurveyError::Disconnected => f.write_str("graph is not connected"),
            SurveyError::Unencodable => f.write_str("graph is too large for graph6"),
        }
    }
}

impl core::error::Error for SurveyError {}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyRecord {
    pub graph6: Vec<u8>,
    /// Canonical graph6 (the input encoding above the canonical-form limit).
    pub canonical: Vec<u8>,
    pub m: usize,
    pub det: BigInt,
    pub classification: Classification,
    /// Absent only for `K_1`, whose spectrum has no signed part.
    pub indices: Option<SpectralIndices>,
}

impl SurveyRecord {
    pub fn is_unit_det(&self) -> bool {
        self.det.abs().is_one()
    }

    pub fn witness(&self) -> Witness {
        Witness { graph6: self.canonical.clone(), class: self.classification.kind }
    }
}

/// Classifies `g` exactly and computes its spectral indices numerically.
pub fn build_record(g: &Graph) -> Result<SurveyRecord, SurveyError> {
    build_record_with_tol(g, DEFAULT_ZERO_TOL)
}

/// As [`build_record`], with a custom relative zero threshold for the
/// numeric spectrum.
pub fn build_record_with_tol(g: &Graph, zero_tol: f64) -> Result<SurveyRecord, SurveyError> {
    if !g.is_connected() {
        return Err(SurveyError::Disconnected);
    }
    let graph6 = encode_graph6(g).map_err(|_| SurveyError::Unencodable)?;
    let canonical = if g.order() <= CANON_MAX_ORDER {
        canonical_form(g).expect("order checked")
    } else {
        graph6.clone()
    };
    let det = det_integer(&g.adjacency_int()).expect("adjacency is square");
    let (_, classification) = classify_with_pinv(g);
    let spectrum = eigenvalues_symmetric(&g.adjacency_f64(), g.order(), zero_tol).expect("adjacency is symmetric");
    let indices = spectral_indices(&spectrum).ok();
    Ok(SurveyRecord { graph6, canonical, m: g.order(), det, classification, indices })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexSelector {
    LambdaMax,
    LambdaMin,
    Gap,
    Ind,
    Pow,
}

impl IndexSelector {
    pub const ALL: [IndexSelector; 5] =
        [IndexSelector::LambdaMax, IndexSelector::LambdaMin, IndexSelector::Gap, IndexSelector::Ind, IndexSelector::Pow];

    pub fn value(self, ix: &SpectralIndices) -> f64 {
        match self {
            IndexSelector::LambdaMax => ix.lambda_max,
            IndexSelector::LambdaMin => ix.lambda_min,
            IndexSelector::Gap => ix.gap,
            IndexSelector::Ind => ix.ind,
            IndexSelector::Pow => ix.pow,
        }
    }

    /// Machine-readable key.
    pub fn key(self) -> &'static str {
        match self {
            IndexSelector::LambdaMax => "lambda_max",
            IndexSelector::LambdaMin => "lambda_min",
            IndexSelector::Gap => "gap",
            IndexSelector::Ind => "ind",
            IndexSelector::Pow => "pow",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            IndexSelector::LambdaMax => "λmax",
            IndexSelector::LambdaMin => "λmin",
            IndexSelector::Gap => "Λgap",
            IndexSelector::Ind => "Λind",
            IndexSelector::Pow => "Λpow",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        IndexSelector::ALL.into_iter().find(|sel| sel.key() == s)
    }
}

/// Signability split of some population of graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignCounts {
    pub pos_only: u64,
    pub neg_only: u64,
    pub both: u64,
}

impl SignCounts {
    pub fn signable(&self) -> u64 {
        self.pos_only + self.neg_only + self.both
    }

    fn push(&mut self, kind: SignabilityKind) {
        match kind {
            SignabilityKind::PositiveOnly => self.pos_only += 1,
            SignabilityKind::NegativeOnly => self.neg_only += 1,
            SignabilityKind::Both => self.both += 1,
            SignabilityKind::NotSignable => {}
        }
    }

    fn merge(&mut self, o: &SignCounts) {
        self.pos_only += o.pos_only;
        self.neg_only += o.neg_only;
        self.both += o.both;
    }
}

/// Census counts for one order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrderCounts {
    pub m: usize,
    pub all: u64,
    pub det_nonzero: u64,
    pub det_unit: u64,
    /// All signable graphs.
    pub signable: SignCounts,
    /// Signable graphs with `det = ±1`.
    pub unit_signable: SignCounts,
}

impl OrderCounts {
    pub fn new(m: usize) -> Self {
        OrderCounts { m, ..Default::default() }
    }

    pub fn push(&mut self, r: &SurveyRecord) {
        self.all += 1;
        if !r.det.is_zero() {
            self.det_nonzero += 1;
        }
        self.signable.push(r.classification.kind);
        if r.is_unit_det() {
            self.det_unit += 1;
            self.unit_signable.push(r.classification.kind);
        }
    }

    pub fn merge(&mut self, o: &OrderCounts) {
        self.all += o.all;
        self.det_nonzero += o.det_nonzero;
        self.det_unit += o.det_unit;
        self.signable.merge(&o.signable);
        self.unit_signable.merge(&o.unit_signable);
    }
}

/// Statistics of the five indices over one population.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IndexStats {
    acc: [StatsAccumulator; 5],
}

impl IndexStats {
    pub fn push(&mut self, ix: &SpectralIndices, witness: &Witness, moment_decimals: Option<u32>) {
        for (acc, sel) in self.acc.iter_mut().zip(IndexSelector::ALL) {
            let v = sel.value(ix);
            let mv = moment_decimals.map_or(v, |d| round_decimals(v, d));
            acc.push_sample(mv, v, witness.clone());
        }
    }

    pub fn merge(&mut self, o: &IndexStats) {
        for (a, b) in self.acc.iter_mut().zip(&o.acc) {
            a.merge(b);
        }
    }

    pub fn accumulator(&self, sel: IndexSelector) -> &StatsAccumulator {
        &self.acc[sel as usize]
    }

    pub fn descriptive(&self, sel: IndexSelector) -> Option<DescriptiveStats> {
        self.accumulator(sel).finish()
    }
}

/// Everything gathered for one order: counts and index statistics over
/// signable graphs and over signable graphs with `det = ±1`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurveyAccumulator {
    pub counts: OrderCounts,
    pub signable: IndexStats,
    pub unit_signable: IndexStats,
    /// When set, moments are taken of index values rounded to this many
    /// decimals. Extremes always keep the unrounded values.
    pub moment_decimals: Option<u32>,
}

/// Rounds half away from zero to `decimals` places.
pub fn round_decimals(x: f64, decimals: u32) -> f64 {
    let scale = libm::pow(10.0, decimals as f64);
    libm::round(x * scale) / scale
}

impl SurveyAccumulator {
    pub fn new(m: usize) -> Self {
        SurveyAccumulator { counts: OrderCounts::new(m), ..Default::default() }
    }

    pub fn with_moment_decimals(m: usize, decimals: Option<u32>) -> Self {
        SurveyAccumulator { moment_decimals: decimals, ..Self::new(m) }
    }

    pub fn push(&mut self, r: &SurveyRecord) {
        self.counts.push(r);
        if !r.classification.kind.is_signable() {
            return;
        }
        if let Some(ix) = &r.indices {
            let w = r.witness();
            self.signable.push(ix, &w, self.moment_decimals);
            if r.is_unit_det() {
                self.unit_signable.push(ix, &w, self.moment_decimals);
            }
        }
    }

    pub fn merge(&mut self, o: &SurveyAccumulator) {
        self.counts.merge(&o.counts);
        self.signable.merge(&o.signable);
        self.unit_signable.merge(&o.unit_signable);
    }
}

/// Quadratic-exponential fit `261080 * 10^(1.4 (m-9) + 0.09 (m-9)^2)` of the
/// number of connected graphs of order `m`.
pub fn approx_graph_count(m: usize) -> f64 {
    let d = m as f64 - 9.0;
    261080.0 * libm::pow(10.0, 1.4 * d + 0.09 * d * d)
}

/// Hardy-Ramanujan asymptotic `exp(pi sqrt(2m/3)) / (4 m sqrt 3)` for the
/// number of partitions of `m`.
pub fn approx_partition_count(m: usize) -> f64 {
    let mf = m as f64;
    libm::exp(core::f64::consts::PI * libm::sqrt(2.0 * mf / 3.0)) / (4.0 * mf * libm::sqrt(3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_connected_graphs;

    fn census(m: usize) -> SurveyAccumulator {
        let mut acc = SurveyAccumulator::new(m);
        for g in enumerate_connected_graphs(m).unwrap() {
            acc.push(&build_record(&g).unwrap());
        }
        acc
    }

    #[test]
    fn small_census_counts() {
        let c = census(4).counts;
        assert_eq!((c.all, c.det_nonzero, c.det_unit), (6, 3, 2));
        assert_eq!((c.signable.pos_only, c.signable.neg_only, c.signable.both), (1, 0, 3));
        assert_eq!((c.unit_signable.pos_only, c.unit_signable.neg_only, c.unit_signable.both), (1, 0, 1));
        let c = census(5).counts;
        assert_eq!((c.signable.pos_only, c.signable.neg_only, c.signable.both), (3, 1, 4));
        assert_eq!(c.det_unit, 0);
    }

    #[test]
    fn order_three_statistics() {
        let acc = census(3);
        let s = acc.signable.descriptive(IndexSelector::LambdaMax).unwrap();
        assert_eq!(s.count, 1);
        assert!((s.mean - 2f64.sqrt()).abs() < 1e-12);
        assert!(s.std.is_none());
        assert!(acc.unit_signable.descriptive(IndexSelector::LambdaMax).is_none());
    }

    #[test]
    fn disconnected_graphs_are_rejected() {
        let g = Graph::empty(2).unwrap();
        assert_eq!(build_record(&g), Err(SurveyError::Disconnected));
    }

    #[test]
    fn record_fields() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = build_record(&p3).unwrap();
        assert_eq!(r.graph6, b"Bg");
        assert_eq!(r.det, BigInt::zero());
        assert_eq!(r.classification.kind, SignabilityKind::Both);
        let ix = r.indices.unwrap();
        assert!((ix.pow - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        let k1 = build_record(&Graph::empty(1).unwrap()).unwrap();
        assert!(k1.indices.is_none());
    }

    #[test]
    fn approximation_formulas() {
        assert!((approx_graph_count(9) - 261080.0).abs() < 1e-6);
        assert!((approx_graph_count(10) / 8.07e6 - 1.0).abs() < 0.01);
        assert!((approx_graph_count(8) / 1.28e4 - 1.0).abs() < 0.01);
        assert!((approx_partition_count(10) - 48.1).abs() < 0.05);
        assert!((approx_partition_count(1) - 1.87).abs() < 0.01);
    }

    #[test]
    fn selector_keys_round_trip() {
        for sel in IndexSelector::ALL {
            assert_eq!(IndexSelector::parse(sel.key()), Some(sel));
        }
        assert_eq!(IndexSelector::parse("lambda"), None);
    }
}
