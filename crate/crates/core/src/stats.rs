//! Mergeable moment accumulators with extremal witnesses.
//!
//! Power sums up to the fourth are kept in double-double arithmetic so that
//! central moments recovered from raw sums stay accurate for millions of
//! samples.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use crate::signability::SignabilityKind;

/// Two values closer than this count as the same extreme.
pub const EXTREME_TIE_TOL: f64 = 1e-9;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn div_f64(self, d: f64) -> Self {
        let q = self.hi / d;
        let (p, e) = two_prod(q, d);
        let r = (self.hi - p - e + self.lo) / d;
        let (hi, lo) = quick_two_sum(q, r);
        DoubleDouble { hi, lo }
    }
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;
    fn add(self, o: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    fn neg(self) -> DoubleDouble {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;
    fn sub(self, o: DoubleDouble) -> DoubleDouble {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;
    fn mul(self, o: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

/// Graph attaining an extreme, identified by its canonical graph6.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub graph6: Vec<u8>,
    pub class: SignabilityKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extreme {
    pub value: f64,
    pub witness: Witness,
    /// Classes of every graph seen within tolerance of the extreme, as a
    /// bitmask over [`kind_bit`].
    pub tie_classes: u8,
}

pub fn kind_bit(kind: SignabilityKind) -> u8 {
    1 << kind as u8
}

impl Extreme {
    pub fn new(value: f64, witness: Witness) -> Self {
        let tie_classes = kind_bit(witness.class);
        Extreme { value, witness, tie_classes }
    }

    /// Whether some graph attaining the extreme has class `kind`.
    pub fn attained_by(&self, kind: SignabilityKind) -> bool {
        self.tie_classes & kind_bit(kind) != 0
    }
}

/// Folds `cand` into the running extreme `slot` in direction `dir`
/// (`Greater` for maxima). Ties within tolerance keep the smaller graph6
/// and pool their classes.
fn fold_extreme(slot: &mut Option<Extreme>, cand: &Extreme, dir: Ordering) {
    let Some(cur) = slot else {
        *slot = Some(cand.clone());
        return;
    };
    if libm::fabs(cand.value - cur.value) <= EXTREME_TIE_TOL {
        let classes = cur.tie_classes | cand.tie_classes;
        if cand.witness.graph6 < cur.witness.graph6 {
            *cur = cand.clone();
        }
        cur.tie_classes = classes;
    } else if cand.value.partial_cmp(&cur.value) == Some(dir) {
        *cur = cand.clone();
    }
}

/// Count, power sums `Σx..Σx⁴`, and witnessed minimum and maximum.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StatsAccumulator {
    count: u64,
    sums: [DoubleDouble; 4],
    min: Option<Extreme>,
    max: Option<Extreme>,
}

/// Descriptive statistics of one sample. Standard deviation uses `N - 1`;
/// skewness and (non-excess) kurtosis use population central moments.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptiveStats {
    pub count: u64,
    pub mean: f64,
    pub std: Option<f64>,
    pub skew: Option<f64>,
    pub kurt: Option<f64>,
    pub min: Extreme,
    pub max: Extreme,
}

impl StatsAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn push(&mut self, value: f64, witness: Witness) {
        self.push_sample(value, value, witness);
    }

    /// Adds `moment_value` to the power sums and `extreme_value` to the
    /// extremes; the two differ when moments are taken of rounded values.
    pub fn push_sample(&mut self, moment_value: f64, extreme_value: f64, witness: Witness) {
        let x = DoubleDouble::from_f64(moment_value);
        let x2 = x * x;
        let x3 = x2 * x;
        let x4 = x2 * x2;
        for (s, p) in self.sums.iter_mut().zip([x, x2, x3, x4]) {
            *s = *s + p;
        }
        self.count += 1;
        let e = Extreme::new(extreme_value, witness);
        fold_extreme(&mut self.max, &e, Ordering::Greater);
        fold_extreme(&mut self.min, &e, Ordering::Less);
    }

    pub fn merge(&mut self, other: &StatsAccumulator) {
        self.count += other.count;
        for (s, o) in self.sums.iter_mut().zip(other.sums) {
            *s = *s + o;
        }
        if let Some(e) = &other.max {
            fold_extreme(&mut self.max, e, Ordering::Greater);
        }
        if let Some(e) = &other.min {
            fold_extreme(&mut self.min, e, Ordering::Less);
        }
    }

    /// `None` for an empty sample.
    pub fn finish(&self) -> Option<DescriptiveStats> {
        let (min, max) = (self.min.clone()?, self.max.clone()?);
        let n = self.count as f64;
        let [s1, s2, s3, s4] = self.sums.map(|s| s.div_f64(n));
        let mean = s1;
        let mean2 = mean * mean;
        // population central moments from raw moments
        let m2 = s2 - mean2;
        let m3 = s3 - DoubleDouble::from_f64(3.0) * mean * s2 + DoubleDouble::from_f64(2.0) * mean2 * mean;
        let m4 = s4 - DoubleDouble::from_f64(4.0) * mean * s3 + DoubleDouble::from_f64(6.0) * mean2 * s2
            - DoubleDouble::from_f64(3.0) * mean2 * mean2;
        let (m2, m3, m4) = (m2.to_f64().max(0.0), m3.to_f64(), m4.to_f64());

        let spread = self.count > 1 && m2 > 0.0;
        let std = (self.count > 1).then(|| libm::sqrt(m2 * n / (n - 1.0)));
        let skew = spread.then(|| m3 / (m2 * libm::sqrt(m2)));
        let kurt = spread.then(|| m4 / (m2 * m2));
        Some(DescriptiveStats { count: self.count, mean: mean.to_f64(), std, skew, kurt, min, max })
    }
}
