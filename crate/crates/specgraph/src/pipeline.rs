//! Parallel survey over graph streams.
//!
//! Input is split into fixed-size chunks, each chunk is folded into its own
//! accumulator on the worker pool, and the partial results are merged in
//! input order. Chunk boundaries never depend on the worker count, so the
//! floating-point sums (and therefore the output bytes) do not either.

use std::collections::BTreeMap;
use std::io::{self, BufRead};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use specgraph_core::spectral::DEFAULT_ZERO_TOL;
use specgraph_core::survey::{build_record_with_tol, SurveyAccumulator, SurveyError, SurveyRecord};
use specgraph_core::Graph;

use crate::g6io::{read_batch, LineError, Parsed};

/// Graphs handled by one task.
const CHUNK: usize = 512;
/// Lines read from a stream before dispatching to the pool.
const BATCH: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyOptions {
    pub workers: usize,
    /// Take moments of indices rounded to this many decimals.
    pub moment_decimals: Option<u32>,
    /// Only orders in this range are surveyed; others count as mismatches.
    pub orders: Option<RangeInclusive<usize>>,
    pub zero_tol: f64,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            moment_decimals: None,
            orders: None,
            zero_tol: DEFAULT_ZERO_TOL,
        }
    }
}

impl SurveyOptions {
    pub fn validate(&self) -> Result<(), String> {
        if self.workers == 0 {
            return Err("worker count must be at least 1".into());
        }
        if !(self.zero_tol > 0.0 && self.zero_tol < 1e-3) {
            return Err(format!("zero tolerance {} outside (0, 1e-3)", self.zero_tol));
        }
        Ok(())
    }

    fn pool(&self) -> io::Result<rayon::ThreadPool> {
        self.validate().map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
        rayon::ThreadPoolBuilder::new().num_threads(self.workers).build().map_err(io::Error::other)
    }

    fn accepts(&self, m: usize) -> bool {
        self.orders.as_ref().is_none_or(|r| r.contains(&m))
    }
}

/// Problems seen while surveying; none of them stop the run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub lines: u64,
    pub parse_errors: Vec<LineError>,
    /// Line numbers of disconnected graphs.
    pub disconnected: Vec<u64>,
    /// Line numbers of graphs outside the requested orders.
    pub order_mismatch: Vec<u64>,
}

impl Diagnostics {
    pub fn is_clean(&self) -> bool {
        self.parse_errors.is_empty() && self.disconnected.is_empty() && self.order_mismatch.is_empty()
    }

    pub fn merge(&mut self, o: Diagnostics) {
        self.lines += o.lines;
        self.parse_errors.extend(o.parse_errors);
        self.disconnected.extend(o.disconnected);
        self.order_mismatch.extend(o.order_mismatch);
    }

    /// One warning per rejected line.
    pub fn warnings(&self) -> Vec<String> {
        let mut out: Vec<(u64, String)> = self.parse_errors.iter().map(|e| (e.line, e.to_string())).collect();
        out.extend(self.disconnected.iter().map(|l| (*l, format!("line {l}: graph is not connected"))));
        out.extend(self.order_mismatch.iter().map(|l| (*l, format!("line {l}: order not requested"))));
        out.sort();
        out.into_iter().map(|(_, s)| s).collect()
    }
}

/// Per-order survey results.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SurveyTables {
    pub orders: BTreeMap<usize, SurveyAccumulator>,
    pub moment_decimals: Option<u32>,
}

impl SurveyTables {
    pub fn new(moment_decimals: Option<u32>) -> Self {
        SurveyTables { orders: BTreeMap::new(), moment_decimals }
    }

    pub fn get(&self, m: usize) -> Option<&SurveyAccumulator> {
        self.orders.get(&m)
    }

    pub fn push(&mut self, r: &SurveyRecord) {
        let d = self.moment_decimals;
        self.orders.entry(r.m).or_insert_with(|| SurveyAccumulator::with_moment_decimals(r.m, d)).push(r);
    }

    pub fn merge(&mut self, o: &SurveyTables) {
        for (m, acc) in &o.orders {
            let d = self.moment_decimals;
            self.orders.entry(*m).or_insert_with(|| SurveyAccumulator::with_moment_decimals(*m, d)).merge(acc);
        }
    }
}

enum Outcome {
    Record(Box<SurveyRecord>),
    Disconnected,
    Mismatch,
}

fn process(g: &Graph, opts: &SurveyOptions) -> Outcome {
    if !opts.accepts(g.order()) {
        return Outcome::Mismatch;
    }
    match build_record_with_tol(g, opts.zero_tol) {
        Ok(r) => Outcome::Record(Box::new(r)),
        Err(SurveyError::Disconnected) => Outcome::Disconnected,
        // graph6 input never exceeds the encodable order
        Err(SurveyError::Unencodable) => unreachable!("parsed graphs are encodable"),
    }
}

fn fold_chunk(items: &[(u64, &Graph)], opts: &SurveyOptions) -> (SurveyTables, Diagnostics) {
    let mut tables = SurveyTables::new(opts.moment_decimals);
    let mut diag = Diagnostics::default();
    for (line, g) in items {
        match process(g, opts) {
            Outcome::Record(r) => tables.push(&r),
            Outcome::Disconnected => diag.disconnected.push(*line),
            Outcome::Mismatch => diag.order_mismatch.push(*line),
        }
    }
    (tables, diag)
}

fn survey_items(
    pool: &rayon::ThreadPool,
    items: &[(u64, &Graph)],
    opts: &SurveyOptions,
    tables: &mut SurveyTables,
    diag: &mut Diagnostics,
) {
    let parts: Vec<_> = pool.install(|| items.par_chunks(CHUNK).map(|c| fold_chunk(c, opts)).collect());
    for (t, d) in parts {
        tables.merge(&t);
        diag.merge(d);
    }
}

/// Surveys in-memory graphs. Line numbers in the diagnostics are 1-based
/// positions in `graphs`.
pub fn survey_graphs(graphs: &[Graph], opts: &SurveyOptions) -> io::Result<(SurveyTables, Diagnostics)> {
    let pool = opts.pool()?;
    let items: Vec<(u64, &Graph)> = graphs.iter().enumerate().map(|(i, g)| (i as u64 + 1, g)).collect();
    let mut tables = SurveyTables::new(opts.moment_decimals);
    let mut diag = Diagnostics { lines: graphs.len() as u64, ..Default::default() };
    survey_items(&pool, &items, opts, &mut tables, &mut diag);
    Ok((tables, diag))
}

fn split_batch(batch: Vec<Parsed>, diag: &mut Diagnostics) -> Vec<(u64, Graph)> {
    let mut graphs = Vec::with_capacity(batch.len());
    for (line, parsed) in batch {
        match parsed {
            Ok(g) => graphs.push((line, g)),
            Err(error) => diag.parse_errors.push(LineError { line, error }),
        }
    }
    graphs
}

/// Surveys a graph6 stream in bounded batches. Unparseable lines are
/// reported and skipped.
pub fn survey_reader<R: BufRead>(mut reader: R, opts: &SurveyOptions) -> io::Result<(SurveyTables, Diagnostics)> {
    let pool = opts.pool()?;
    let mut tables = SurveyTables::new(opts.moment_decimals);
    let mut diag = Diagnostics::default();
    let mut line_no = 0;
    loop {
        let batch = read_batch(&mut reader, &mut line_no, BATCH)?;
        if batch.is_empty() {
            break;
        }
        let graphs = split_batch(batch, &mut diag);
        let items: Vec<(u64, &Graph)> = graphs.iter().map(|(l, g)| (*l, g)).collect();
        survey_items(&pool, &items, opts, &mut tables, &mut diag);
    }
    diag.lines = line_no;
    Ok((tables, diag))
}

/// Classifies every graph of a graph6 stream, handing records to `sink` in
/// input order together with their line numbers.
pub fn classify_stream<R, F>(mut reader: R, opts: &SurveyOptions, mut sink: F) -> io::Result<Diagnostics>
where
    R: BufRead,
    F: FnMut(u64, SurveyRecord),
{
    let pool = opts.pool()?;
    let mut diag = Diagnostics::default();
    let mut line_no = 0;
    loop {
        let batch = read_batch(&mut reader, &mut line_no, BATCH)?;
        if batch.is_empty() {
            break;
        }
        let graphs = split_batch(batch, &mut diag);
        let outcomes: Vec<Outcome> = pool.install(|| graphs.par_iter().map(|(_, g)| process(g, opts)).collect());
        for ((line, _), outcome) in graphs.iter().zip(outcomes) {
            match outcome {
                Outcome::Record(r) => sink(*line, *r),
                Outcome::Disconnected => diag.disconnected.push(*line),
                Outcome::Mismatch => diag.order_mismatch.push(*line),
            }
        }
    }
    diag.lines = line_no;
    Ok(diag)
}
