use std::fs::File;
use std::io::{self, BufReader, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use specgraph::fixtures::{self, data_dir, MANIFEST};
use specgraph::g6io::parse_line;
use specgraph::pipeline::{survey_graphs, survey_reader, SurveyOptions, SurveyTables};
use specgraph::spec::GraphSpec;
use specgraph::tables::{render, Format};
use specgraph_core::graph::encode_graph6;
use specgraph_core::linalg::{det_integer, mp_pseudoinverse_exact};
use specgraph_core::signability::classify_with_pinv;
use specgraph_core::spectral::{eigenvalues_symmetric, spectral_indices, DEFAULT_ZERO_TOL};
use specgraph_core::{Graph, RationalMatrix, SignatureVector, SpectralIndices};

const EXIT_NOT_SIGNABLE: u8 = 3;
const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 1;

#[derive(Parser)]
#[command(name = "specgraph", version, about = "Pseudoinverse signability of graphs and census surveys")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one graph given as graph6 or as a family spec.
    Classify(ClassifyArgs),
    /// Census tables over a graph6 file or the built-in fixtures.
    Survey(SurveyArgs),
    /// Build a family member and print its graph6.
    Construct(ConstructArgs),
    /// Write the census of one order to the data directory.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

impl From<TableFormat> for Format {
    fn from(f: TableFormat) -> Format {
        match f {
            TableFormat::Md => Format::Markdown,
            TableFormat::Csv => Format::Csv,
            TableFormat::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct Precision {
    /// Print reals at full precision instead of 4 decimals.
    #[arg(long)]
    full_precision: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Graph in graph6 format.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    graph6: Option<String>,
    /// Family spec such as `cycle:5`.
    #[arg(long)]
    family: Option<String>,
    /// Base graph spec for `multipart` and `corona`.
    #[arg(long, requires = "family")]
    base: Option<String>,
    /// Also print the exact pseudoinverse.
    #[arg(long)]
    pinv: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL, value_parser = parse_zero_tol)]
    zero_tol: f64,
    #[command(flatten)]
    precision: Precision,
}

#[derive(Args)]
struct SurveyArgs {
    /// Graph6 file; without it the fixtures for `--order` are used.
    #[arg(required_unless_present = "order")]
    file: Option<PathBuf>,
    /// Order `M` or inclusive range `A..B`.
    #[arg(long, value_parser = parse_orders)]
    order: Option<RangeInclusive<usize>>,
    #[arg(long, value_enum, default_value = "md")]
    format: TableFormat,
    #[arg(long, value_parser = parse_workers)]
    workers: Option<usize>,
    /// Take moments of indices rounded to this many decimals.
    #[arg(long)]
    moment_decimals: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_ZERO_TOL, value_parser = parse_zero_tol)]
    zero_tol: f64,
    #[command(flatten)]
    precision: Precision,
}

#[derive(Args)]
struct ConstructArgs {
    /// Family name, optionally with `:params`.
    family: String,
    /// Comma-separated parameters.
    params: Option<String>,
    #[arg(long)]
    base: Option<String>,
    /// Print the exact pseudoinverse as JSON rationals.
    #[arg(long)]
    pinv: bool,
    /// Print the closed-form pseudoinverse and compare it with the exact one.
    #[arg(long)]
    pinv_closed_form: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    order: usize,
    /// Output directory (default `$SPECGRAPH_DATA_DIR` or `data`).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_zero_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v < 1e-3 {
        Ok(v)
    } else {
        Err("zero tolerance must lie in (0, 1e-3)".into())
    }
}

fn parse_workers(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err("worker count must be a positive integer".into()),
    }
}

fn parse_orders(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid order `{t}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let m = num(s)?;
            (m, m)
        }
    };
    if a == 0 || a > b {
        return Err(format!("invalid order range `{s}`"));
    }
    Ok(a..=b)
}

fn real(x: f64, full: bool) -> String {
    if full {
        format!("{x}")
    } else {
        format!("{x:.4}")
    }
}

fn matrix_json(m: &RationalMatrix) -> Value {
    let rows: Vec<Value> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().into()).collect();
    Value::Array(rows)
}

fn matrix_text(m: &RationalMatrix) -> String {
    let cells: Vec<Vec<String>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells.iter().map(|row| row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" ") + "\n").collect()
}

fn indices_json(ix: &SpectralIndices) -> Value {
    json!({
        "lambda_max": ix.lambda_max,
        "lambda_min": ix.lambda_min,
        "lambda_plus": ix.lambda_plus,
        "lambda_minus": ix.lambda_minus,
        "gap": ix.gap,
        "ind": ix.ind,
        "pow": ix.pow,
    })
}

fn witness_json(w: &Option<SignatureVector>) -> Value {
    w.as_ref().map_or(Value::Null, |d| d.entries().to_vec().into())
}

fn input_graph(args: &ClassifyArgs) -> Result<Graph> {
    if let Some(spec) = &args.family {
        return Ok(GraphSpec::parse(spec, None, args.base.as_deref())?.graph()?);
    }
    let text = args.graph6.as_deref().unwrap_or_default();
    match parse_line(text.as_bytes()) {
        Some(parsed) => Ok(parsed?),
        None => bail!("empty graph6 input"),
    }
}

fn cmd_classify(args: &ClassifyArgs) -> Result<ExitCode> {
    let g = input_graph(args)?;
    let full = args.precision.full_precision;
    let g6 = String::from_utf8(encode_graph6(&g)?).expect("graph6 is ASCII");
    let det = det_integer(&g.adjacency_int())?;
    let (pinv, c) = classify_with_pinv(&g);
    let spectrum = eigenvalues_symmetric(&g.adjacency_f64(), g.order(), args.zero_tol)?;
    let indices = spectral_indices(&spectrum).ok();

    let mut out = io::stdout().lock();
    match args.format {
        TextFormat::Json => {
            let mut v = json!({
                "graph6": g6,
                "order": g.order(),
                "connected": g.is_connected(),
                "det": det.to_string(),
                "class": c.kind.name(),
                "tag": c.kind.tag(),
                "positive_witness": witness_json(&c.pos_witness),
                "negative_witness": witness_json(&c.neg_witness),
                "indices": indices.as_ref().map_or(Value::Null, indices_json),
            });
            if args.pinv {
                v["pinv"] = matrix_json(&pinv);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        TextFormat::Text => {
            writeln!(out, "{}", c.kind.name())?;
            writeln!(out, "graph6: {g6}")?;
            writeln!(out, "order: {}", g.order())?;
            if !g.is_connected() {
                writeln!(out, "connected: no")?;
            }
            writeln!(out, "det: {det}")?;
            for (label, w) in [("positive witness", &c.pos_witness), ("negative witness", &c.neg_witness)] {
                match w {
                    Some(d) => writeln!(out, "{label}: {d}")?,
                    None => writeln!(out, "{label}: none")?,
                }
            }
            if let Some(ix) = &indices {
                let fields = [
                    ("lambda_max", ix.lambda_max),
                    ("lambda_min", ix.lambda_min),
                    ("lambda_plus", ix.lambda_plus),
                    ("lambda_minus", ix.lambda_minus),
                    ("gap", ix.gap),
                    ("ind", ix.ind),
                    ("pow", ix.pow),
                ];
                for (k, v) in fields {
                    writeln!(out, "{k}: {}", real(v, full))?;
                }
            }
            if args.pinv {
                writeln!(out, "pinv:")?;
                write!(out, "{}", matrix_text(&pinv))?;
            }
        }
    }
    Ok(if c.kind.is_signable() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_NOT_SIGNABLE) })
}

fn verify_if_listed(path: &Path) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    if fixtures::read_manifest(dir)?.contains_key(&name) {
        fixtures::verify_file(&dir.join(&name))?;
    }
    Ok(())
}

fn cmd_survey(args: &SurveyArgs) -> Result<ExitCode> {
    let opts = SurveyOptions {
        workers: args.workers.unwrap_or_else(|| SurveyOptions::default().workers),
        moment_decimals: args.moment_decimals,
        orders: args.order.clone(),
        zero_tol: args.zero_tol,
    };
    let mut exit = ExitCode::SUCCESS;
    let tables = match &args.file {
        Some(path) => {
            verify_if_listed(path)?;
            let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            let (tables, diag) = survey_reader(BufReader::new(file), &opts)?;
            for w in diag.warnings() {
                eprintln!("warning: {w}");
            }
            if !diag.parse_errors.is_empty() {
                exit = ExitCode::from(EXIT_USAGE);
            }
            tables
        }
        None => {
            let dir = data_dir();
            let mut tables = SurveyTables::new(opts.moment_decimals);
            for m in args.order.clone().expect("clap requires an order without a file") {
                let graphs = fixtures::load_order(&dir, m)?;
                let (t, _) = survey_graphs(&graphs, &opts)?;
                tables.merge(&t);
            }
            tables
        }
    };
    io::stdout().lock().write_all(render(&tables, args.format.into(), args.precision.full_precision).as_bytes())?;
    Ok(exit)
}

fn cmd_construct(args: &ConstructArgs) -> Result<ExitCode> {
    let spec = GraphSpec::parse(&args.family, args.params.as_deref(), args.base.as_deref())?;
    let g = spec.graph()?;
    let mut out = io::stdout().lock();
    writeln!(out, "{}", String::from_utf8(encode_graph6(&g)?).expect("graph6 is ASCII"))?;
    if !args.pinv && !args.pinv_closed_form {
        return Ok(ExitCode::SUCCESS);
    }
    let exact = mp_pseudoinverse_exact(&g.adjacency_rational())?;
    if args.pinv {
        writeln!(out, "pinv: {}", matrix_json(&exact))?;
    }
    if args.pinv_closed_form {
        let closed = spec.closed_form_pinv()?;
        writeln!(out, "closed_form: {}", matrix_json(&closed))?;
        if closed == exact {
            writeln!(out, "match: exact")?;
        } else {
            writeln!(out, "match: differs")?;
            return Ok(ExitCode::from(EXIT_MISMATCH));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(args: &GenerateArgs) -> Result<ExitCode> {
    let dir = args.out.clone().unwrap_or_else(data_dir);
    let (path, n) = fixtures::write_fixture(&dir, args.order)?;
    println!("{n} graphs written to {} ({} updated)", path.display(), dir.join(MANIFEST).display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Survey(a) => cmd_survey(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Generate(a) => cmd_generate(a),
    };
    result.unwrap_or_else(|e| {
        // a closed downstream pipe is not an error
        if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) {
            return ExitCode::SUCCESS;
        }
        eprintln!("error: {e:#}");
        ExitCode::from(EXIT_USAGE)
    })
}
