//! `kconn` command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! together with everything that would be printed, so the binary is a thin
//! wrapper and the commands can be tested in-process.

pub mod edgelist;
mod output;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use kconn::oracle::HARD_LIMIT;
use kconn::realization::{augment_chain, Method, RealizationError, Realized};
use kconn::{
    build_g1, build_g2, internally_disjoint_path_count, is_maximally_non_k_connected, normalize,
    realize_k_connected, theorem1_check, theorem2_check, vertex_connectivity, witness_sequence,
    DegreeSequence, Oracle,
};

pub use output::SCHEMA_VERSION;

/// Process exit status. No other values are ever returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    /// Predicate true, realization found, or audit clean.
    Success = 0,
    /// Predicate false or no realization found.
    Negative = 1,
    /// Bad arguments, unreadable or malformed input.
    InputError = 2,
    /// Audit found discrepancies.
    Discrepancies = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit: Exit,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(exit: Exit, stdout: String) -> Self {
        Outcome {
            exit,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: impl Into<String>) -> Self {
        Outcome {
            exit: Exit::InputError,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }

    fn warn(mut self, line: impl AsRef<str>) -> Self {
        self.stderr.push_str("warning: ");
        self.stderr.push_str(line.as_ref());
        self.stderr.push('\n');
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "kconn",
    version,
    about = "Decide, build and audit k-connected degree sequences"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for audits (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Largest vertex count handed to the exhaustive oracle.
    #[arg(long, global = true, default_value_t = kconn::oracle::DEFAULT_LIMIT)]
    pub oracle_limit: usize,
    /// Output file (realize, audit) or directory (witness).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the k-connected and necessarily-k-connected conditions.
    Check(CheckArgs),
    /// Build a k-connected realization and write it as an edge list.
    Realize(RealizeArgs),
    /// Build the witness sequence and its two realizations.
    Witness(WitnessArgs),
    /// Sweep a small universe and compare predicates with exhaustive truth.
    Audit(AuditArgs),
    /// Report the vertex connectivity of an edge-list file.
    Connectivity(ConnectivityArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Comma-separated degrees, any order.
    #[arg(long)]
    pub seq: String,
    #[arg(long)]
    pub k: usize,
    /// Exit with the oracle's answer instead of the predicate's.
    #[arg(long)]
    pub ground_truth: bool,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    #[arg(long, conflicts_with_all = ["n", "epsilon"])]
    pub seq: Option<String>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, requires = "epsilon")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub epsilon: Option<u64>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Corollary,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    #[arg(long)]
    pub n: usize,
    /// Largest k swept (theorem audits).
    #[arg(long)]
    pub kmax: Option<usize>,
    /// The k audited (corollary).
    #[arg(long)]
    pub k: Option<usize>,
    /// Also audit the corollary without the minimum-degree restriction.
    #[arg(long)]
    pub no_min_degree: bool,
}

#[derive(Debug, Args)]
pub struct ConnectivityArgs {
    /// Edge-list file.
    #[arg(value_name = "FILE", required_unless_present = "input")]
    pub file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    pub input: Option<PathBuf>,
    /// Also count internally disjoint paths between two vertices.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub pair: Option<Vec<usize>>,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    exit: Exit::InputError,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::new(Exit::Success, rendered)
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    if cli.oracle_limit > HARD_LIMIT {
        return Outcome::input_error(format!(
            "--oracle-limit {} exceeds the hard cap of {HARD_LIMIT}",
            cli.oracle_limit
        ));
    }
    let oracle = Oracle::new(cli.oracle_limit)
        .expect("limit checked above")
        .with_jobs(cli.jobs);
    match &cli.command {
        Command::Check(a) => cmd_check(cli, &oracle, a),
        Command::Realize(a) => cmd_realize(cli, &oracle, a),
        Command::Witness(a) => cmd_witness(cli, a),
        Command::Audit(a) => cmd_audit(cli, &oracle, a),
        Command::Connectivity(a) => cmd_connectivity(cli, a),
    }
}

pub fn parse_sequence(text: &str) -> Result<DegreeSequence, String> {
    let raw = text
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|_| format!("sequence term {t:?} is not an integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    normalize(&raw).map_err(|e| e.to_string())
}

fn check_k(k: usize) -> Result<(), Outcome> {
    if k == 0 {
        Err(Outcome::input_error("k must be at least 1"))
    } else {
        Ok(())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Outcome> {
    fs::write(path, contents)
        .map_err(|e| Outcome::input_error(format!("cannot write {}: {e}", path.display())))
}

fn cmd_check(cli: &Cli, oracle: &Oracle, a: &CheckArgs) -> Outcome {
    let s = match parse_sequence(&a.seq) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e),
    };
    if let Err(o) = check_k(a.k) {
        return o;
    }
    let t1 = theorem1_check(&s, a.k);
    let t2 = theorem2_check(&s, a.k);
    let verdict = if s.len() <= oracle.limit() {
        Some(oracle.verdict(&s, a.k).expect("within oracle limit"))
    } else {
        None
    };
    if a.ground_truth && verdict.is_none() {
        return Outcome::input_error(format!(
            "--ground-truth needs φ={} within --oracle-limit {}",
            s.len(),
            oracle.limit()
        ));
    }
    let doc = output::CheckDoc::new(&s, a.k, t1, t2, verdict, a.ground_truth);
    let exit = if doc.exit_verdict() {
        Exit::Success
    } else {
        Exit::Negative
    };
    let text = match cli.format {
        Format::Json => output::json(&doc),
        Format::Text => doc.text(),
    };
    let mut out = Outcome::new(exit, text);
    for line in doc.disagreements() {
        out = out.warn(line);
    }
    out
}

fn cmd_realize(cli: &Cli, oracle: &Oracle, a: &RealizeArgs) -> Outcome {
    if let Err(o) = check_k(a.k) {
        return o;
    }
    let (requested, result) = match (&a.seq, a.n, a.epsilon) {
        (Some(seq), None, None) => {
            let s = match parse_sequence(seq) {
                Ok(s) => s,
                Err(e) => return Outcome::input_error(e),
            };
            let r = realize_k_connected(&s, a.k, oracle).expect("k checked");
            (output::Requested::Sequence { sequence: s }, r)
        }
        (None, Some(n), Some(eps)) => {
            let r = match augment_chain(n, a.k, eps) {
                Ok(chain) => Realized::Found {
                    graph: chain.into_iter().last().expect("non-empty chain").graph,
                    method: Method::Chain,
                },
                Err(
                    RealizationError::NotKConnected { .. }
                    | RealizationError::AugmentationStuck { .. },
                ) => Realized::NotFound {
                    method: Method::Chain,
                },
                Err(e) => return Outcome::input_error(e.to_string()),
            };
            (output::Requested::Chain { n, epsilon: eps }, r)
        }
        _ => return Outcome::input_error("realize needs --seq, or --n with --epsilon"),
    };
    let doc = output::RealizeDoc::new(requested, a.k, &result);
    if let (Some(path), Some(g)) = (&cli.output, result.graph()) {
        if let Err(o) = write_file(path, &doc.edge_list(g)) {
            return o;
        }
    }
    let text = match cli.format {
        Format::Json => output::json(&doc),
        Format::Text => match (result.graph(), &cli.output) {
            (Some(g), None) => doc.edge_list(g),
            _ => doc.text(),
        },
    };
    match result {
        Realized::Found { .. } => Outcome::new(Exit::Success, text),
        Realized::NotFound { method } => {
            let mut o = Outcome::new(Exit::Negative, text);
            o.stderr = match method {
                Method::Exact => "no realization exists (exact)\n".to_string(),
                other => format!("no realization found ({other})\n"),
            };
            o
        }
    }
}

fn cmd_witness(cli: &Cli, a: &WitnessArgs) -> Outcome {
    let (s, g1, g2) = match (
        witness_sequence(a.n, a.k),
        build_g1(a.n, a.k),
        build_g2(a.n, a.k),
    ) {
        (Ok(s), Ok(g1), Ok(g2)) => (s, g1, g2),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
            return Outcome::input_error(e.to_string())
        }
    };
    let doc = output::WitnessDoc {
        schema_version: SCHEMA_VERSION,
        command: "witness",
        n: a.n,
        k: a.k,
        witness_sequence: s.clone(),
        epsilon: kconn::associated_pair(&s).epsilon,
        labels: kconn::realization::witness_labels(a.k),
        g1: output::GraphSummary::of(&g1, vertex_connectivity(&g1)),
        g2: output::GraphSummary::of(&g2, vertex_connectivity(&g2)),
        g1_maximally_non_k_connected: is_maximally_non_k_connected(&g1, a.k),
    };
    if let Some(dir) = &cli.output {
        if let Err(e) = fs::create_dir_all(dir) {
            return Outcome::input_error(format!("cannot create {}: {e}", dir.display()));
        }
        for (name, contents) in [
            ("g1.edges", edgelist::render(&g1, &["witness G1".into()])),
            ("g2.edges", edgelist::render(&g2, &["witness G2".into()])),
            ("summary.json", output::json(&doc)),
        ] {
            if let Err(o) = write_file(&dir.join(name), &contents) {
                return o;
            }
        }
    }
    let text = match cli.format {
        Format::Json => output::json(&doc),
        Format::Text => doc.text(),
    };
    Outcome::new(Exit::Success, text)
}

fn cmd_audit(cli: &Cli, oracle: &Oracle, a: &AuditArgs) -> Outcome {
    if a.n > oracle.limit() {
        return Outcome::input_error(format!(
            "n={} exceeds --oracle-limit {}",
            a.n,
            oracle.limit()
        ));
    }
    let reports = match a.theorem {
        TheoremArg::One | TheoremArg::Two => {
            if a.no_min_degree {
                return Outcome::input_error("--no-min-degree applies only to the corollary audit");
            }
            let k_max = a.kmax.or(a.k).unwrap_or(1);
            if let Err(o) = check_k(k_max) {
                return o;
            }
            let r = if a.theorem == TheoremArg::One {
                oracle.audit_theorem1(a.n, k_max)
            } else {
                oracle.audit_theorem2(a.n, k_max)
            };
            vec![r]
        }
        TheoremArg::Corollary => {
            let k = a.k.or(a.kmax).unwrap_or(1);
            if let Err(o) = check_k(k) {
                return o;
            }
            if a.n < 2 {
                return Outcome::input_error("the corollary audit needs n >= 2");
            }
            let mut rs = vec![oracle.audit_corollary(a.n, k, true)];
            if a.no_min_degree {
                rs.push(oracle.audit_corollary(a.n, k, false));
            }
            rs
        }
    };
    let reports = match reports.into_iter().collect::<Result<Vec<_>, _>>() {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let bundle = output::AuditBundle {
        schema_version: SCHEMA_VERSION,
        command: "audit",
        reports,
    };
    let json = output::json(&bundle);
    if let Some(path) = &cli.output {
        if let Err(o) = write_file(path, &json) {
            return o;
        }
    }
    let exit = if bundle.reports.iter().all(|r| r.is_clean()) {
        Exit::Success
    } else {
        Exit::Discrepancies
    };
    let text = match cli.format {
        Format::Json => json,
        Format::Text => bundle.text(),
    };
    Outcome::new(exit, text)
}

fn cmd_connectivity(cli: &Cli, a: &ConnectivityArgs) -> Outcome {
    let path = a
        .file
        .as_ref()
        .or(a.input.as_ref())
        .expect("clap requires one");
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format!("cannot read {}: {e}", path.display())),
    };
    let g = match edgelist::parse(&text) {
        Ok(g) => g,
        Err(e) => return Outcome::input_error(format!("{}: {e}", path.display())),
    };
    let pair = match a.pair.as_deref() {
        Some(&[x, y]) => match internally_disjoint_path_count(&g, x, y) {
            Ok(count) => Some(output::PairCount { a: x, b: y, count }),
            Err(e) => return Outcome::input_error(e.to_string()),
        },
        _ => None,
    };
    let mut degrees = g.degrees();
    degrees.sort_unstable_by(|x, y| y.cmp(x));
    let doc = output::ConnectivityDoc {
        schema_version: SCHEMA_VERSION,
        command: "connectivity",
        n: g.n(),
        edge_count: g.edge_count(),
        degrees,
        connectivity: vertex_connectivity(&g),
        pair,
    };
    let text = match cli.format {
        Format::Json => output::json(&doc),
        Format::Text => doc.text(),
    };
    Outcome::new(Exit::Success, text)
}
