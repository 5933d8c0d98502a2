//! Command-line front end.
//!
//! Exit codes: 0 polychromatic / found / success, 1 not polychromatic / none
//! exists / oracle failure, 2 usage or input error, 3 budget or resource limit.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polychrome::adversary::{construct_witness, AdversaryInput};
use polychrome::bounds;
use polychrome::certificate::{Certificate, PlinBundle};
use polychrome::oracle::{explicit_check_with_budget, sample_cross_validation, DEFAULT_WORK_BUDGET};
use polychrome::search::{compute_plin, find_coloring, SearchOptions, SearchStatus, DEFAULT_AUTOMORPHISM_LIMIT, DEFAULT_BLOCK_SIZE};
use polychrome::{fixture, is_polychromatic_with, CheckOptions, ColoringSpec, Error, FactoredAbelianGroup, LinearColoring, XRange};

#[derive(Parser)]
#[command(name = "polychrome", version, about = "Verify and search for polychromatic linear colorings of hypercube subcubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one coloring and emit a certificate.
    Verify(VerifyArgs),
    /// Search every linear coloring with a given number of colors.
    Search(SearchArgs),
    /// Compute p_lin for (ell, d) by exhaustive search.
    Plin(PlinArgs),
    /// Build the non-polychromatic Q_d for a linear Q_(d-1)-coloring.
    Adversary(AdversaryArgs),
    /// Brute-force check of every Q_d inside Q_n.
    Oracle(OracleArgs),
    /// Print the table of bounds.
    Bounds(BoundsArgs),
    /// Print a built-in coloring as a spec.
    Fixture {
        name: String,
    },
    /// Cross-validate random colorings against the brute-force oracle.
    Crossval(CrossvalArgs),
}

#[derive(Args)]
struct ColoringSource {
    /// Coloring spec JSON file; certificates are accepted too.
    #[arg(value_name = "SPEC", required_unless_present = "fixture", conflicts_with = "fixture")]
    spec: Option<PathBuf>,
    /// Use a built-in coloring instead of a spec file.
    #[arg(long)]
    fixture: Option<String>,
}

impl ColoringSource {
    fn load(&self) -> Result<(LinearColoring, Option<usize>), Error> {
        if let Some(name) = &self.fixture {
            return Ok((fixture(name)?, None));
        }
        let path = self.spec.as_ref().expect("clap enforces one source");
        let text = std::fs::read_to_string(path)?;
        let spec: ColoringSpec = serde_json::from_str(&text)?;
        Ok((spec.to_coloring()?, spec.d))
    }
}

#[derive(Args)]
struct Output {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, json: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => std::fs::write(path, format!("{json}\n"))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                // a closed pipe (e.g. `| head`) is not an error worth reporting
                if let Err(e) = writeln!(stdout, "{json}") {
                    if e.kind() != std::io::ErrorKind::BrokenPipe {
                        return Err(e.into());
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: ColoringSource,
    /// Dimension of the subcubes that must see every color; defaults to the spec's `d`.
    #[arg(long)]
    d: Option<usize>,
    /// Scan interior entries over [0, M) instead of [0, exponent).
    #[arg(long)]
    paper_range: bool,
    /// Count every failing counting vector.
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SearchFlags {
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    paper_range: bool,
    /// Disable reversal, generation and automorphism pruning.
    #[arg(long)]
    no_prune: bool,
    /// Automorphisms per group used for pruning; 0 disables that filter.
    #[arg(long, default_value_t = DEFAULT_AUTOMORPHISM_LIMIT)]
    automorphisms: usize,
    /// Maximum number of counting vectors to examine.
    #[arg(long, value_name = "OPS")]
    budget: Option<u64>,
    /// Resumable state file; an existing file is resumed.
    #[arg(long, value_name = "FILE")]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BLOCK_SIZE)]
    block_size: u64,
}

impl SearchFlags {
    fn options(&self, ascending: bool) -> SearchOptions {
        SearchOptions {
            threads: self.threads,
            range: self.range(),
            prune: !self.no_prune,
            automorphism_limit: if self.no_prune { 0 } else { self.automorphisms },
            ascending,
            budget: self.budget,
            checkpoint: self.checkpoint.clone(),
            block_size: self.block_size,
        }
    }

    fn range(&self) -> XRange {
        if self.paper_range {
            XRange::Paper
        } else {
            XRange::Exponent
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    d: usize,
    /// Number of colors M.
    #[arg(long)]
    colors: u64,
    #[command(flatten)]
    flags: SearchFlags,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct PlinArgs {
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    d: usize,
    /// Scan M upwards from 1 instead of down from the upper bound.
    #[arg(long)]
    ascending: bool,
    #[command(flatten)]
    flags: SearchFlags,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AdversaryArgs {
    #[arg(long)]
    d: usize,
    /// Moduli of the group, e.g. `--moduli 3` or `--moduli 2 4`.
    #[arg(long, num_args = 1.., required = true)]
    moduli: Vec<u64>,
    /// h_0 .. h_(d-1); multi-component elements are comma separated, e.g. `1,0`.
    #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
    h: Vec<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "spec", value_name = "SPEC", required_unless_present = "fixture", conflicts_with = "fixture")]
    spec: Option<PathBuf>,
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    /// Maximum number of Q_ell colorings to evaluate.
    #[arg(long, default_value_t = DEFAULT_WORK_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BoundsArgs {
    /// A value or inclusive range such as `2` or `1..3`.
    #[arg(long, default_value = "1..6", value_parser = parse_range)]
    ell: RangeInclusive<u64>,
    #[arg(long, default_value = "1..6", value_parser = parse_range)]
    d: RangeInclusive<u64>,
    /// Emit JSON instead of a text table.
    #[arg(long)]
    json: bool,
    /// Only rows carrying an exact known value.
    #[arg(long)]
    known: bool,
}

#[derive(Args)]
struct CrossvalArgs {
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_ell: usize,
    #[arg(long, default_value_t = 4)]
    max_d: usize,
    #[arg(long, default_value_t = 12)]
    max_order: u64,
    /// Oracle dimensions checked above d.
    #[arg(long, default_value_t = 2)]
    extra_n: usize,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(num(a)?..=num(b)?)
        }
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

fn parse_element(group: &FactoredAbelianGroup, s: &str) -> Result<polychrome::GroupElement, Error> {
    let parts: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let parts = parts.map_err(|e| Error::Invalid(format!("bad group element `{s}`: {e}")))?;
    group.element(&parts)
}

fn status_code(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Verify(a) => {
            let (chi, spec_d) = a.source.load()?;
            let d = a
                .d
                .or(spec_d)
                .ok_or_else(|| Error::Invalid("no d given and the spec does not carry one".into()))?;
            let range = if a.paper_range { XRange::Paper } else { XRange::Exponent };
            let started = Instant::now();
            let verdict = is_polychromatic_with(&chi, d, CheckOptions { range, exhaustive: a.exhaustive })?;
            let cert = Certificate::from_verdict(&chi, d, &verdict, range, started.elapsed());
            a.output.emit(&cert.to_json()?)?;
            Ok(status_code(verdict.polychromatic))
        }
        Command::Search(a) => {
            let opts = a.flags.options(false);
            let result = find_coloring(a.ell, a.d, a.colors, &opts)?;
            let cert = Certificate::from_search(&result, opts.prune, opts.range);
            a.output.emit(&cert.to_json()?)?;
            Ok(match result.status {
                SearchStatus::Found => 0,
                SearchStatus::NoneExists => 1,
                SearchStatus::Undecided => 3,
            })
        }
        Command::Plin(a) => {
            let opts = a.flags.options(a.ascending);
            let result = compute_plin(a.ell, a.d, &opts)?;
            let undecided = result.undecided.is_some();
            let bundle = PlinBundle::new(result, opts.prune, opts.range);
            a.output.emit(&serde_json::to_string_pretty(&bundle)?)?;
            Ok(if undecided { 3 } else { 0 })
        }
        Command::Adversary(a) => {
            let group = FactoredAbelianGroup::new(a.moduli)?;
            let h = a.h.iter().map(|s| parse_element(&group, s)).collect::<Result<Vec<_>, _>>()?;
            let witness = construct_witness(&AdversaryInput::new(a.d, group, h)?)?;
            a.output.emit(&serde_json::to_string_pretty(&witness)?)?;
            Ok(0)
        }
        Command::Oracle(a) => {
            let source = ColoringSource { spec: a.spec, fixture: a.fixture };
            let (chi, _) = source.load()?;
            let report = explicit_check_with_budget(&chi, a.n, a.d, a.budget)?;
            a.output.emit(&serde_json::to_string_pretty(&report)?)?;
            Ok(status_code(report.success()))
        }
        Command::Bounds(a) => {
            let mut rows = bounds::table(a.ell, a.d);
            if a.known {
                rows.retain(|r| r.known_plin.is_some() || r.known_p.is_some());
            }
            if a.json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                print!("{}", bounds::render_text(&rows));
            }
            Ok(0)
        }
        Command::Fixture { name } => {
            println!("{}", serde_json::to_string_pretty(&fixture(&name)?.to_spec())?);
            Ok(0)
        }
        Command::Crossval(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let summary = sample_cross_validation(&mut rng, a.samples, a.max_ell, a.max_d, a.max_order, a.extra_n)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(status_code(summary.oracle_disagreements == 0 && summary.range_disagreements == 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Resource(_) => 3,
                _ => 2,
            })
        }
    }
}
