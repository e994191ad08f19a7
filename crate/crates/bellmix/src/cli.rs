use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use bellmix_core::analysis::{
    curve_point, entropy_order_audit, equal_b_three_bell_pair, frontier, region_scan, verify_claim, ClaimConfig,
    ClaimId, ClaimReport, Instance, ScanSource, StateRef, Verdict,
};
use bellmix_core::measures::measure_all;
use bellmix_core::states::{make_family, FamilyKind};
use bellmix_core::{FamilySpec, MeasureRecord};
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::{state_file, table};

/// Grids longer than this are rejected rather than allocated.
const MAX_GRID_POINTS: usize = 1_000_000;
const GRID_SLACK: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "bellmix",
    version,
    about = "Entanglement, CHSH violation and mixedness of two-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Measure a state read from a .dm.json file.
    Measure {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a family curve, or emit a single member as a state file.
    Family {
        /// pure, werner, mems, two_bell or three_bell.
        #[arg(long, value_parser = parse_family)]
        name: FamilyKind,
        /// `lo:hi:step` (endpoints inclusive) or a single value.
        #[arg(long, value_parser = parse_grid, conflicts_with = "weights")]
        grid: Option<Grid>,
        /// Three-Bell weights `w1,w2,w3`.
        #[arg(long, value_parser = parse_triple)]
        weights: Option<[f64; 3]>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the state file instead of the CSV row (single point only).
        #[arg(long)]
        emit_state: bool,
    },
    /// Build the equal-B partner of a three-Bell state.
    Pair {
        /// Base weights `w1,w2,w3`.
        #[arg(long, value_parser = parse_triple)]
        base: [f64; 3],
        #[arg(long)]
        target_w1: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one ordering claim over a seeded ensemble.
    Claim {
        #[arg(long, value_parser = parse_claim)]
        id: ClaimId,
        /// Defaults to the claim's standard ensemble size.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// B window `lo:hi` for cross-family pairs.
        #[arg(long, value_parser = parse_range)]
        b_range: Option<(f64, f64)>,
        #[arg(long)]
        json: bool,
    },
    /// Measure a seeded sample or a family grid and write scan CSV.
    Scan {
        /// hilbert_schmidt, bell_diagonal, or a one-parameter family name.
        #[arg(long, value_parser = parse_source)]
        source: ScanSource,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bin a scan CSV by B and report τ and S_L extrema per bin.
    Frontier {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        bin_width: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the orderings induced by S_L and S.
    Audit {
        #[arg(long, default_value_t = 99)]
        grid_points: usize,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Parsed `--grid` values.
#[derive(Debug, Clone)]
struct Grid(Vec<f64>);

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    FamilyKind::from_name(s).ok_or_else(|| format!("unknown family `{s}`"))
}

fn parse_source(s: &str) -> Result<ScanSource, String> {
    ScanSource::from_name(s).ok_or_else(|| format!("unknown scan source `{s}`"))
}

fn parse_claim(s: &str) -> Result<ClaimId, String> {
    s.parse().map_err(|e: bellmix_core::Error| e.to_string())
}

fn parse_number(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format!("`{s}` is not a finite number"))
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts = s.split(',').map(parse_number).collect::<Result<Vec<_>, _>>()?;
    parts
        .try_into()
        .map_err(|_| format!("expected three comma-separated numbers, got `{s}`"))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    match s.split(':').map(parse_number).collect::<Result<Vec<_>, _>>()?[..] {
        [lo, hi] if lo < hi => Ok((lo, hi)),
        _ => Err(format!("expected `lo:hi` with lo < hi, got `{s}`")),
    }
}

/// `lo:hi:step` or a single value. The upper endpoint is included when the
/// grid lands on it within 1e-12, and then snapped to it exactly.
fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts = s.split(':').map(parse_number).collect::<Result<Vec<_>, _>>()?;
    let (lo, hi, step) = match parts[..] {
        [x] => return Ok(Grid(vec![x])),
        [lo, hi, step] => (lo, hi, step),
        _ => return Err(format!("expected `lo:hi:step` or a single value, got `{s}`")),
    };
    if step <= 0.0 || hi < lo {
        return Err("grid needs step > 0 and lo <= hi".into());
    }
    let steps = ((hi - lo + GRID_SLACK) / step).floor();
    if steps >= MAX_GRID_POINTS as f64 {
        return Err(format!("grid has more than {MAX_GRID_POINTS} points"));
    }
    let n = steps as usize + 1;
    // Snap the last point so roundoff cannot push it past a family's range.
    let points = (0..n)
        .map(|k| lo + k as f64 * step)
        .map(|x| if (x - hi).abs() <= GRID_SLACK { hi } else { x })
        .collect();
    Ok(Grid(points))
}

/// Sends output to `path`, or stdout when absent.
fn emit(path: Option<&Path>, f: impl FnOnce(&mut dyn Write, &Path) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Error::io(p, e))?;
            let mut w = BufWriter::new(file);
            f(&mut w, p)?;
            w.flush().map_err(|e| Error::io(p, e))
        }
        None => {
            let label = Path::new("<stdout>");
            let mut w = io::stdout().lock();
            f(&mut w, label)?;
            w.flush().map_err(|e| Error::io(label, e))
        }
    }
}

fn emit_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    emit(path, |w, p| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(|e| Error::parse(p, e))?;
        writeln!(w).map_err(|e| Error::io(p, e))
    })
}

fn describe(state: &StateRef) -> String {
    match *state {
        StateRef::Family { spec } => match spec {
            FamilySpec::Pure { a } => format!("pure a={a}"),
            FamilySpec::Werner { x } => format!("werner x={x}"),
            FamilySpec::Mems { gamma } => format!("mems gamma={gamma}"),
            FamilySpec::TwoBell { w } => format!("two_bell w={w}"),
            FamilySpec::ThreeBell { w1, w2, w3 } => format!("three_bell w1={w1} w2={w2} w3={w3}"),
        },
        StateRef::HilbertSchmidt { seed, index } => format!("hilbert_schmidt seed={seed} index={index}"),
        StateRef::BellDiagonal { seed, index } => format!("bell_diagonal seed={seed} index={index}"),
        StateRef::Spectrum { values } => format!("spectrum {values:?}"),
    }
}

fn describe_record(r: &MeasureRecord) -> String {
    format!(
        "tau={} bell_b={} s_linear={} s_von_neumann={}",
        r.tau, r.bell_b, r.s_linear, r.s_von_neumann
    )
}

fn summary(report: &ClaimReport) -> String {
    let mut s = format!(
        "claim       {}\nensemble    {}\ntested      {}\nviolations  {}\nverdict     {}\n",
        report.claim_id,
        report.ensemble_size,
        report.tested,
        report.violations,
        report.verdict.name()
    );
    if let Some(w) = &report.witness {
        for (label, inst) in [("first ", &w.first), ("second", &w.second)] {
            s += &format!(
                "witness {label} {}\n               {}\n",
                describe(&inst.state),
                describe_record(&inst.record)
            );
        }
    }
    s
}

#[derive(Serialize)]
struct PairOutput {
    base: Instance,
    partner: Instance,
}

fn measure_family(spec: FamilySpec) -> Result<Instance> {
    Ok(Instance::measure(StateRef::Family { spec })?)
}

/// Runs one command and returns the process exit code.
fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Measure { input, out } => {
            let rho = state_file::load(&input)?;
            emit_json(out.as_deref(), &measure_all(&rho)?)?;
        }
        Command::Family {
            name,
            grid,
            weights,
            out,
            emit_state,
        } => {
            let specs: Vec<FamilySpec> = match (name, grid, weights) {
                (FamilyKind::ThreeBell, None, Some([w1, w2, w3])) => vec![FamilySpec::ThreeBell { w1, w2, w3 }],
                (FamilyKind::ThreeBell, _, _) => return Err(Error::Usage("three_bell takes --weights".into())),
                (kind, Some(Grid(grid)), None) => grid.iter().filter_map(|&p| kind.at(p)).collect(),
                _ => return Err(Error::Usage(format!("{} takes --grid", name.name()))),
            };
            if emit_state {
                let [spec] = specs[..] else {
                    return Err(Error::Usage("--emit-state needs a single grid point".into()));
                };
                let rho = make_family(spec)?;
                emit(out.as_deref(), |w, p| {
                    w.write_all(state_file::to_json(rho.matrix()).as_bytes())
                        .map_err(|e| Error::io(p, e))
                })?;
            } else {
                let points = specs.iter().map(curve_point).collect::<Result<Vec<_>, _>>()?;
                emit(out.as_deref(), |w, p| table::write_curve(w, p, &points))?;
            }
        }
        Command::Pair {
            base: [w1, w2, w3],
            target_w1,
            out,
        } => {
            let base = FamilySpec::ThreeBell { w1, w2, w3 }.normalized()?;
            let partner = equal_b_three_bell_pair(base, target_w1)?;
            let pair = PairOutput {
                base: measure_family(base)?,
                partner: measure_family(partner)?,
            };
            emit_json(out.as_deref(), &pair)?;
        }
        Command::Claim {
            id,
            count,
            seed,
            b_range,
            json,
        } => {
            let mut config = ClaimConfig::for_claim(id);
            if let Some(n) = count {
                config = config.with_count(n);
            }
            if let Some(r) = b_range {
                config.b_range = r;
            }
            let report = verify_claim(id, &config, seed)?;
            if json {
                emit_json(None, &report)?;
                if report.witness.is_some() {
                    eprint!("{}", summary(&report));
                }
            } else {
                print!("{}", summary(&report));
            }
            return Ok(if report.verdict == Verdict::Fails { 1 } else { 0 });
        }
        Command::Scan {
            source,
            count,
            seed,
            out,
        } => {
            let records = region_scan(source, count, seed)?;
            emit(out.as_deref(), |w, p| table::write_scan(w, p, &records))?;
        }
        Command::Frontier { input, bin_width, out } => {
            let file = File::open(&input).map_err(|e| Error::io(&input, e))?;
            let records = table::read_scan(BufReader::new(file), &input)?;
            let bins = frontier(&records, bin_width)?;
            emit(out.as_deref(), |w, p| table::write_frontier(w, p, &bins))?;
        }
        Command::Audit {
            grid_points,
            count,
            seed,
            json,
        } => {
            let audit = entropy_order_audit(grid_points, count, seed)?;
            if json {
                emit_json(None, &audit)?;
            } else {
                for f in &audit.families {
                    println!(
                        "{:<9} {} points, {} pairs, {} disagreements",
                        f.family.name(),
                        f.points,
                        f.pairs,
                        f.disagreements
                    );
                }
                let r = &audit.reference;
                println!(
                    "reference {:?} vs {:?}: S_L {} vs {}, S {} vs {}, orders {}",
                    r.p,
                    r.q,
                    r.s_linear.0,
                    r.s_linear.1,
                    r.s_von_neumann.0,
                    r.s_von_neumann.1,
                    if r.orders_agree { "agree" } else { "disagree" }
                );
                print!("{}", summary(&audit.general));
            }
        }
    }
    Ok(0)
}

/// Parses `args` (program name first) and runs the command. Exit codes: 0 on
/// success, 1 when a claim fails on every tested pair, 2 on usage, input or
/// validation errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
