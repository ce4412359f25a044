use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pfr_core::frame::{enumerate_frames, FrameFile};
use pfr_core::harness::{
    catalogue_entry, replay, run_suite, CheckSpec, Counterexample, Status, CATALOGUE, DEFAULT_MAX_SIZE,
    DEFAULT_SAMPLES, DEFAULT_SEEDS,
};
use pfr_core::rational::parse_rational;
use pfr_core::realfn::{
    delta, gamma, join_hausdorff, lower_regularization, meet_hausdorff, phi, psi, Codomain, ExtPartialRealFn,
    FunctionFile, Side, TrailKind,
};
use pfr_core::spatial::SpaceFile;
use pfr_core::sublocale::all_sublocales;
use pfr_core::{registry, FiniteFrame};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "pfr",
    version,
    about = "Finite frames, sublocales and partial real functions"
)]
struct Cli {
    /// Extra frame files, referenced by name from function files.
    #[arg(long = "frame", global = true)]
    frames: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a frame file and print its properties.
    Validate { file: PathBuf },
    /// Enumerate frames up to a size.
    Enumerate {
        #[arg(long)]
        max_size: usize,
        /// Write one frame file per frame into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the sublocale frame of a frame.
    Sublocales { file: PathBuf },
    /// Run checks from the catalogue.
    Verify {
        /// `all` or a comma-separated list of check ids.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Repeatable; defaults to 7, 11, 42.
        #[arg(long = "seed")]
        seeds: Vec<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Keep timing fields in the written report.
        #[arg(long)]
        timing: bool,
    },
    /// List the check catalogue.
    Checks,
    /// Evaluate a function at a rational.
    Eval {
        file: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Apply an operation to function files.
    Op {
        op: Op,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Point-function sweeps on finite spaces.
    Spatial {
        #[command(subcommand)]
        command: SpatialCommand,
    },
    /// Re-run a counterexample file.
    Replay { file: PathBuf },
}

#[derive(Subcommand)]
enum SpatialCommand {
    Sweep {
        file: PathBuf,
        #[arg(long, default_value = "0,1/2,1")]
        grid: String,
        /// Also take the values ±∞.
        #[arg(long)]
        infinities: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Join,
    Meet,
    Neg,
    Gamma,
    Delta,
    Psi,
    Phi,
    Regularize,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_frame(path: &Path) -> Result<FiniteFrame> {
    let file = FrameFile::parse(&read(path)?)?;
    Ok(file.validate()?)
}

fn print(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    );
}

struct Session {
    known: Vec<Arc<FiniteFrame>>,
}

impl Session {
    fn function(&self, path: &Path) -> Result<ExtPartialRealFn> {
        let file = FunctionFile::parse(&read(path)?)?;
        let codomain = registry::codomain(&file.frame, &self.known)?;
        Ok(file.to_fn(&codomain)?)
    }

    fn codomain(&self, name: &str) -> Result<Codomain> {
        Ok(registry::codomain(name, &self.known)?)
    }
}

fn validate(path: &Path) -> Result<ExitCode> {
    let f = load_frame(path)?;
    print(&json!({
        "name": f.name(),
        "size": f.len(),
        "boolean": f.is_boolean(),
        "extremally_disconnected": f.is_extremally_disconnected(),
        "subfit": f.is_subfit(),
        "completely_regular": f.is_completely_regular(),
        "regular_elements": f.regular_elements().iter().map(|&e| f.name_of(e)).collect::<Vec<_>>(),
    }));
    Ok(ExitCode::SUCCESS)
}

fn enumerate(max_size: usize, out: Option<&Path>) -> Result<ExitCode> {
    let frames = enumerate_frames(max_size)?;
    let mut counts = vec![0usize; max_size];
    for f in &frames {
        counts[f.len() - 1] += 1;
    }
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        for f in &frames {
            let path = dir.join(format!("{}.json", f.name()));
            fs::write(&path, FrameFile::from_frame(f, false).to_json())
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    print(&json!({
        "total": frames.len(),
        "per_size": counts,
        "frames": frames.iter().map(|f| f.name()).collect::<Vec<_>>(),
    }));
    Ok(ExitCode::SUCCESS)
}

fn sublocales(path: &Path) -> Result<ExitCode> {
    let f = Arc::new(load_frame(path)?);
    let cos = all_sublocales(&f)?;
    let carriers: Vec<Vec<&str>> = cos
        .sublocales()
        .map(|s| s.elements().map(|e| f.name_of(e)).collect())
        .collect();
    let mut value = cos.to_json();
    value["carriers"] = json!(carriers);
    print(&value);
    Ok(ExitCode::SUCCESS)
}

fn verify(
    suite: &str,
    max_size: usize,
    samples: usize,
    seeds: &[u64],
    report: Option<&Path>,
    timing: bool,
) -> Result<ExitCode> {
    let seeds: Vec<u64> = if seeds.is_empty() {
        DEFAULT_SEEDS.to_vec()
    } else {
        seeds.to_vec()
    };
    let specs = if suite == "all" {
        CheckSpec::all(max_size, samples, &seeds)
    } else {
        suite
            .split(',')
            .map(|id| Ok(CheckSpec::new(id.trim())?.with_bounds(max_size, samples, &seeds)))
            .collect::<Result<Vec<_>>>()?
    };
    let result = run_suite(&specs, &[])?;
    for c in &result.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Observation => "observation",
        };
        eprintln!("{:<32} {:<11} {:>6} ms", c.id, status, c.timing_ms);
    }
    if let Some(path) = report {
        let written = if timing {
            result.clone()
        } else {
            result.without_timing()
        };
        fs::write(path, written.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if result.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn eval(ctx: &Session, path: &Path, at: &str) -> Result<ExitCode> {
    let f = ctx.function(path)?;
    let q = parse_rational(at)?;
    let frame = f.frame();
    let name = |kind, side| frame.name_of(f.eval(kind, &q, side)).to_string();
    print(&json!({
        "at": at,
        "lower": name(TrailKind::Lower, Side::At),
        "upper": name(TrailKind::Upper, Side::At),
        "lower_left_limit": name(TrailKind::Lower, Side::LeftLimit),
        "upper_right_limit": name(TrailKind::Upper, Side::RightLimit),
    }));
    Ok(ExitCode::SUCCESS)
}

fn op(ctx: &Session, op: Op, files: &[PathBuf]) -> Result<ExitCode> {
    let fs: Vec<ExtPartialRealFn> = files.iter().map(|p| ctx.function(p)).collect::<Result<_>>()?;
    let single = || -> Result<&ExtPartialRealFn> {
        match &fs[..] {
            [f] => Ok(f),
            _ => bail!("this operation takes exactly one function, got {}", fs.len()),
        }
    };
    let out = match op {
        Op::Join => join_hausdorff(fs[0].codomain(), &fs)?,
        Op::Meet => meet_hausdorff(fs[0].codomain(), &fs)?,
        Op::Neg => single()?.neg(),
        Op::Gamma => gamma(single()?)?,
        Op::Delta => {
            let g = single()?;
            let name = g.codomain().name();
            let Some(parent) = name.strip_prefix("B(").and_then(|r| r.strip_suffix(')')) else {
                bail!("delta takes a function into B(NAME), got one into {name}");
            };
            delta(g, &ctx.codomain(parent)?)?
        }
        Op::Psi => psi(single()?)?,
        Op::Phi => phi(single()?)?,
        Op::Regularize => lower_regularization(single()?)?.function,
    };
    print(&serde_json::to_value(FunctionFile::from_fn(&out))?);
    Ok(ExitCode::SUCCESS)
}

fn sweep(path: &Path, grid: &str, infinities: bool) -> Result<ExitCode> {
    let space = SpaceFile::parse(&read(path)?)?.to_space()?;
    let grid = grid
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let report = space.sweep(&grid, infinities)?;
    print(&serde_json::to_value(&report)?);
    Ok(if report.mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn replay_file(path: &Path) -> Result<ExitCode> {
    let cx = Counterexample::parse(&read(path)?)?;
    let anchor = catalogue_entry(&cx.check).map(|c| c.anchor).unwrap_or_default();
    match replay(&cx)? {
        Ok(()) => {
            println!("pass {} ({anchor})", cx.check);
            Ok(ExitCode::SUCCESS)
        }
        Err(why) => {
            println!("fail {} ({anchor}): {why}", cx.check);
            Ok(ExitCode::FAILURE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let known = cli
        .frames
        .iter()
        .map(|p| load_frame(p).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let ctx = Session { known };
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Enumerate { max_size, out } => enumerate(max_size, out.as_deref()),
        Command::Sublocales { file } => sublocales(&file),
        Command::Verify {
            suite,
            max_size,
            samples,
            seeds,
            report,
            timing,
        } => verify(&suite, max_size, samples, &seeds, report.as_deref(), timing),
        Command::Checks => {
            for c in CATALOGUE {
                let kind = if c.observation { "observation" } else { "check" };
                println!("{:<32} {kind:<11} {}", c.id, c.anchor);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { file, at } => eval(&ctx, &file, &at),
        Command::Op { op: o, files } => op(&ctx, o, &files),
        Command::Spatial {
            command: SpatialCommand::Sweep { file, grid, infinities },
        } => sweep(&file, &grid, infinities),
        Command::Replay { file } => replay_file(&file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
