//! Command-line front end. Every command prints one JSON document on stdout.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classifier::{classify, orbit_dimension, stabilizer_dimension, BorderRankClass};
use crate::equations::{strassen_equations, strassen_jacobian_rank};
use crate::error::{Error, Result};
use crate::limits::{limit_type, sample_plane_point, segre_point, LimitConfig, PLANE_SAMPLE_SEED};
use crate::normal_forms::{orbit_representative, sigma2_point, sigma3_point, CominusculeModel, SigmaThreeSpec, SigmaType};
use crate::random::{random_gl, rng, seed_from_env};
use crate::rank_oracle::rank_over_field;
use crate::rational::format_q;
use crate::tensor::Tensor;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "border3", version, about = "Exact classification of tensors of border rank at most three")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a tensor: border rank, type, orbit and rank.
    Classify {
        #[arg(default_value = "-")]
        input: String,
        /// Keep the witness trace in the report.
        #[arg(long)]
        witnesses: bool,
    },
    /// Print a normal form as tensor JSON.
    Generate {
        #[arg(long = "type", value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Comma-separated mode dimensions (default: 2 for sigma2, 3 otherwise).
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        /// Distinguished factor of a type iv form.
        #[arg(long)]
        factor: Option<usize>,
        #[arg(long)]
        orbit: Option<u32>,
        /// Modes of a sigma2 point (default: all).
        #[arg(long, value_delimiter = ',')]
        modes: Option<Vec<usize>>,
        /// Apply a random change of basis seeded by BORDER3_SEED.
        #[arg(long)]
        basis_change: bool,
    },
    /// Evaluate the 27 Strassen quartics.
    Strassen {
        #[arg(default_value = "-")]
        input: String,
        /// Also report the rank of their Jacobian at the tensor.
        #[arg(long)]
        jacobian: bool,
    },
    /// Limit of the span of three curves, and the class of a point of it.
    Limit {
        #[arg(default_value = "-")]
        config: String,
    },
    /// Exhaustive rank over a small prime field.
    Rank {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long, default_value_t = 5)]
        rmax: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Stabilizer and orbit dimensions.
    Stabilizer {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenKind {
    Sigma2,
    I,
    Ii,
    Iii,
    Iv,
    Orbit,
}

struct Outcome {
    value: Value,
    code: i32,
}

fn ok(value: Value) -> Result<Outcome> {
    Ok(Outcome { value, code: EXIT_OK })
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn read_tensor(path: &str, stdin: &mut dyn Read) -> Result<Tensor> {
    Tensor::from_json_str(&read_input(path, stdin)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn generate(
    kind: GenKind,
    n: usize,
    dims: Option<Vec<usize>>,
    factor: Option<usize>,
    orbit: Option<u32>,
    modes: Option<Vec<usize>>,
) -> Result<Tensor> {
    let sigma3 = |tag: SigmaType| -> Result<Tensor> {
        let mut spec = SigmaThreeSpec::new(tag, n);
        if let Some(d) = &dims {
            spec.dims = d.clone();
        }
        if let Some(f) = factor {
            if tag != SigmaType::IV {
                return Err(Error::InvalidArgument("--factor only applies to type iv".into()));
            }
            spec = spec.with_factor(f);
        }
        sigma3_point(&spec)
    };
    match kind {
        GenKind::Sigma2 => {
            let dims = dims.unwrap_or_else(|| vec![2; n]);
            let modes = modes.unwrap_or_else(|| (0..n).collect());
            sigma2_point(n, &modes, &dims)
        }
        GenKind::I => sigma3(SigmaType::I),
        GenKind::Ii => sigma3(SigmaType::II),
        GenKind::Iii => sigma3(SigmaType::III),
        GenKind::Iv => sigma3(SigmaType::IV),
        GenKind::Orbit => {
            let id = orbit.ok_or_else(|| Error::InvalidArgument("--type orbit needs --orbit".into()))?;
            orbit_representative(id)
        }
    }
}

fn limit(config: &LimitConfig) -> Result<Value> {
    let plane = config.limit_plane()?;
    let predicted = limit_type(config).ok();
    let mut out = json!({
        "limit": to_value(&plane.to_json()),
        "predicted_type": predicted,
    });
    // a plane point is a tensor only on the Segre model
    if let (CominusculeModel::Segre { dims }, false) = (&config.model, plane.degenerate) {
        let point = segre_point(dims, &sample_plane_point(&plane.plane, PLANE_SAMPLE_SEED))?;
        out["sample_point"] = to_value(&point.to_json());
        out["classification"] = to_value(&classify(&point).without_witnesses());
    }
    Ok(out)
}

fn execute(cmd: Command, stdin: &mut dyn Read) -> Result<Outcome> {
    match cmd {
        Command::Classify { input, witnesses } => {
            let t = read_tensor(&input, stdin)?;
            let report = classify(&t);
            let code = if report.border_rank_class == BorderRankClass::Unknown { EXIT_UNKNOWN } else { EXIT_OK };
            let report = if witnesses { report } else { report.without_witnesses() };
            Ok(Outcome { value: to_value(&report), code })
        }
        Command::Generate { kind, n, dims, factor, orbit, modes, basis_change } => {
            let mut t = generate(kind, n, dims, factor, orbit, modes)?;
            if basis_change {
                t = t.apply_gl(&random_gl(&mut rng(seed_from_env()), t.dims()))?;
            }
            ok(to_value(&t.to_json()))
        }
        Command::Strassen { input, jacobian } => {
            let t = read_tensor(&input, stdin)?;
            let values: Vec<String> = strassen_equations(&t)?.iter().map(format_q).collect();
            let mut out = json!({ "values": values, "all_zero": values.iter().all(|v| v == "0") });
            if jacobian {
                out["jacobian_rank"] = json!(strassen_jacobian_rank(&t)?);
            }
            ok(out)
        }
        Command::Limit { config } => ok(limit(&LimitConfig::from_json_str(&read_input(&config, stdin)?)?)?),
        Command::Rank { input, field, rmax, jobs } => {
            let t = read_tensor(&input, stdin)?;
            let rank = rank_over_field(&t, field, rmax, jobs.max(1))?;
            ok(json!({ "field": field, "rmax": rmax, "rank": rank.to_string(), "exact": rank.exact() }))
        }
        Command::Stabilizer { input } => {
            let t = read_tensor(&input, stdin)?;
            let stab = stabilizer_dimension(&t);
            let orbit = if t.is_zero() { None } else { Some(orbit_dimension(&t)?) };
            ok(json!({
                "stabilizer_dimension": stab.dimension,
                "degenerate": stab.degenerate,
                "orbit_dimension": orbit,
            }))
        }
    }
}

/// Runs one command with explicit streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match execute(cli.command, stdin) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&out.value).expect("json"));
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::SearchSpaceOverflow(_) => EXIT_OVERFLOW,
                _ => EXIT_INPUT,
            }
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdin().lock(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
