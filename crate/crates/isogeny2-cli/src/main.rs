//! `isogeny2` — compute explicit isogenies between Jacobians of genus-2
//! curves over finite fields, from invariants and modular-equation data or a
//! supplied tangent matrix. Output is a single JSON document.

use clap::{Args, Parser, Subcommand};
use isogeny2::pipeline::{run, PathKind, RunConfig, TangentSpec};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "isogeny2", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the isogeny pipeline for one configuration.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON configuration file (flags below override nothing when present).
    #[arg(long)]
    config: Option<String>,
    /// Prime modulus of the base field.
    #[arg(long)]
    p: Option<u64>,
    /// Pipeline: siegel | hilbert-q5 | endo.
    #[arg(long)]
    path: Option<String>,
    /// Igusa invariants "j1,j2,j3" of the source.
    #[arg(long)]
    j: Option<String>,
    /// Igusa invariants of the target.
    #[arg(long = "j-prime")]
    j_prime: Option<String>,
    /// Gundlach invariants "g1,g2" of the source.
    #[arg(long)]
    g: Option<String>,
    /// Gundlach invariants of the target.
    #[arg(long = "g-prime")]
    g_prime: Option<String>,
    /// Source curve coefficients "a0,a1,...,a6".
    #[arg(long)]
    curve: Option<String>,
    /// Target curve coefficients.
    #[arg(long = "curve-prime")]
    curve_prime: Option<String>,
    /// Siegel level.
    #[arg(long)]
    ell: Option<u64>,
    /// Norm of beta (Hilbert level).
    #[arg(long = "beta-norm")]
    beta_norm: Option<u64>,
    /// Trace of beta (Hilbert level).
    #[arg(long = "beta-trace")]
    beta_trace: Option<u64>,
    /// Endomorphism multiplier.
    #[arg(long)]
    m: Option<u64>,
    /// Modular-equation data file.
    #[arg(long)]
    modeq: Option<String>,
    /// Tangent matrix "m11;m12;m21;m22" with entries "c0" or "c0+c1t".
    #[arg(long)]
    tangent: Option<String>,
    /// Minimal polynomial "b,c" of t (t^2 + b t + c = 0) for tangent entries.
    #[arg(long = "tangent-minpoly")]
    tangent_minpoly: Option<String>,
    /// Series precision override (upward only).
    #[arg(long)]
    precision: Option<usize>,
    /// RNG seed (default 0).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<String>,
}

fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad number {t:?}: {e}"))
        })
        .collect()
}

fn parse_fixed<const N: usize>(s: &str, what: &str) -> Result<[u64; N], String> {
    let v = parse_list(s)?;
    v.try_into()
        .map_err(|_| format!("{what} needs exactly {N} values"))
}

fn parse_entry(s: &str) -> Result<(u64, u64), String> {
    let s = s.trim();
    if let Some((c0, rest)) = s.split_once('+') {
        let c1 = rest
            .trim()
            .trim_end_matches('t')
            .trim_end_matches('*')
            .trim();
        Ok((
            c0.trim()
                .parse()
                .map_err(|e| format!("bad entry {s:?}: {e}"))?,
            c1.parse().map_err(|e| format!("bad entry {s:?}: {e}"))?,
        ))
    } else {
        Ok((s.parse().map_err(|e| format!("bad entry {s:?}: {e}"))?, 0))
    }
}

fn build_config(args: &RunArgs) -> Result<RunConfig, String> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
        if cfg.modeq_text.is_none() {
            if let Some(mpath) = &args.modeq {
                cfg.modeq_text =
                    Some(std::fs::read_to_string(mpath).map_err(|e| format!("{mpath}: {e}"))?);
            }
        }
        return Ok(cfg);
    }
    let p = args.p.ok_or("--p is required")?;
    let path = match args.path.as_deref() {
        Some("siegel") => PathKind::Siegel,
        Some("hilbert-q5") => PathKind::HilbertQ5,
        Some("endo") => PathKind::Endo,
        Some(other) => return Err(format!("unknown path {other:?}")),
        None => return Err("--path is required".into()),
    };
    let tangent = match &args.tangent {
        None => None,
        Some(spec) => {
            let parts: Vec<&str> = spec.split(';').collect();
            if parts.len() != 4 {
                return Err("tangent spec needs four ';'-separated entries".into());
            }
            let e: Vec<(u64, u64)> = parts
                .iter()
                .map(|s| parse_entry(s))
                .collect::<Result<_, _>>()?;
            let minpoly = match &args.tangent_minpoly {
                None => None,
                Some(mp) => {
                    let v = parse_fixed::<2>(mp, "tangent minpoly")?;
                    Some((v[0], v[1]))
                }
            };
            Some(TangentSpec {
                minpoly,
                entries: [[e[0], e[1]], [e[2], e[3]]],
            })
        }
    };
    let modeq_text = match &args.modeq {
        None => None,
        Some(mpath) => Some(std::fs::read_to_string(mpath).map_err(|e| format!("{mpath}: {e}"))?),
    };
    Ok(RunConfig {
        p,
        path,
        curve: args.curve.as_deref().map(parse_list).transpose()?,
        curve_prime: args.curve_prime.as_deref().map(parse_list).transpose()?,
        j: args
            .j
            .as_deref()
            .map(|s| parse_fixed::<3>(s, "--j"))
            .transpose()?,
        j_prime: args
            .j_prime
            .as_deref()
            .map(|s| parse_fixed::<3>(s, "--j-prime"))
            .transpose()?,
        g: args
            .g
            .as_deref()
            .map(|s| parse_fixed::<2>(s, "--g"))
            .transpose()?,
        g_prime: args
            .g_prime
            .as_deref()
            .map(|s| parse_fixed::<2>(s, "--g-prime"))
            .transpose()?,
        ell: args.ell,
        beta_norm: args.beta_norm,
        beta_trace: args.beta_trace,
        m: args.m,
        modeq_text,
        tangent,
        precision: args.precision,
        seed: args.seed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run(args) = cli.command;
    let config = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&config) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out).expect("serializable output");
            match &args.out {
                None => println!("{text}"),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error writing {path}: {e}");
                        return ExitCode::FAILURE;
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
