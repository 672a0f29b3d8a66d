//! Dispatch from parsed arguments to kernel calls and serialized output.
//!
//! Every command resolves the configuration, runs exact arithmetic, and
//! prints one JSON document (or its table rendering) on stdout. Mistakes in
//! flags and option syntax surface as [`AppError::Usage`] (exit 2);
//! malformed class data and well-formed requests whose answer is undefined
//! surface as [`AppError::Domain`] (exit 1, machine-readable error object
//! on stderr).

use std::env;
use std::fs;
use std::io::{self, ErrorKind, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use weierstab::{
    check_limit_torsion, check_limit_torsion_free, classify_limit_phase, compare_phases,
    curve_charge, destabilizer_scan, find_walls, mu_f, mu_polarisation, phi, phi_hat,
    polarisation_curve, shift, twist_identity_residual, twisted_degree, twisted_slope,
    wall_grid_scan, Admissibility, CandidateBox, ChernClass, HNProfile, LaurentPoly,
    MembershipCheck, Rational, Slope,
};

use crate::cli::{Cli, Command, Functor, PhaseCommand, Side, WallsCommand};
use crate::config::{self, Format, RunConfig};
use crate::render;
use crate::verify;
use crate::AppError;

pub fn run(cli: Cli) -> Result<(), AppError> {
    let env_path = env::var_os(config::CONFIG_ENV_VAR).map(PathBuf::from);
    let mut cfg = config::resolve(
        cli.config.as_deref(),
        env_path.as_deref(),
        Path::new("."),
        cli.params.as_deref(),
    )
    .map_err(|e| AppError::Usage(e.to_string()))?;
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    match cli.command {
        Command::Transform {
            functor,
            class,
            shift,
        } => transform_cmd(&cfg, functor, &class, shift),
        Command::Charge { class, at } => charge_cmd(&cfg, &class, at.as_deref()),
        Command::IdentityCheck { class } => identity_cmd(&cfg, &class),
        Command::Phase(cmd) => phase_cmd(&cfg, cmd),
        Command::Walls(cmd) => walls_cmd(&cfg, cmd),
        Command::Slope {
            class,
            factors,
            side,
        } => slope_cmd(&cfg, &class, factors.as_deref(), side),
        Command::Verify { seed } => verify_cmd(&cfg, seed),
    }
}

/// Prints one serializable document in the configured format. A closed
/// stdout (e.g. piping into `head`) ends the line quietly instead of
/// panicking.
fn emit<T: Serialize>(cfg: &RunConfig, value: &T) -> Result<(), AppError> {
    let text = match cfg.format {
        Format::Json => serde_json::to_string(value).expect("command output serializes"),
        Format::Table => {
            let doc = serde_json::to_value(value).expect("command output serializes");
            render::table(&doc)
        }
    };
    match writeln!(io::stdout().lock(), "{text}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(AppError::Domain(format!("cannot write to stdout: {e}"))),
    }
}

fn domain<E: std::fmt::Display>(error: E) -> AppError {
    AppError::Domain(error.to_string())
}

/// Class data that fails to parse is a data error (exit 1), not a flag
/// error; the message keeps serde's field-level diagnostics.
fn parse_class(label: &str, text: &str) -> Result<ChernClass, AppError> {
    serde_json::from_str(text).map_err(|e| AppError::Domain(format!("invalid {label} class: {e}")))
}

fn parse_class_list(label: &str, text: &str) -> Result<Vec<ChernClass>, AppError> {
    serde_json::from_str(text).map_err(|e| AppError::Domain(format!("invalid {label} list: {e}")))
}

/// Candidate lists are given inline as a JSON array or as a path to a file
/// holding one.
fn parse_candidates(text: &str) -> Result<Vec<ChernClass>, AppError> {
    if text.trim_start().starts_with('[') {
        return parse_class_list("candidate", text);
    }
    let contents = fs::read_to_string(text)
        .map_err(|e| AppError::Usage(format!("cannot read candidate file {text:?}: {e}")))?;
    parse_class_list("candidate", &contents)
}

fn parse_rational(label: &str, text: &str) -> Result<Rational, AppError> {
    text.parse()
        .map_err(|e| AppError::Usage(format!("invalid {label}: {e}")))
}

/// Accepts curve points in the form `u=RATIONAL`.
fn parse_point(text: &str) -> Result<Rational, AppError> {
    let rest = text.trim().strip_prefix("u=").ok_or_else(|| {
        AppError::Usage(format!("expected a point of the form u=RATIONAL, got {text:?}"))
    })?;
    parse_rational("curve point", rest)
}

/// Parses `"n=LO..HI,d=LO..HI,c=LO..HI,s2=LO..HI"` into a candidate box.
/// Every axis must appear exactly once; `s2` counts half-integer steps of `s`.
fn parse_box(text: &str) -> Result<CandidateBox, AppError> {
    const AXES: [&str; 4] = ["n", "d", "c", "s2"];
    let mut ranges: [Option<(i64, i64)>; 4] = [None; 4];
    for part in text.split(',') {
        let bad = |message: String| AppError::Usage(format!("invalid box axis {part:?}: {message}"));
        let (key, range) = part
            .split_once('=')
            .ok_or_else(|| bad("expected AXIS=LO..HI".into()))?;
        let slot = AXES
            .iter()
            .position(|axis| *axis == key.trim())
            .ok_or_else(|| bad(format!("unknown axis {:?}, expected one of n, d, c, s2", key.trim())))?;
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| bad("expected an integer range LO..HI".into()))?;
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|e| bad(format!("bad lower bound: {e}")))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|e| bad(format!("bad upper bound: {e}")))?;
        if ranges[slot].replace((lo, hi)).is_some() {
            return Err(bad("axis given twice".into()));
        }
    }
    let [n, d, c, s2] = ranges;
    match (n, d, c, s2) {
        (Some(n), Some(d), Some(c), Some(s2)) => Ok(CandidateBox {
            n,
            d,
            c,
            twice_s: s2,
        }),
        _ => Err(AppError::Usage(format!(
            "box must give all four axes n, d, c, s2; got {text:?}"
        ))),
    }
}

fn transform_cmd(cfg: &RunConfig, functor: Functor, class: &str, k: i64) -> Result<(), AppError> {
    let x = parse_class("input", class)?;
    let image = match functor {
        Functor::Phi => phi(&x, &cfg.params),
        Functor::PhiHat => phi_hat(&x, &cfg.params),
    };
    emit(cfg, &shift(&image, k))
}

#[derive(Serialize)]
struct SymbolicCharge {
    class: ChernClass,
    real: LaurentPoly,
    imag: LaurentPoly,
    admissibility: Admissibility,
}

#[derive(Serialize)]
struct ChargeAtPoint {
    u: Rational,
    v: Rational,
    real: Rational,
    imag: Rational,
}

fn charge_cmd(cfg: &RunConfig, class: &str, at: Option<&str>) -> Result<(), AppError> {
    let x = parse_class("input", class)?;
    let z = curve_charge(&x, &cfg.params);
    match at {
        None => emit(
            cfg,
            &SymbolicCharge {
                class: x,
                admissibility: z.admissibility(),
                real: z.real,
                imag: z.imag,
            },
        ),
        Some(text) => {
            let u = parse_point(text)?;
            if !u.is_positive() {
                return Err(AppError::Domain(format!(
                    "curve points require u > 0, got u = {u}"
                )));
            }
            let v = polarisation_curve(&cfg.params).eval(&u);
            let (real, imag) = z.eval(&u);
            emit(cfg, &ChargeAtPoint { u, v, real, imag })
        }
    }
}

#[derive(Serialize)]
struct IdentityOutcome {
    status: &'static str,
    residual: String,
}

fn identity_cmd(cfg: &RunConfig, class: &str) -> Result<(), AppError> {
    let x = parse_class("input", class)?;
    let residual = twist_identity_residual(&x, &cfg.params);
    let holds = residual.is_zero();
    emit(
        cfg,
        &IdentityOutcome {
            status: if holds { "PASS" } else { "FAIL" },
            residual: residual.to_string(),
        },
    )?;
    if holds {
        Ok(())
    } else {
        Err(AppError::Domain(
            "twisted-degree identity violated; the kernel is inconsistent".into(),
        ))
    }
}

fn phase_cmd(cfg: &RunConfig, cmd: PhaseCommand) -> Result<(), AppError> {
    match cmd {
        PhaseCommand::Compare { left, right } => {
            let x = parse_class("left", &left)?;
            let y = parse_class("right", &right)?;
            let verdict = compare_phases(&x, &y, &cfg.params).map_err(domain)?;
            emit(cfg, &verdict)
        }
        PhaseCommand::Classify { class } => {
            let x = parse_class("input", &class)?;
            let limit = classify_limit_phase(&x, &cfg.params).map_err(domain)?;
            emit(cfg, &limit)
        }
        PhaseCommand::Scan { class, candidates } => {
            let x = parse_class("input", &class)?;
            let list = parse_candidates(&candidates)?;
            let report = destabilizer_scan(&x, &list, &cfg.params).map_err(domain)?;
            emit(cfg, &report)
        }
    }
}

#[derive(Serialize)]
struct ScanWritten {
    out: String,
    total_candidates: u64,
    entries: u64,
}

fn walls_cmd(cfg: &RunConfig, cmd: WallsCommand) -> Result<(), AppError> {
    match cmd {
        WallsCommand::Find {
            left,
            right,
            umax,
            width,
        } => {
            let x = parse_class("left", &left)?;
            let y = parse_class("right", &right)?;
            let u_max = match umax {
                Some(text) => parse_rational("u-max", &text)?,
                None => cfg.u_max.clone(),
            };
            let width = match width {
                Some(text) => Some(parse_rational("width", &text)?),
                None => None,
            };
            let report = find_walls(&x, &y, &cfg.params, &u_max, width.as_ref()).map_err(domain)?;
            emit(cfg, &report)
        }
        WallsCommand::Scan {
            class,
            box_spec,
            umax,
            out,
        } => {
            let x = parse_class("reference", &class)?;
            let bbox = parse_box(&box_spec)?;
            let u_max = match umax {
                Some(text) => parse_rational("u-max", &text)?,
                None => cfg.u_max.clone(),
            };
            let report =
                wall_grid_scan(&x, &bbox, &cfg.params, &u_max, cfg.candidate_cap).map_err(domain)?;
            match out {
                None => emit(cfg, &report),
                Some(path) => {
                    let mut json =
                        serde_json::to_string_pretty(&report).expect("report serializes");
                    json.push('\n');
                    fs::write(&path, json).map_err(|e| {
                        AppError::Domain(format!("cannot write {}: {e}", path.display()))
                    })?;
                    emit(
                        cfg,
                        &ScanWritten {
                            out: path.display().to_string(),
                            total_candidates: report.total_candidates,
                            entries: report.entries.len() as u64,
                        },
                    )
                }
            }
        }
    }
}

#[derive(Serialize)]
struct MembershipOutput {
    side: &'static str,
    #[serde(flatten)]
    check: MembershipCheck,
}

#[derive(Serialize)]
struct SlopeOutput {
    class: ChernClass,
    mu_f: Slope,
    mu_polarisation: Slope,
    twisted_degree: Rational,
    twisted_slope: Slope,
    #[serde(skip_serializing_if = "Option::is_none")]
    membership: Option<MembershipOutput>,
}

fn slope_cmd(
    cfg: &RunConfig,
    class: &str,
    factors: Option<&str>,
    side: Option<Side>,
) -> Result<(), AppError> {
    let x = parse_class("input", class)?;
    let membership = match (factors, side) {
        (Some(text), Some(side)) => {
            let list = parse_class_list("factor", text)?;
            let profile = HNProfile::new(list, &x).map_err(domain)?;
            let (name, check) = match side {
                Side::TorsionFree => (
                    "torsion-free",
                    check_limit_torsion_free(&profile, &cfg.params),
                ),
                Side::Torsion => ("torsion", check_limit_torsion(&profile, &cfg.params)),
            };
            Some(MembershipOutput { side: name, check })
        }
        _ => None,
    };
    emit(
        cfg,
        &SlopeOutput {
            mu_f: mu_f(&x),
            mu_polarisation: mu_polarisation(&x, &cfg.params),
            twisted_degree: twisted_degree(&x, &cfg.params),
            twisted_slope: twisted_slope(&x, &cfg.params),
            class: x,
            membership,
        },
    )
}

fn verify_cmd(cfg: &RunConfig, seed: Option<u64>) -> Result<(), AppError> {
    let seed = seed.unwrap_or(cfg.verify.seed);
    let report = verify::run_all(seed, &cfg.verify);
    emit(cfg, &report)?;
    if report.passed() {
        Ok(())
    } else {
        Err(AppError::Domain("verification failed".into()))
    }
}
