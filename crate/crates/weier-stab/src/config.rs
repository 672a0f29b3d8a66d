//! Run configuration: surface parameters, scan limits, output format, and
//! verification sizes.
//!
//! Sources, by decreasing precedence: an explicit `--config` path, the
//! `WEIER_STAB_CONFIG` environment variable, `./weier-stab.toml`,
//! `./weier-stab.json`, then built-in defaults. `--params` entries —
//! either `key=value` pairs or one JSON object — override individual
//! parameter fields afterwards.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use weierstab::{ParamError, Rational, SurfaceParams};

pub const CONFIG_ENV_VAR: &str = "WEIER_STAB_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// One compact JSON document on stdout.
    Json,
    /// Indented key/value lines.
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SurfaceParams,
    /// Default scan horizon for wall searches.
    pub u_max: Rational,
    /// Largest candidate box a grid scan will accept.
    pub candidate_cap: u64,
    pub format: Format,
    pub verify: VerifySettings,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySettings {
    pub seed: u64,
    pub transform_samples: u32,
    pub identity_samples: u32,
    pub phase_pairs: u32,
    pub wall_pairs: u32,
    pub scan_samples: u32,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            seed: 42,
            transform_samples: 500,
            identity_samples: 500,
            phase_pairs: 250,
            wall_pairs: 25,
            scan_samples: 50,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config file {path} does not exist")]
    Missing { path: PathBuf },
    #[error("cannot read config file {path}: {message}")]
    Unreadable { path: PathBuf, message: String },
    #[error("cannot parse config file {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid parameters: {0}")]
    Params(#[from] ParamError),
    #[error("u_max must be positive, got {0}")]
    NonPositiveUMax(Rational),
    #[error("candidate_cap must be at least 1")]
    ZeroCandidateCap,
    #[error("verify sizes must be at least 1")]
    ZeroVerifySize,
    #[error("invalid --params entry {entry:?}: {message}")]
    BadOverride { entry: String, message: String },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    params: Option<RawParams>,
    limits: Option<RawLimits>,
    output: Option<RawOutput>,
    verify: Option<RawVerify>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    e: Option<Rational>,
    m: Option<Rational>,
    alpha: Option<Rational>,
    lambda: Option<Rational>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLimits {
    u_max: Option<Rational>,
    candidate_cap: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    seed: Option<u64>,
    transform_samples: Option<u32>,
    identity_samples: Option<u32>,
    phase_pairs: Option<u32>,
    wall_pairs: Option<u32>,
    scan_samples: Option<u32>,
}

/// Resolves the effective configuration.
///
/// `explicit` is the `--config` flag, `env_path` the already-read value of
/// [`CONFIG_ENV_VAR`], and `search_dir` the directory searched for implicit
/// `weier-stab.toml` / `weier-stab.json` files; explicitly named files must
/// exist, implicit ones are optional. `overrides` is the `--params` list.
pub fn resolve(
    explicit: Option<&Path>,
    env_path: Option<&Path>,
    search_dir: &Path,
    overrides: Option<&str>,
) -> Result<RunConfig, ConfigError> {
    let mut raw = if let Some(path) = explicit.or(env_path) {
        if !path.exists() {
            return Err(ConfigError::Missing {
                path: path.to_path_buf(),
            });
        }
        parse_file(path)?
    } else {
        let toml_path = search_dir.join("weier-stab.toml");
        let json_path = search_dir.join("weier-stab.json");
        if toml_path.exists() {
            parse_file(&toml_path)?
        } else if json_path.exists() {
            parse_file(&json_path)?
        } else {
            RawConfig::default()
        }
    };

    if let Some(list) = overrides {
        apply_overrides(&mut raw, list)?;
    }
    finalize(raw)
}

fn parse_file(path: &Path) -> Result<RawConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|err| ConfigError::Unreadable {
        path: path.to_path_buf(),
        message: err.to_string(),
    })?;
    let is_json = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("json"));
    let parsed = if is_json {
        serde_json::from_str(&text).map_err(|err| err.to_string())
    } else {
        toml::from_str(&text).map_err(|err| err.to_string())
    };
    parsed.map_err(|message| ConfigError::Parse {
        path: path.to_path_buf(),
        message,
    })
}

/// Applies `--params` overrides: either a JSON object with any of the four
/// parameter fields, or a comma-separated `key=value` list.
fn apply_overrides(raw: &mut RawConfig, list: &str) -> Result<(), ConfigError> {
    let list = list.trim();
    let params = raw.params.get_or_insert_with(RawParams::default);
    if list.starts_with('{') {
        let parsed: RawParams =
            serde_json::from_str(list).map_err(|err| ConfigError::BadOverride {
                entry: list.to_string(),
                message: err.to_string(),
            })?;
        if let Some(e) = parsed.e {
            params.e = Some(e);
        }
        if let Some(m) = parsed.m {
            params.m = Some(m);
        }
        if let Some(alpha) = parsed.alpha {
            params.alpha = Some(alpha);
        }
        if let Some(lambda) = parsed.lambda {
            params.lambda = Some(lambda);
        }
        return Ok(());
    }
    for entry in list.split(',') {
        let entry = entry.trim();
        let (key, value) = entry.split_once('=').ok_or_else(|| ConfigError::BadOverride {
            entry: entry.to_string(),
            message: "expected key=value".to_string(),
        })?;
        let value: Rational = value.trim().parse().map_err(|err| ConfigError::BadOverride {
            entry: entry.to_string(),
            message: format!("{err}"),
        })?;
        match key.trim() {
            "e" => params.e = Some(value),
            "m" => params.m = Some(value),
            "alpha" => params.alpha = Some(value),
            "lambda" => params.lambda = Some(value),
            other => {
                return Err(ConfigError::BadOverride {
                    entry: entry.to_string(),
                    message: format!("unknown parameter {other:?}; expected e, m, alpha, or lambda"),
                })
            }
        }
    }
    Ok(())
}

fn finalize(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    let p = raw.params.unwrap_or_default();
    let params = SurfaceParams::new(
        p.e.unwrap_or_else(Rational::zero),
        p.m.unwrap_or_else(|| Rational::from(2)),
        p.alpha.unwrap_or_else(Rational::one),
        p.lambda.unwrap_or_else(Rational::one),
    )?;

    let limits = raw.limits.unwrap_or_default();
    let u_max = limits.u_max.unwrap_or_else(|| Rational::from(2));
    if !u_max.is_positive() {
        return Err(ConfigError::NonPositiveUMax(u_max));
    }
    let candidate_cap = limits
        .candidate_cap
        .unwrap_or(weierstab::DEFAULT_CANDIDATE_CAP);
    if candidate_cap == 0 {
        return Err(ConfigError::ZeroCandidateCap);
    }

    let format = raw
        .output
        .unwrap_or_default()
        .format
        .unwrap_or(Format::Json);

    let v = raw.verify.unwrap_or_default();
    let defaults = VerifySettings::default();
    let verify = VerifySettings {
        seed: v.seed.unwrap_or(defaults.seed),
        transform_samples: v.transform_samples.unwrap_or(defaults.transform_samples),
        identity_samples: v.identity_samples.unwrap_or(defaults.identity_samples),
        phase_pairs: v.phase_pairs.unwrap_or(defaults.phase_pairs),
        wall_pairs: v.wall_pairs.unwrap_or(defaults.wall_pairs),
        scan_samples: v.scan_samples.unwrap_or(defaults.scan_samples),
    };
    if verify.transform_samples == 0
        || verify.identity_samples == 0
        || verify.phase_pairs == 0
        || verify.wall_pairs == 0
        || verify.scan_samples == 0
    {
        return Err(ConfigError::ZeroVerifySize);
    }

    Ok(RunConfig {
        params,
        u_max,
        candidate_cap,
        format,
        verify,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_dir() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn defaults_apply_without_any_file() {
        let dir = empty_dir();
        let config = resolve(None, None, dir.path(), None).unwrap();
        assert_eq!(config.params, SurfaceParams::from_ints(0, 2, 1, 1).unwrap());
        assert_eq!(config.u_max, Rational::from(2));
        assert_eq!(config.candidate_cap, 1_000_000);
        assert_eq!(config.format, Format::Json);
        assert_eq!(config.verify, VerifySettings::default());
    }

    #[test]
    fn toml_file_in_the_search_dir_is_picked_up() {
        let dir = empty_dir();
        fs::write(
            dir.path().join("weier-stab.toml"),
            "[params]\nm = 3\ne = \"1/2\"\n\n[limits]\nu_max = \"5/2\"\n\n[output]\nformat = \"table\"\n",
        )
        .unwrap();
        let config = resolve(None, None, dir.path(), None).unwrap();
        assert_eq!(config.params.m(), &Rational::from(3));
        assert_eq!(config.params.e(), &Rational::ratio(1, 2));
        assert_eq!(config.params.alpha(), &Rational::one());
        assert_eq!(config.u_max, Rational::ratio(5, 2));
        assert_eq!(config.format, Format::Table);
    }

    #[test]
    fn explicit_path_beats_search_dir_and_must_exist() {
        let dir = empty_dir();
        fs::write(dir.path().join("weier-stab.toml"), "[params]\nm = 3\n").unwrap();
        let other = dir.path().join("special.toml");
        fs::write(&other, "[params]\nm = 7\n").unwrap();
        let config = resolve(Some(&other), None, dir.path(), None).unwrap();
        assert_eq!(config.params.m(), &Rational::from(7));

        let missing = dir.path().join("nope.toml");
        assert!(matches!(
            resolve(Some(&missing), None, dir.path(), None),
            Err(ConfigError::Missing { .. })
        ));
    }

    #[test]
    fn env_path_beats_search_dir_but_not_explicit() {
        let dir = empty_dir();
        fs::write(dir.path().join("weier-stab.toml"), "[params]\nm = 3\n").unwrap();
        let env_file = dir.path().join("env.json");
        fs::write(&env_file, r#"{"params": {"m": 5}}"#).unwrap();
        let config = resolve(None, Some(&env_file), dir.path(), None).unwrap();
        assert_eq!(config.params.m(), &Rational::from(5));

        let explicit = dir.path().join("explicit.toml");
        fs::write(&explicit, "[params]\nm = 9\n").unwrap();
        let config = resolve(Some(&explicit), Some(&env_file), dir.path(), None).unwrap();
        assert_eq!(config.params.m(), &Rational::from(9));
    }

    #[test]
    fn json_fallback_is_used_when_no_toml_exists() {
        let dir = empty_dir();
        fs::write(
            dir.path().join("weier-stab.json"),
            r#"{"verify": {"seed": 7, "wall_pairs": 3}}"#,
        )
        .unwrap();
        let config = resolve(None, None, dir.path(), None).unwrap();
        assert_eq!(config.verify.seed, 7);
        assert_eq!(config.verify.wall_pairs, 3);
        assert_eq!(
            config.verify.phase_pairs,
            VerifySettings::default().phase_pairs
        );
    }

    #[test]
    fn parameter_overrides_apply_last() {
        let dir = empty_dir();
        fs::write(dir.path().join("weier-stab.toml"), "[params]\nm = 3\n").unwrap();
        let config = resolve(None, None, dir.path(), Some("m=4,lambda=1/3")).unwrap();
        assert_eq!(config.params.m(), &Rational::from(4));
        assert_eq!(config.params.lambda(), &Rational::ratio(1, 3));

        assert!(matches!(
            resolve(None, None, dir.path(), Some("zeta=1")),
            Err(ConfigError::BadOverride { .. })
        ));
        assert!(matches!(
            resolve(None, None, dir.path(), Some("m")),
            Err(ConfigError::BadOverride { .. })
        ));
    }

    #[test]
    fn json_object_overrides_apply_like_the_pair_list() {
        let dir = empty_dir();
        fs::write(dir.path().join("weier-stab.toml"), "[params]\nm = 3\n").unwrap();
        let config = resolve(
            None,
            None,
            dir.path(),
            Some(r#"{"m":"4","lambda":"1/3"}"#),
        )
        .unwrap();
        assert_eq!(config.params.m(), &Rational::from(4));
        assert_eq!(config.params.lambda(), &Rational::ratio(1, 3));

        assert!(matches!(
            resolve(None, None, dir.path(), Some(r#"{"zeta":"1"}"#)),
            Err(ConfigError::BadOverride { .. })
        ));
    }

    #[test]
    fn invalid_values_are_rejected() {
        let dir = empty_dir();
        assert!(matches!(
            resolve(None, None, dir.path(), Some("m=-1")),
            Err(ConfigError::Params(_))
        ));

        fs::write(dir.path().join("weier-stab.toml"), "[limits]\nu_max = 0\n").unwrap();
        assert!(matches!(
            resolve(None, None, dir.path(), None),
            Err(ConfigError::NonPositiveUMax(_))
        ));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = empty_dir();
        fs::write(dir.path().join("weier-stab.toml"), "[params]\nzeta = 1\n").unwrap();
        assert!(matches!(
            resolve(None, None, dir.path(), None),
            Err(ConfigError::Parse { .. })
        ));
    }
}
