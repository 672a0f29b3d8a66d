//! Command-line surface: argument and subcommand definitions.
//!
//! Classes are passed as JSON objects with rational-string fields, e.g.
//! `'{"n":"1","d":"0","c":"-1/2","s":"0"}'`; bare rationals are passed as
//! `"3/4"`.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::Format;

#[derive(Debug, Parser)]
#[command(
    name = "weier-stab",
    version,
    about = "Exact stability data on an elliptic surface: transforms, charges, phases, walls"
)]
pub struct Cli {
    /// Configuration file (TOML or JSON); overrides discovery and the
    /// WEIER_STAB_CONFIG environment variable.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Surface parameter overrides applied last: "e=0,m=2,alpha=1,lambda=1"
    /// or a JSON object '{"e":"0","m":"2","alpha":"1","lambda":"1"}'.
    #[arg(long, global = true, value_name = "LIST")]
    pub params: Option<String>,

    /// Output format (default from config, else json).
    #[arg(long, global = true, value_enum, value_name = "FORMAT")]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

/// Which lattice transform to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Functor {
    /// The forward relative transform.
    Phi,
    /// The inverse-direction relative transform.
    PhiHat,
}

/// Which limit subcategory a membership check targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// Limits of slope-semistable torsion-free parts.
    TorsionFree,
    /// The complementary torsion side.
    Torsion,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a lattice transform to a class, with an optional extra shift.
    Transform {
        #[arg(long, value_enum)]
        functor: Functor,
        /// Class as JSON: {"n":..,"d":..,"c":..,"s":..}.
        #[arg(long)]
        class: String,
        /// Homological shift applied after the functor; each step negates.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },

    /// Central charge of a class: symbolic in (u, v), restricted to the
    /// polarisation curve, or evaluated at a point of the curve.
    Charge {
        #[arg(long)]
        class: String,
        /// Evaluate at a curve point, e.g. --at u=1/2 (requires u > 0).
        #[arg(long, value_name = "u=RATIONAL")]
        at: Option<String>,
    },

    /// Check that the twisted degree cancels the rescaled real charge of
    /// the shifted transform, exactly.
    IdentityCheck {
        #[arg(long)]
        class: String,
    },

    /// Eventual phase comparisons and limit classification along the curve.
    #[command(subcommand)]
    Phase(PhaseCommand),

    /// Exact mini-wall isolation along the polarisation curve.
    #[command(subcommand)]
    Walls(WallsCommand),

    /// Slope data for a class, with optional limit-membership checking.
    Slope {
        #[arg(long)]
        class: String,
        /// Harder-Narasimhan factor classes as a JSON array (needs --side).
        #[arg(long, requires = "side")]
        factors: Option<String>,
        /// Which limit subcategory to test the factors against.
        #[arg(long, value_enum)]
        side: Option<Side>,
    },

    /// Run the deterministic self-check suites and report per-suite counts.
    Verify {
        /// Base seed for the suites (default from config).
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PhaseCommand {
    /// Decide which of two classes' phases is eventually smaller as u -> 0+.
    Compare {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },

    /// Limit phase of a class as u -> 0+, and whether it is attained.
    Classify {
        #[arg(long)]
        class: String,
    },

    /// Compare candidate classes against the shifted transform of a class.
    Scan {
        #[arg(long)]
        class: String,
        /// Candidate classes as a JSON array, inline or as a file path.
        #[arg(long, value_name = "ARRAY|FILE")]
        candidates: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum WallsCommand {
    /// Isolate the wall parameters for one pair of classes.
    Find {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Right end of the open search window (rational; default from config).
        #[arg(long = "u-max", alias = "umax")]
        umax: Option<String>,
        /// Maximum width of the isolating intervals (rational).
        #[arg(long)]
        width: Option<String>,
    },

    /// Survey every class in an integer box against a reference class.
    Scan {
        #[arg(long)]
        class: String,
        /// Box of candidates: "n=LO..HI,d=LO..HI,c=LO..HI,s2=LO..HI",
        /// where s2 counts half-integer steps of s.
        #[arg(long = "box", value_name = "BOX")]
        box_spec: String,
        /// Right end of the open search window (rational; default from config).
        #[arg(long = "u-max", alias = "umax")]
        umax: Option<String>,
        /// Write the JSON report to this file instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_definitions_are_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_a_transform_invocation() {
        let cli = Cli::try_parse_from([
            "weier-stab",
            "transform",
            "--functor",
            "phi-hat",
            "--class",
            r#"{"n":"1","d":"0","c":"0","s":"0"}"#,
            "--shift",
            "-2",
        ])
        .unwrap();
        match cli.command {
            Command::Transform {
                functor, shift, ..
            } => {
                assert_eq!(functor, Functor::PhiHat);
                assert_eq!(shift, -2);
            }
            other => panic!("unexpected command {other:?}"),
        }
    }

    #[test]
    fn global_flags_are_accepted_after_the_subcommand() {
        let cli = Cli::try_parse_from([
            "weier-stab",
            "phase",
            "classify",
            "--class",
            "{}",
            "--format",
            "table",
            "--params",
            "e=1,m=2",
        ])
        .unwrap();
        assert_eq!(cli.format, Some(Format::Table));
        assert_eq!(cli.params.as_deref(), Some("e=1,m=2"));
    }

    #[test]
    fn walls_scan_requires_a_box() {
        let err = Cli::try_parse_from(["weier-stab", "walls", "scan", "--class", "{}"]);
        assert!(err.is_err());
    }

    #[test]
    fn slope_factors_require_a_side() {
        let err = Cli::try_parse_from([
            "weier-stab",
            "slope",
            "--class",
            "{}",
            "--factors",
            "[]",
        ]);
        assert!(err.is_err());
    }
}
