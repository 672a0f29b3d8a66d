//! Exact stability arithmetic on an elliptic surface fibred over a curve,
//! with a section of fixed negative self-intersection.
//!
//! Everything is computed over the rationals — no floating point enters any
//! result. The crate provides:
//!
//! * reduced Chern characters `(n, d, c, s)` and the lattice-level
//!   relative integral transforms acting on them ([`transform`]);
//! * central charges as exact polynomials in the polarisation parameters
//!   `(u, v)`, their restriction to the distinguished curve
//!   `v = K/u - (m - e/2) u`, and limit-phase classification as
//!   `u -> 0+` ([`charge`], [`phase`]);
//! * slope and twisted-slope data, and membership checks for the limit
//!   subcategories ([`surface`]);
//! * exact isolation of mini-walls along the polarisation curve via Sturm
//!   chains ([`sturm`], [`walls`]).
//!
//! # Quick start
//!
//! ```
//! use weierstab::{
//!     classify_limit_phase, phi, ChernClass, PhaseValue, SurfaceParams,
//! };
//!
//! let params = SurfaceParams::from_ints(0, 2, 1, 1)?;
//! let fiber = ChernClass::from_ints(0, 1, 0, 0);
//!
//! // The transform turns the fiber class into an ideal-sheaf-like class.
//! assert_eq!(phi(&fiber, &params), ChernClass::from_ints(1, 0, 0, 0));
//!
//! // Its limit phase sits at 1/2, attained along the whole curve.
//! let phase = classify_limit_phase(&fiber, &params)?;
//! assert_eq!(phase.value, PhaseValue::Half);
//! assert!(phase.attained);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bipoly;
pub mod charge;
pub mod laurent;
pub mod phase;
pub mod rational;
pub mod sturm;
pub mod surface;
pub mod transform;
pub mod walls;

pub use bipoly::BiPoly;
pub use charge::{
    build_charge, curve_charge, polarisation_curve, substitute_curve, twist_identity_residual,
    Admissibility, ChargeExpr, CurveCharge,
};
pub use laurent::LaurentPoly;
pub use phase::{
    classify_limit_phase, compare_phases, curve_cross, destabilizer_scan, ClassRole, LimitPhase,
    PhaseError, PhaseOrdering, PhaseValue, PhaseVerdict, ScanEntry, ScanOutcome, ScanReport,
    Witness,
};
pub use rational::{ArithError, Rational, Sign};
pub use sturm::{
    default_interval_width, isolate_roots_with_multiplicity, sturm_isolate_roots,
    sturm_isolate_roots_within, RootInterval, SturmError,
};
pub use surface::{
    check_limit_torsion, check_limit_torsion_free, mu_f, mu_polarisation, twisted_degree,
    twisted_slope, ChernClass, HNProfile, MembershipCheck, ParamError, ProfileError, Slope,
    SurfaceParams,
};
pub use transform::{phi, phi_hat, phi_shifted, shift};
pub use walls::{
    find_walls, wall_grid_scan, CandidateBox, EventualRelation, GridEntry, GridError, GridOutcome,
    GridReport, Interval, VInterval, Wall, WallError, WallReport, DEFAULT_CANDIDATE_CAP,
};
