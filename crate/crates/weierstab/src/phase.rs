//! Eventual phase comparison in the large-volume limit.
//!
//! An admissible curve charge lies in `{r e^(i pi phi) : r > 0, phi in (0, 1]}`
//! for all small `u > 0`, defining a phase function `phi(u)`. For two such
//! charges the antisymmetric pairing
//!
//! `cross = Re Z_1 Im Z_2 - Im Z_1 Re Z_2 = |Z_1| |Z_2| sin(pi (phi_2 - phi_1))`
//!
//! has, for small `u`, the sign of `phi_2 - phi_1` (the difference lies in
//! `(-1, 1)`, where `sin(pi t)` and `t` share their sign). `cross` is exact
//! Laurent data, so the eventual phase order is read off its lowest-order
//! coefficient: positive means the first phase is eventually strictly
//! smaller, identically zero means the phases agree along the whole curve.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::charge::{curve_charge, Admissibility};
use crate::laurent::LaurentPoly;
use crate::rational::{Rational, Sign};
use crate::surface::{twisted_degree, ChernClass, SurfaceParams};
use crate::transform::phi_shifted;

/// Which class of an operation a phase error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassRole {
    Left,
    Right,
    Input,
    Transformed,
    Candidate,
}

impl fmt::Display for ClassRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassRole::Left => "left",
            ClassRole::Right => "right",
            ClassRole::Input => "input",
            ClassRole::Transformed => "transformed",
            ClassRole::Candidate => "candidate",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhaseError {
    /// The zero charge has no phase.
    #[error("the {0} class has identically zero central charge, so its phase is undefined")]
    ZeroCharge(ClassRole),
    /// Classes eventually outside the allowed half-plane carry no phase in
    /// `(0, 1]`.
    #[error("the {0} class is eventually outside the allowed half-plane")]
    Inadmissible(ClassRole),
    /// The scan is defined for classes of nonzero rank only.
    #[error("the scanned class must have nonzero rank, got n = 0")]
    RankZero,
}

/// Eventual order of two phase functions as `u -> 0+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseOrdering {
    /// `phi_1(u) < phi_2(u)` for all sufficiently small `u > 0`.
    Precedes,
    /// `phi_1 = phi_2` identically along the curve.
    EventuallyEqual,
    /// `phi_1(u) > phi_2(u)` for all sufficiently small `u > 0`.
    Succeeds,
}

/// Lowest-order term of the cross pairing, the exact certificate for a
/// strict verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub exponent: i64,
    pub coefficient: Rational,
}

/// Outcome of a phase comparison; strict orders carry the deciding term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseVerdict {
    pub ordering: PhaseOrdering,
    pub witness: Option<Witness>,
}

/// The pairing `Re Z(x) Im Z(y) - Im Z(x) Re Z(y)` on the curve, as exact
/// Laurent data. Defined for every pair of classes; vanishes identically
/// exactly when the two charges are proportional over the rationals.
pub fn curve_cross(x: &ChernClass, y: &ChernClass, params: &SurfaceParams) -> LaurentPoly {
    let zx = curve_charge(x, params);
    let zy = curve_charge(y, params);
    &(&zx.real * &zy.imag) - &(&zx.imag * &zy.real)
}

fn check_admissible(
    x: &ChernClass,
    params: &SurfaceParams,
    role: ClassRole,
) -> Result<(), PhaseError> {
    match curve_charge(x, params).admissibility() {
        Admissibility::InUpperHalfPlane => Ok(()),
        Admissibility::Zero => Err(PhaseError::ZeroCharge(role)),
        Admissibility::Inadmissible => Err(PhaseError::Inadmissible(role)),
    }
}

/// Compares the eventual phases of two classes.
///
/// Both charges must be admissible; errors identify the offending argument.
pub fn compare_phases(
    x: &ChernClass,
    y: &ChernClass,
    params: &SurfaceParams,
) -> Result<PhaseVerdict, PhaseError> {
    check_admissible(x, params, ClassRole::Left)?;
    check_admissible(y, params, ClassRole::Right)?;
    Ok(verdict_from_cross(&curve_cross(x, y, params)))
}

fn verdict_from_cross(cross: &LaurentPoly) -> PhaseVerdict {
    let ordering = match cross.sign_at_zero_plus() {
        Sign::Positive => PhaseOrdering::Precedes,
        Sign::Zero => PhaseOrdering::EventuallyEqual,
        Sign::Negative => PhaseOrdering::Succeeds,
    };
    let witness = cross.lowest_term().map(|(exponent, coefficient)| Witness {
        exponent,
        coefficient: coefficient.clone(),
    });
    PhaseVerdict { ordering, witness }
}

/// Limit of the phase as `u -> 0+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseValue {
    Zero,
    Half,
    One,
}

impl fmt::Display for PhaseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PhaseValue::Zero => "0",
            PhaseValue::Half => "1/2",
            PhaseValue::One => "1",
        };
        f.write_str(s)
    }
}

impl Serialize for PhaseValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Limit phase of an admissible class. `attained` records whether the charge
/// lies on the limiting ray for all sufficiently small `u`, rather than only
/// approaching it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LimitPhase {
    #[serde(rename = "phase")]
    pub value: PhaseValue,
    pub attained: bool,
}

/// Classifies the limit phase of a class as `u -> 0+`.
///
/// On the curve the real part is the constant `R = -s + (m + alpha - e) n`,
/// so the limit is decided by `R` and the shape of the imaginary part:
///
/// * imaginary part identically zero: phase `1` on the whole curve;
/// * `R = 0`: phase `1/2` on the whole curve;
/// * unbounded imaginary part (`d != 0`): limit `1/2`, not attained;
/// * bounded imaginary part: limit `1` if `R < 0`, else limit `0`, never
///   attained (phases stay inside `(0, 1]`).
pub fn classify_limit_phase(
    x: &ChernClass,
    params: &SurfaceParams,
) -> Result<LimitPhase, PhaseError> {
    let z = curve_charge(x, params);
    match z.admissibility() {
        Admissibility::Zero => return Err(PhaseError::ZeroCharge(ClassRole::Input)),
        Admissibility::Inadmissible => return Err(PhaseError::Inadmissible(ClassRole::Input)),
        Admissibility::InUpperHalfPlane => {}
    }
    if z.imag.is_zero() {
        return Ok(LimitPhase {
            value: PhaseValue::One,
            attained: true,
        });
    }
    let constant = z.real.coeff(0);
    debug_assert_eq!(z.real, LaurentPoly::constant(constant.clone()));
    let phase = if constant.is_zero() {
        LimitPhase {
            value: PhaseValue::Half,
            attained: true,
        }
    } else if z.imag.min_exp() == Some(-1) {
        LimitPhase {
            value: PhaseValue::Half,
            attained: false,
        }
    } else if constant.is_negative() {
        LimitPhase {
            value: PhaseValue::One,
            attained: false,
        }
    } else {
        LimitPhase {
            value: PhaseValue::Zero,
            attained: false,
        }
    };
    Ok(phase)
}

/// Per-candidate outcome of a scan. Candidates that carry no phase are
/// reported, not fatal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ScanOutcome {
    /// The candidate's phase was compared with the transformed class;
    /// `destabilizes` is set unless the candidate strictly precedes it.
    Compared {
        ordering: PhaseOrdering,
        witness: Option<Witness>,
        destabilizes: bool,
    },
    ZeroCharge,
    Inadmissible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub candidate: ChernClass,
    #[serde(flatten)]
    pub outcome: ScanOutcome,
}

/// Result of [`destabilizer_scan`]: the transformed class, the sign context
/// that controls the expected verdicts, and one entry per candidate in input
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub class: ChernClass,
    pub transformed: ChernClass,
    pub twisted_degree: Rational,
    /// Whether `Re Z` of the transformed class is eventually negative; by
    /// the twist identity this holds exactly when `twisted_degree > 0`.
    pub transformed_real_negative: bool,
    pub candidates: Vec<ScanEntry>,
}

/// Tests a class of nonzero rank against candidate classes: each candidate's
/// eventual phase is compared with the phase of `phi_shifted(x)`, and a
/// candidate *destabilizes* unless it strictly precedes. Candidate errors
/// (zero charge, inadmissible) are recorded per entry; report order is input
/// order.
pub fn destabilizer_scan(
    x: &ChernClass,
    candidates: &[ChernClass],
    params: &SurfaceParams,
) -> Result<ScanReport, PhaseError> {
    if x.n.is_zero() {
        return Err(PhaseError::RankZero);
    }
    let transformed = phi_shifted(x, params);
    check_admissible(&transformed, params, ClassRole::Transformed)?;
    let z = curve_charge(&transformed, params);
    let report_entries = candidates
        .iter()
        .map(|g| {
            let outcome = match compare_phases(g, &transformed, params) {
                Ok(PhaseVerdict { ordering, witness }) => ScanOutcome::Compared {
                    ordering,
                    witness,
                    destabilizes: ordering != PhaseOrdering::Precedes,
                },
                Err(PhaseError::ZeroCharge(_)) => ScanOutcome::ZeroCharge,
                Err(PhaseError::Inadmissible(_)) => ScanOutcome::Inadmissible,
                Err(PhaseError::RankZero) => unreachable!("compare does not check rank"),
            };
            ScanEntry {
                candidate: g.clone(),
                outcome,
            }
        })
        .collect();
    Ok(ScanReport {
        class: x.clone(),
        transformed,
        twisted_degree: twisted_degree(x, params),
        transformed_real_negative: z.real.sign_at_zero_plus() == Sign::Negative,
        candidates: report_entries,
    })
}
