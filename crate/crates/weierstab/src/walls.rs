//! Mini-wall scanning along the polarisation curve.
//!
//! A *wall* for an ordered pair of classes is a parameter `u` in `(0, u_max)`
//! where the phase pairing `Re Z_1 Im Z_2 - Im Z_1 Re Z_2` vanishes: the two
//! phase functions cross or touch there, so any phase inequality can only
//! change across such a point. Roots are isolated exactly; each wall carries
//! the `u`-bracket, the corresponding bracket of `v = v(u)` on the curve, and
//! the root's multiplicity in the pairing.

use serde::Serialize;
use thiserror::Error;

use crate::phase::{compare_phases, curve_cross, ClassRole, PhaseError, PhaseOrdering, Witness};
use crate::rational::{Rational, Sign};
use crate::sturm::{default_interval_width, isolate_in_open_interval, RootInterval};
use crate::surface::{ChernClass, SurfaceParams};

/// Hard ceiling a caller-supplied candidate cap may not exceed by default.
pub const DEFAULT_CANDIDATE_CAP: u64 = 1_000_000;

/// After this many bracket refinements a wall root is treated as sitting on
/// the critical point of `v(u)` and a conservative `v`-enclosure is emitted.
const MAX_MONOTONE_REFINEMENTS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallError {
    /// The pairing against the zero class vanishes identically and carries
    /// no information.
    #[error("the {0} class is zero, so the phase pairing is degenerate")]
    ZeroClass(ClassRole),
    #[error("u_max must be positive, got {0}")]
    NonPositiveUMax(Rational),
    #[error("interval width must be positive, got {0}")]
    NonPositiveWidth(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("candidate box has an empty {axis} range: {lo}..={hi}")]
    EmptyAxis {
        axis: &'static str,
        lo: i64,
        hi: i64,
    },
    /// `requested` saturates at `u128::MAX` for astronomically large boxes.
    #[error("candidate box holds {requested} classes, which exceeds the cap of {cap}")]
    TooManyCandidates { requested: u128, cap: u64 },
    #[error(transparent)]
    Pairing(#[from] WallError),
}

/// Closed bracket `[lo, hi]` of a wall parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

/// Bracket of `v(u)` over a wall's `u`-bracket. `exact` is true when the
/// bracket is precisely the image of the `u`-bracket (monotone case); when
/// the interior minimum of `v` falls inside the bracket the enclosure is
/// conservative and `exact` is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub u: Interval,
    pub v: VInterval,
    pub multiplicity: u32,
}

/// Eventual relation of the two phases as `u -> 0+`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventualRelation {
    /// Both charges are admissible and the pairing is eventually signed.
    Ordered {
        ordering: PhaseOrdering,
        witness: Witness,
    },
    /// The pairing vanishes identically: the charges are proportional (or
    /// one vanishes, a degenerate alignment). No wall can separate them.
    EventuallyEqual,
    /// At least one charge is eventually outside the allowed half-plane, so
    /// no phase order exists; walls are still reported as sign changes of
    /// the pairing.
    Inadmissible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallReport {
    pub left: ChernClass,
    pub right: ChernClass,
    pub u_max: Rational,
    pub relation: EventualRelation,
    /// Walls sorted by increasing `u`; below the first wall the pairing has
    /// the witness sign, and it keeps a constant sign between and beyond
    /// walls of odd multiplicity.
    pub walls: Vec<Wall>,
}

/// Isolates every wall for the pair `(x, y)` in `(0, u_max)`.
///
/// `width` bounds each `u`-bracket (default [`default_interval_width`]).
/// Both classes must be nonzero and `u_max` positive. An identically zero
/// pairing yields [`EventualRelation::EventuallyEqual`] and no walls, even
/// for classes outside the half-plane.
pub fn find_walls(
    x: &ChernClass,
    y: &ChernClass,
    params: &SurfaceParams,
    u_max: &Rational,
    width: Option<&Rational>,
) -> Result<WallReport, WallError> {
    if x.is_zero() {
        return Err(WallError::ZeroClass(ClassRole::Left));
    }
    if y.is_zero() {
        return Err(WallError::ZeroClass(ClassRole::Right));
    }
    let width = validate_scan_bounds(u_max, width)?;
    let (relation, walls) = survey_pairing(x, y, params, u_max, &width);
    Ok(WallReport {
        left: x.clone(),
        right: y.clone(),
        u_max: u_max.clone(),
        relation,
        walls,
    })
}

fn validate_scan_bounds(u_max: &Rational, width: Option<&Rational>) -> Result<Rational, WallError> {
    if !u_max.is_positive() {
        return Err(WallError::NonPositiveUMax(u_max.clone()));
    }
    let width = width.cloned().unwrap_or_else(default_interval_width);
    if !width.is_positive() {
        return Err(WallError::NonPositiveWidth(width));
    }
    Ok(width)
}

fn survey_pairing(
    x: &ChernClass,
    y: &ChernClass,
    params: &SurfaceParams,
    u_max: &Rational,
    width: &Rational,
) -> (EventualRelation, Vec<Wall>) {
    let cross = curve_cross(x, y, params);
    if cross.is_zero() {
        return (EventualRelation::EventuallyEqual, Vec::new());
    }
    let relation = match compare_phases(x, y, params) {
        Ok(verdict) => EventualRelation::Ordered {
            ordering: verdict.ordering,
            witness: verdict
                .witness
                .expect("a nonzero pairing has a lowest-order term"),
        },
        Err(PhaseError::Inadmissible(_)) => EventualRelation::Inadmissible,
        Err(_) => unreachable!("a zero charge forces an identically zero pairing"),
    };
    let roots = isolate_in_open_interval(&cross, &Rational::zero(), u_max, width)
        .expect("pairing is nonzero and bounds are validated");
    let walls = roots
        .into_iter()
        .map(|root| wall_from_root(&cross, root, params, width))
        .collect();
    (relation, walls)
}

/// Sign of `v'(u)`; as `v'(u) = -(K + q u^2) / u^2` for `q = m - e/2` and
/// `K = m + alpha - e`, this is the sign of `-(K + q u^2)`. `v'` is strictly
/// increasing on `(0, oo)`, so it changes sign at most once.
fn curve_derivative_sign(u: &Rational, params: &SurfaceParams) -> Sign {
    let q = params.half_ample_square();
    let k = params.curve_constant();
    (-(&k + &(&q * &(u * u)))).sign()
}

fn curve_v(u: &Rational, params: &SurfaceParams) -> Rational {
    let q = params.half_ample_square();
    let k = params.curve_constant();
    &k.checked_div(u).expect("wall brackets exclude u = 0") - &(&q * u)
}

fn wall_from_root(
    cross: &crate::laurent::LaurentPoly,
    root: RootInterval,
    params: &SurfaceParams,
    width: &Rational,
) -> Wall {
    let mut lo = root.lo;
    let mut hi = root.hi;

    // If the interior minimum of v sits inside the bracket, try to shrink
    // the bracket off it; the bracket endpoints stay non-roots throughout,
    // so each re-isolation returns exactly the one enclosed root.
    let mut next_width = width.clone();
    for _ in 0..MAX_MONOTONE_REFINEMENTS {
        let straddles = curve_derivative_sign(&lo, params) == Sign::Negative
            && curve_derivative_sign(&hi, params) == Sign::Positive;
        if !straddles {
            break;
        }
        next_width = &next_width * &Rational::ratio(1, 2);
        let refined = isolate_in_open_interval(cross, &lo, &hi, &next_width)
            .expect("refinement bounds are a previous isolation bracket");
        debug_assert_eq!(refined.len(), 1);
        let refined = refined
            .into_iter()
            .next()
            .expect("the bracket encloses its root");
        lo = refined.lo;
        hi = refined.hi;
    }

    let v = match (
        curve_derivative_sign(&lo, params),
        curve_derivative_sign(&hi, params),
    ) {
        // v' <= 0 at hi: v is decreasing across the whole bracket.
        (_, Sign::Negative) | (_, Sign::Zero) => VInterval {
            lo: curve_v(&hi, params),
            hi: curve_v(&lo, params),
            exact: true,
        },
        // v' >= 0 at lo: v is increasing across the whole bracket.
        (Sign::Zero, _) | (Sign::Positive, _) => VInterval {
            lo: curve_v(&lo, params),
            hi: curve_v(&hi, params),
            exact: true,
        },
        // Interior minimum: bound v(u) = K/u + |q| u term by term from
        // below; the maximum over a bracket with one interior minimum is
        // attained at an endpoint.
        (Sign::Negative, Sign::Positive) => {
            let k = params.curve_constant();
            let q = params.half_ample_square();
            debug_assert!(q.is_negative());
            let term_lower = &k.checked_div(&hi).expect("bracket excludes u = 0")
                - &(&q * &lo);
            VInterval {
                lo: term_lower,
                hi: curve_v(&lo, params).max(curve_v(&hi, params)),
                exact: false,
            }
        }
    };

    Wall {
        u: Interval { lo, hi },
        v,
        multiplicity: root.multiplicity,
    }
}

/// Inclusive integer ranges for each component of a candidate class; the
/// last axis ranges over `2s` so half-integer second Chern characters are
/// reachable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateBox {
    pub n: (i64, i64),
    pub d: (i64, i64),
    pub c: (i64, i64),
    pub twice_s: (i64, i64),
}

impl CandidateBox {
    fn axes(&self) -> [(&'static str, i64, i64); 4] {
        [
            ("n", self.n.0, self.n.1),
            ("d", self.d.0, self.d.1),
            ("c", self.c.0, self.c.1),
            ("twice_s", self.twice_s.0, self.twice_s.1),
        ]
    }

    /// Number of classes in the box; errors on an empty axis. Saturates at
    /// `u128::MAX`.
    pub fn count(&self) -> Result<u128, GridError> {
        let mut total: u128 = 1;
        for (axis, lo, hi) in self.axes() {
            if lo > hi {
                return Err(GridError::EmptyAxis { axis, lo, hi });
            }
            let len = (hi as i128 - lo as i128 + 1) as u128;
            total = total.saturating_mul(len);
        }
        Ok(total)
    }

    fn classes(&self) -> impl Iterator<Item = ChernClass> + '_ {
        let (n0, n1) = self.n;
        let (d0, d1) = self.d;
        let (c0, c1) = self.c;
        let (t0, t1) = self.twice_s;
        (n0..=n1).flat_map(move |n| {
            (d0..=d1).flat_map(move |d| {
                (c0..=c1).flat_map(move |c| {
                    (t0..=t1).map(move |t| {
                        ChernClass::new(
                            Rational::from(n),
                            Rational::from(d),
                            Rational::from(c),
                            Rational::ratio(t, 2),
                        )
                    })
                })
            })
        })
    }
}

/// Outcome of pairing one candidate against the reference class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GridOutcome {
    /// The zero class: the pairing is degenerate.
    Zero,
    /// The candidate equals the reference class.
    EqualsReference,
    /// The pairing vanishes identically; the phases can never separate.
    Aligned,
    Surveyed {
        relation: EventualRelation,
        walls: Vec<Wall>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridEntry {
    pub candidate: ChernClass,
    #[serde(flatten)]
    pub outcome: GridOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub reference: ChernClass,
    pub u_max: Rational,
    pub total_candidates: u64,
    /// One entry per candidate, in lexicographic `(n, d, c, 2s)` order.
    pub entries: Vec<GridEntry>,
}

/// Surveys every class in `bbox` against the reference class `x`: walls in
/// `(0, u_max)` at the default bracket width, with degenerate candidates
/// (zero, equal to the reference, aligned) flagged instead of scanned.
///
/// The box size is checked against `cap` before any work is done.
pub fn wall_grid_scan(
    x: &ChernClass,
    bbox: &CandidateBox,
    params: &SurfaceParams,
    u_max: &Rational,
    cap: u64,
) -> Result<GridReport, GridError> {
    if x.is_zero() {
        return Err(WallError::ZeroClass(ClassRole::Input).into());
    }
    let width = validate_scan_bounds(u_max, None)?;
    let total = bbox.count()?;
    if total > u128::from(cap) {
        return Err(GridError::TooManyCandidates {
            requested: total,
            cap,
        });
    }
    let entries = bbox
        .classes()
        .map(|candidate| {
            let outcome = if candidate.is_zero() {
                GridOutcome::Zero
            } else if &candidate == x {
                GridOutcome::EqualsReference
            } else {
                match survey_pairing(x, &candidate, params, u_max, &width) {
                    (EventualRelation::EventuallyEqual, _) => GridOutcome::Aligned,
                    (relation, walls) => GridOutcome::Surveyed { relation, walls },
                }
            };
            GridEntry { candidate, outcome }
        })
        .collect();
    Ok(GridReport {
        reference: x.clone(),
        u_max: u_max.clone(),
        total_candidates: total as u64,
        entries,
    })
}
