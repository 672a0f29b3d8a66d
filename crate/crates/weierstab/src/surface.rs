//! Numerical invariants of an elliptic surface with a section.
//!
//! The surface is an elliptic fibration with a section; its numerical data
//! enters through four rational parameters:
//!
//! * `e`: minus the self-intersection of the section divisor,
//! * `m`: the fiber weight making the polarisation class `Theta + m f` ample,
//! * `alpha`, `lambda`: positive weights fixing the limit polarisation
//!   `omega_bar = (lambda/alpha) (Theta + m f) + lambda f` used for twisted
//!   slopes.
//!
//! A sheaf enters only through the reduced character [`ChernClass`]
//! `(n, d, c, s)`: rank, fiber degree of `ch_1`, section degree of `ch_1`,
//! and `ch_2`. All slope and membership computations are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::Rational;

/// Invalid surface parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: Rational },
    #[error(
        "require m + alpha > e (got m + alpha - e = {value}): the polarisation curve \
         v(u) = (m + alpha - e)/u - (m - e/2) u must have a positive leading coefficient"
    )]
    CurveConstantNotPositive { value: Rational },
}

/// Invalid Harder-Narasimhan factor data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("a factor list must be nonempty")]
    Empty,
    #[error("factors sum to {actual} but the total class is {expected}")]
    SumMismatch {
        actual: Box<ChernClass>,
        expected: Box<ChernClass>,
    },
}

#[derive(Deserialize)]
struct RawParams {
    e: Rational,
    m: Rational,
    alpha: Rational,
    lambda: Rational,
}

/// Validated surface and polarisation parameters.
///
/// Construction enforces `m, alpha, lambda > 0` and `m + alpha - e > 0`; the
/// latter keeps the polarisation curve parametrizable by small `u > 0` (see
/// [`crate::charge`]), so downstream code may rely on it unconditionally.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct SurfaceParams {
    e: Rational,
    m: Rational,
    alpha: Rational,
    lambda: Rational,
}

impl SurfaceParams {
    pub fn new(
        e: Rational,
        m: Rational,
        alpha: Rational,
        lambda: Rational,
    ) -> Result<Self, ParamError> {
        for (name, value) in [("m", &m), ("alpha", &alpha), ("lambda", &lambda)] {
            if !value.is_positive() {
                return Err(ParamError::NonPositive {
                    name,
                    value: value.clone(),
                });
            }
        }
        let constant = &m + &alpha - &e;
        if !constant.is_positive() {
            return Err(ParamError::CurveConstantNotPositive { value: constant });
        }
        Ok(SurfaceParams { e, m, alpha, lambda })
    }

    /// Convenience constructor for integer parameters.
    pub fn from_ints(e: i64, m: i64, alpha: i64, lambda: i64) -> Result<Self, ParamError> {
        SurfaceParams::new(
            Rational::from(e),
            Rational::from(m),
            Rational::from(alpha),
            Rational::from(lambda),
        )
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn half_e(&self) -> Rational {
        &self.e * &Rational::ratio(1, 2)
    }

    /// `(Theta + m f)^2 / 2 = m - e/2`, the `u^2` weight of `omega^2/2`.
    pub fn half_ample_square(&self) -> Rational {
        &self.m - &self.half_e()
    }

    /// `m + alpha - e`, positive by construction: the `u^-1` coefficient of
    /// the curve `v(u)` and the dominant weight of every limit.
    pub fn curve_constant(&self) -> Rational {
        &self.m + &self.alpha - &self.e
    }

    /// Weights `(a, b) = (lambda/alpha, lambda)` of the limit polarisation
    /// `omega_bar = a (Theta + m f) + b f`.
    pub fn twisted_weights(&self) -> (Rational, Rational) {
        (&self.lambda / &self.alpha, self.lambda.clone())
    }
}

impl fmt::Debug for SurfaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SurfaceParams(e={}, m={}, alpha={}, lambda={})",
            self.e, self.m, self.alpha, self.lambda
        )
    }
}

impl TryFrom<RawParams> for SurfaceParams {
    type Error = ParamError;
    fn try_from(raw: RawParams) -> Result<Self, ParamError> {
        SurfaceParams::new(raw.e, raw.m, raw.alpha, raw.lambda)
    }
}

/// Reduced Chern character `(n, d, c, s)`: rank, `f . ch_1`, `Theta . ch_1`,
/// and `ch_2`. Closed under the lattice operations; rational entries are
/// allowed so that transforms and twists stay inside the type.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernClass {
    pub n: Rational,
    pub d: Rational,
    pub c: Rational,
    pub s: Rational,
}

impl ChernClass {
    pub fn new(n: Rational, d: Rational, c: Rational, s: Rational) -> Self {
        ChernClass { n, d, c, s }
    }

    /// Convenience constructor for integer entries.
    pub fn from_ints(n: i64, d: i64, c: i64, s: i64) -> Self {
        ChernClass {
            n: Rational::from(n),
            d: Rational::from(d),
            c: Rational::from(c),
            s: Rational::from(s),
        }
    }

    pub fn zero() -> Self {
        ChernClass::from_ints(0, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.n.is_zero() && self.d.is_zero() && self.c.is_zero() && self.s.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> ChernClass {
        ChernClass {
            n: &self.n * k,
            d: &self.d * k,
            c: &self.c * k,
            s: &self.s * k,
        }
    }
}

impl fmt::Display for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n, self.d, self.c, self.s)
    }
}

impl fmt::Debug for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChernClass{}", self)
    }
}

impl Add for &ChernClass {
    type Output = ChernClass;
    fn add(self, rhs: &ChernClass) -> ChernClass {
        ChernClass {
            n: &self.n + &rhs.n,
            d: &self.d + &rhs.d,
            c: &self.c + &rhs.c,
            s: &self.s + &rhs.s,
        }
    }
}

impl Sub for &ChernClass {
    type Output = ChernClass;
    fn sub(self, rhs: &ChernClass) -> ChernClass {
        ChernClass {
            n: &self.n - &rhs.n,
            d: &self.d - &rhs.d,
            c: &self.c - &rhs.c,
            s: &self.s - &rhs.s,
        }
    }
}

impl Neg for &ChernClass {
    type Output = ChernClass;
    fn neg(self) -> ChernClass {
        ChernClass {
            n: -&self.n,
            d: -&self.d,
            c: -&self.c,
            s: -&self.s,
        }
    }
}

impl Add for ChernClass {
    type Output = ChernClass;
    fn add(self, rhs: ChernClass) -> ChernClass {
        &self + &rhs
    }
}

impl Sub for ChernClass {
    type Output = ChernClass;
    fn sub(self, rhs: ChernClass) -> ChernClass {
        &self - &rhs
    }
}

impl Neg for ChernClass {
    type Output = ChernClass;
    fn neg(self) -> ChernClass {
        -&self
    }
}

/// A slope value; rank-zero classes sit at `+infinity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Slope {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Slope::Infinite)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(r) => Some(r),
            Slope::Infinite => None,
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Slope::Finite(r) if r.is_zero())
    }

    fn is_positive(&self) -> bool {
        match self {
            Slope::Finite(r) => r.is_positive(),
            Slope::Infinite => true,
        }
    }

    fn is_negative(&self) -> bool {
        matches!(self, Slope::Finite(r) if r.is_negative())
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Slope) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Slope) -> Ordering {
        match (self, other) {
            (Slope::Infinite, Slope::Infinite) => Ordering::Equal,
            (Slope::Infinite, Slope::Finite(_)) => Ordering::Greater,
            (Slope::Finite(_), Slope::Infinite) => Ordering::Less,
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Slope {
    type Err = crate::rational::ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "inf" {
            return Ok(Slope::Infinite);
        }
        Ok(Slope::Finite(s.parse()?))
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Fiber-degree slope `d/n`; `+infinity` on rank zero.
pub fn mu_f(x: &ChernClass) -> Slope {
    if x.n.is_zero() {
        Slope::Infinite
    } else {
        Slope::Finite(&x.d / &x.n)
    }
}

/// Slope `(c + m d)/n` against the polarisation `Theta + m f`; `+infinity`
/// on rank zero.
pub fn mu_polarisation(x: &ChernClass, params: &SurfaceParams) -> Slope {
    if x.n.is_zero() {
        Slope::Infinite
    } else {
        Slope::Finite(&(&x.c + &(params.m() * &x.d)) / &x.n)
    }
}

/// Pairing of the limit polarisation `omega_bar` with the `B`-twisted first
/// Chern character, `B = (e/2) f`:
///
/// `omega_bar . ch_1^B = (lambda/alpha) ((c - (e/2) n) + (m + alpha) d)`.
pub fn twisted_degree(x: &ChernClass, params: &SurfaceParams) -> Rational {
    let (a, _) = params.twisted_weights();
    let section = &x.c - &(params.half_e() * &x.n);
    let fiber = (params.m() + params.alpha()) * &x.d;
    a * (section + fiber)
}

/// Twisted slope `omega_bar . ch_1^B / n`; `+infinity` on rank zero.
pub fn twisted_slope(x: &ChernClass, params: &SurfaceParams) -> Slope {
    if x.n.is_zero() {
        Slope::Infinite
    } else {
        Slope::Finite(&twisted_degree(x, params) / &x.n)
    }
}

/// Caller-attested list of Harder-Narasimhan factor classes for `mu_f`,
/// ordered by decreasing slope. Construction checks the list is nonempty and
/// sums to the supplied total class; slope ordering is the caller's claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HNProfile {
    factors: Vec<ChernClass>,
}

impl HNProfile {
    pub fn new(factors: Vec<ChernClass>, total: &ChernClass) -> Result<Self, ProfileError> {
        if factors.is_empty() {
            return Err(ProfileError::Empty);
        }
        let sum = factors
            .iter()
            .fold(ChernClass::zero(), |acc, x| &acc + x);
        if &sum != total {
            return Err(ProfileError::SumMismatch {
                actual: Box::new(sum),
                expected: Box::new(total.clone()),
            });
        }
        Ok(HNProfile { factors })
    }

    pub fn factors(&self) -> &[ChernClass] {
        &self.factors
    }
}

/// Outcome of a factor-wise membership check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "factor")]
pub enum MembershipCheck {
    Satisfied,
    Violated(usize),
}

/// Checks the torsion-free side of the limit torsion pair: every factor must
/// have `mu_f < 0`, or `mu_f = 0` together with polarisation slope `<= 0`.
/// Returns the first offending factor index otherwise.
pub fn check_limit_torsion_free(profile: &HNProfile, params: &SurfaceParams) -> MembershipCheck {
    for (i, factor) in profile.factors().iter().enumerate() {
        let fiber = mu_f(factor);
        let ok = fiber.is_negative()
            || (fiber.is_zero() && !mu_polarisation(factor, params).is_positive());
        if !ok {
            return MembershipCheck::Violated(i);
        }
    }
    MembershipCheck::Satisfied
}

/// Checks the torsion side of the limit torsion pair: every factor must have
/// `mu_f > 0` (rank zero counts as `+infinity`), or `mu_f = 0` together with
/// polarisation slope `> 0`. Returns the first offending factor index
/// otherwise.
pub fn check_limit_torsion(profile: &HNProfile, params: &SurfaceParams) -> MembershipCheck {
    for (i, factor) in profile.factors().iter().enumerate() {
        let fiber = mu_f(factor);
        let ok = fiber.is_positive()
            || (fiber.is_zero() && mu_polarisation(factor, params).is_positive());
        if !ok {
            return MembershipCheck::Violated(i);
        }
    }
    MembershipCheck::Satisfied
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(e: i64, m: i64, alpha: i64, lambda: i64) -> SurfaceParams {
        SurfaceParams::from_ints(e, m, alpha, lambda).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(SurfaceParams::from_ints(0, 2, 1, 1).is_ok());
        assert!(matches!(
            SurfaceParams::from_ints(0, 0, 1, 1),
            Err(ParamError::NonPositive { name: "m", .. })
        ));
        assert!(matches!(
            SurfaceParams::from_ints(0, 2, -1, 1),
            Err(ParamError::NonPositive { name: "alpha", .. })
        ));
        assert!(matches!(
            SurfaceParams::from_ints(0, 2, 1, 0),
            Err(ParamError::NonPositive { name: "lambda", .. })
        ));
        // m + alpha - e = 0 is rejected.
        assert!(matches!(
            SurfaceParams::from_ints(3, 2, 1, 1),
            Err(ParamError::CurveConstantNotPositive { .. })
        ));
    }

    #[test]
    fn params_deserialize_with_validation() {
        let p: SurfaceParams =
            serde_json::from_str(r#"{"e":"0","m":"2","alpha":"1","lambda":"1"}"#).unwrap();
        assert_eq!(p, params(0, 2, 1, 1));
        let bad = serde_json::from_str::<SurfaceParams>(
            r#"{"e":"4","m":"2","alpha":"1","lambda":"1"}"#,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn fiber_slope() {
        assert_eq!(
            mu_f(&ChernClass::from_ints(2, 3, 0, 0)),
            Slope::Finite(Rational::ratio(3, 2))
        );
        assert_eq!(mu_f(&ChernClass::from_ints(0, 5, 0, 0)), Slope::Infinite);
        assert_eq!(mu_f(&ChernClass::from_ints(0, 0, 1, 0)), Slope::Infinite);
    }

    #[test]
    fn polarisation_slope() {
        let p = params(0, 2, 1, 1);
        assert_eq!(
            mu_polarisation(&ChernClass::from_ints(1, 1, 0, 0), &p),
            Slope::Finite(Rational::from(2))
        );
    }

    #[test]
    fn twisted_degree_examples() {
        // (lambda/alpha) ((c - (e/2) n) + (m + alpha) d)
        let p = params(0, 2, 1, 1);
        assert_eq!(
            twisted_degree(&ChernClass::from_ints(0, 0, 1, 0), &p),
            Rational::one()
        );
        assert_eq!(
            twisted_degree(&ChernClass::from_ints(0, 1, 0, 0), &p),
            Rational::from(3)
        );
        let p = params(1, 2, 2, 1);
        assert_eq!(
            twisted_degree(&ChernClass::from_ints(1, 0, 0, 0), &p),
            Rational::ratio(-1, 4)
        );
    }

    #[test]
    fn twisted_degree_matches_direct_intersection_arithmetic() {
        // Oracle: expand omega_bar . (ch_1 - (e/2) n f) with omega_bar =
        // a (Theta + m f) + b f directly from the intersection numbers
        // Theta^2 = -e, Theta.f = 1, f^2 = 0.
        let cases = [
            (params(0, 2, 1, 1), ChernClass::from_ints(2, 3, -1, 5)),
            (params(1, 2, 2, 1), ChernClass::from_ints(1, 0, 0, 0)),
            (params(-1, 1, 3, 2), ChernClass::from_ints(-2, 7, 4, -3)),
        ];
        for (p, x) in cases {
            let (a, b) = p.twisted_weights();
            // ch_1 = c Theta~ + d-part; pairings: (Theta + m f).ch_1 = c + m d,
            // f.ch_1 = ... reduced data gives omega_bar.ch_1 = a(c + m d) + b d
            // and omega_bar.f = a, so the twist subtracts (e/2) n a.
            let oracle = &(&a * &(&x.c + &(p.m() * &x.d)) + &(&b * &x.d))
                - &(&a * &(p.half_e() * &x.n));
            assert_eq!(twisted_degree(&x, &p), oracle);
        }
    }

    #[test]
    fn twisted_slope_example() {
        let p = params(0, 1, 1, 1);
        assert_eq!(
            twisted_slope(&ChernClass::from_ints(2, 0, 4, 0), &p),
            Slope::Finite(Rational::from(2))
        );
        assert_eq!(
            twisted_slope(&ChernClass::from_ints(0, 1, 0, 0), &p),
            Slope::Infinite
        );
    }

    #[test]
    fn profile_validation() {
        let total = ChernClass::from_ints(1, -1, 0, 0);
        assert!(HNProfile::new(vec![], &total).is_err());
        assert!(HNProfile::new(vec![ChernClass::from_ints(1, 0, 0, 0)], &total).is_err());
        assert!(HNProfile::new(vec![total.clone()], &total).is_ok());
    }

    #[test]
    fn torsion_free_side_checks() {
        let p = params(0, 2, 1, 1);
        let total = ChernClass::from_ints(1, -1, 0, 0);
        let profile = HNProfile::new(vec![total.clone()], &total).unwrap();
        assert_eq!(
            check_limit_torsion_free(&profile, &p),
            MembershipCheck::Satisfied
        );

        // mu_f = 0 factors fall to the polarisation slope tie-break.
        let flat = ChernClass::from_ints(1, 0, -2, 0);
        let profile = HNProfile::new(vec![flat.clone()], &flat).unwrap();
        assert_eq!(
            check_limit_torsion_free(&profile, &p),
            MembershipCheck::Satisfied
        );
        let bad = ChernClass::from_ints(1, 0, 2, 0);
        let profile = HNProfile::new(vec![bad.clone()], &bad).unwrap();
        assert_eq!(
            check_limit_torsion_free(&profile, &p),
            MembershipCheck::Violated(0)
        );
    }

    #[test]
    fn torsion_side_checks() {
        let p = params(0, 2, 1, 1);
        let total = ChernClass::from_ints(1, 1, 0, 0);
        let factors = vec![
            ChernClass::from_ints(0, 1, 0, 0),
            ChernClass::from_ints(1, 0, 0, 0),
        ];
        let profile = HNProfile::new(factors, &total).unwrap();
        // Second factor has mu_f = 0 and polarisation slope 0: not torsion.
        assert_eq!(
            check_limit_torsion(&profile, &p),
            MembershipCheck::Violated(1)
        );

        let sky = ChernClass::from_ints(0, 0, 0, 1);
        let profile = HNProfile::new(vec![sky.clone()], &sky).unwrap();
        assert_eq!(check_limit_torsion(&profile, &p), MembershipCheck::Satisfied);
    }

    #[test]
    fn slope_ordering_puts_infinity_last() {
        let mut slopes = vec![
            Slope::Infinite,
            Slope::Finite(Rational::from(-1)),
            Slope::Finite(Rational::from(3)),
        ];
        slopes.sort();
        assert_eq!(
            slopes,
            vec![
                Slope::Finite(Rational::from(-1)),
                Slope::Finite(Rational::from(3)),
                Slope::Infinite,
            ]
        );
    }

    #[test]
    fn class_json_uses_fraction_strings() {
        let x = ChernClass::from_ints(0, -1, 0, 0);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"n":"0","d":"-1","c":"0","s":"0"}"#
        );
        let y: ChernClass = serde_json::from_str(r#"{"n":"1/2","d":"0","c":"-3","s":"7/2"}"#)
            .unwrap();
        assert_eq!(
            y,
            ChernClass::new(
                Rational::ratio(1, 2),
                Rational::zero(),
                Rational::from(-3),
                Rational::ratio(7, 2),
            )
        );
    }
}
