//! Central charges along a curve of polarisations.
//!
//! For `omega = u (Theta + m f) + v f` the charge of a class `x = (n, d, c, s)`
//! is
//!
//! `Z(x) = -s + (omega^2/2) n + i omega.ch_1 = -s + ((m - e/2) u^2 + u v) n
//!        + i ((c + m d) u + d v)`,
//!
//! held symbolically as a pair of [`BiPoly`] values. The large-volume regime
//! is reached along the curve
//!
//! `v(u) = (m + alpha - e)/u - (m - e/2) u`,
//!
//! on which `omega^2/2` is the constant `m + alpha - e` and `v -> infinity`
//! corresponds to `u -> 0+`. Substituting the curve collapses the charge to
//! exact Laurent data in `u`, so "for all sufficiently large `v`" questions
//! become lowest-order sign inspections, with no series truncation anywhere.

use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::laurent::LaurentPoly;
use crate::rational::{Rational, Sign};
use crate::surface::{twisted_degree, ChernClass, SurfaceParams};
use crate::transform::phi_shifted;

/// Central charge as exact polynomial data in `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeExpr {
    pub real: BiPoly,
    pub imag: BiPoly,
}

impl ChargeExpr {
    /// Exact value at a polarisation point.
    pub fn eval(&self, u: &Rational, v: &Rational) -> (Rational, Rational) {
        (self.real.eval(u, v), self.imag.eval(u, v))
    }
}

/// Central charge restricted to the polarisation curve: exact Laurent data
/// in `u`, valid for all `u > 0` on the curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveCharge {
    pub real: LaurentPoly,
    pub imag: LaurentPoly,
}

/// Eventual position of a curve charge as `u -> 0+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    /// Eventually in `{r e^(i pi phi) : r > 0, phi in (0, 1]}`: either the
    /// imaginary part is eventually positive, or it vanishes identically and
    /// the real part is eventually negative.
    InUpperHalfPlane,
    /// The identically zero charge (only the zero class).
    Zero,
    /// Eventually outside the allowed half-plane (imaginary part eventually
    /// negative, or zero imaginary part with eventually positive real part).
    Inadmissible,
}

impl CurveCharge {
    pub fn eval(&self, u: &Rational) -> (Rational, Rational) {
        (self.real.eval(u), self.imag.eval(u))
    }

    /// Classifies where the charge sits for all sufficiently small `u > 0`.
    pub fn admissibility(&self) -> Admissibility {
        match self.imag.sign_at_zero_plus() {
            Sign::Positive => Admissibility::InUpperHalfPlane,
            Sign::Negative => Admissibility::Inadmissible,
            Sign::Zero => match self.real.sign_at_zero_plus() {
                Sign::Negative => Admissibility::InUpperHalfPlane,
                Sign::Zero => Admissibility::Zero,
                Sign::Positive => Admissibility::Inadmissible,
            },
        }
    }
}

/// Symbolic central charge of `x`:
/// real `= -s + (m - e/2) n u^2 + n u v`, imaginary `= (c + m d) u + d v`.
pub fn build_charge(x: &ChernClass, params: &SurfaceParams) -> ChargeExpr {
    let real = BiPoly::from_terms([
        (0, 0, -&x.s),
        (2, 0, &params.half_ample_square() * &x.n),
        (1, 1, x.n.clone()),
    ]);
    let imag = BiPoly::from_terms([
        (1, 0, &x.c + &(params.m() * &x.d)),
        (0, 1, x.d.clone()),
    ]);
    ChargeExpr { real, imag }
}

/// The curve `v(u) = (m + alpha - e) u^-1 - (m - e/2) u`. Its leading
/// coefficient is positive by the parameter invariants, so `v -> +infinity`
/// as `u -> 0+`.
pub fn polarisation_curve(params: &SurfaceParams) -> LaurentPoly {
    LaurentPoly::from_terms([
        (-1, params.curve_constant()),
        (1, -params.half_ample_square()),
    ])
}

/// Restricts a charge expression to the polarisation curve.
///
/// For charge shapes (`u`-degree `<= 2`, `v`-degree `<= 1`) the result only
/// involves exponents in `[-1, 3]`; this is asserted, not assumed.
pub fn substitute_curve(z: &ChargeExpr, params: &SurfaceParams) -> CurveCharge {
    let curve = polarisation_curve(params);
    let real = z.real.substitute_v(&curve);
    let imag = z.imag.substitute_v(&curve);
    for part in [&real, &imag] {
        if let (Some(min), Some(max)) = (part.min_exp(), part.max_exp()) {
            assert!(
                min >= -1 && max <= 3,
                "curve charge exponents out of range [-1, 3]: {part}"
            );
        }
    }
    CurveCharge { real, imag }
}

/// Charge of `x` already restricted to the curve.
pub fn curve_charge(x: &ChernClass, params: &SurfaceParams) -> CurveCharge {
    substitute_curve(&build_charge(x, params), params)
}

/// Exact defect of the twist identity
///
/// `omega_bar . ch_1^B (x) = -(lambda/alpha) Re Z(phi_shifted(x))`
///
/// on the curve: returns `twisted_degree(x) + (lambda/alpha) Re Z` as a
/// Laurent polynomial, which is identically zero for every class and every
/// valid parameter set. Exposed so the cancellation can be checked exactly
/// rather than trusted.
pub fn twist_identity_residual(x: &ChernClass, params: &SurfaceParams) -> LaurentPoly {
    let transformed = phi_shifted(x, params);
    let restricted = curve_charge(&transformed, params);
    let (a, _) = params.twisted_weights();
    &LaurentPoly::constant(twisted_degree(x, params)) + &restricted.real.scale(&a)
}
