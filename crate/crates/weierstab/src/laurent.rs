//! Laurent polynomials in one variable `u` with exact rational coefficients.
//!
//! Quantities that depend on the position along the polarisation curve are
//! finite sums `sum c_k u^k` with integer exponents of either sign. Their
//! behaviour as `u -> 0+` is decided exactly by the lowest-order term, which
//! replaces any notion of "evaluate at a large parameter and look at the
//! sign".
//!
//! ```
//! use weierstab::laurent::LaurentPoly;
//! use weierstab::rational::{Rational, Sign};
//!
//! // 3*u^-1 - 5 + 2*u
//! let p = LaurentPoly::from_terms([
//!     (-1, Rational::from(3)),
//!     (0, Rational::from(-5)),
//!     (1, Rational::from(2)),
//! ]);
//! assert_eq!(p.sign_at_zero_plus(), Sign::Positive);
//! assert_eq!(p.to_string(), "3*u^-1 - 5 + 2*u");
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{Rational, Sign};

/// Finite sum of terms `c_k u^k`, `k` any integer. Zero coefficients are
/// never stored, so the term list is a canonical form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

/// Serialized form of one term, exponent ascending within a polynomial.
#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponent: i64,
    coefficient: Rational,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::term(0, c)
    }

    /// The single term `c * u^exp`.
    pub fn term(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// Sums the given terms; repeated exponents accumulate, zeros drop out.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (exp, c) in terms {
            p.add_term(exp, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `u^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest-order term, the one that dominates as `u -> 0+`.
    pub fn lowest_term(&self) -> Option<(i64, &Rational)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn highest_term(&self) -> Option<(i64, &Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.lowest_term().map(|(e, _)| e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.highest_term().map(|(e, _)| e)
    }

    /// Sign of `p(u)` for all sufficiently small `u > 0`: the sign of the
    /// lowest-order coefficient, and [`Sign::Zero`] only for the zero
    /// polynomial. See [`LaurentPoly::dominance_bound`] for an explicit
    /// threshold below which the sign is attained.
    pub fn sign_at_zero_plus(&self) -> Sign {
        match self.lowest_term() {
            None => Sign::Zero,
            Some((_, c)) => c.sign(),
        }
    }

    /// A positive threshold `u*` such that the sign of `p(u)` equals
    /// [`LaurentPoly::sign_at_zero_plus`] for every `0 < u < u*`. `None` for
    /// the zero polynomial.
    ///
    /// With lowest term `c * u^k`, `u* = min(1, |c| / (1 + sum |c_j|))` over
    /// the higher-order coefficients: for `u < u* <= 1` the tail is bounded by
    /// `u^(k+1) * sum |c_j| < |c| * u^k`.
    pub fn dominance_bound(&self) -> Option<Rational> {
        let (low_exp, low_coeff) = self.lowest_term()?;
        let tail: Rational = self
            .terms
            .iter()
            .filter(|(e, _)| **e > low_exp)
            .map(|(_, c)| c.abs())
            .sum();
        let bound = low_coeff.abs() / (Rational::one() + tail);
        Some(bound.min(Rational::one()))
    }

    /// Multiplies by `c * u^exp`.
    pub fn mul_term(&self, exp: i64, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e + exp, k * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        self.mul_term(0, c)
    }

    pub fn pow(&self, exp: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Derivative in `u`; the constant term drops out.
    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e - 1, c * &Rational::from(*e))),
        )
    }

    /// Exact evaluation. Panics at `x = 0` when negative exponents are
    /// present; callers evaluate on `u > 0`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| c * &x.pow(*e))
            .sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else if coeff.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let one = mag == Rational::one();
            match (*exp, one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("u")?,
                (1, false) => write!(f, "{mag}*u")?,
                (e, true) => write!(f, "u^{e}")?,
                (e, false) => write!(f, "{mag}*u^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(e, c)| TermRepr {
            exponent: *e,
            coefficient: c.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        Ok(LaurentPoly::from_terms(
            terms.into_iter().map(|t| (t.exponent, t.coefficient)),
        ))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
