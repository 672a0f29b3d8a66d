//! Bivariate polynomials in `(u, v)` with exact rational coefficients.
//!
//! Central charges along the two-parameter family of polarisations are
//! polynomials in `u` and `v`. They stay symbolic until a curve `v = v(u)` is
//! substituted, at which point they collapse to [`LaurentPoly`] data in `u`
//! alone.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::laurent::LaurentPoly;
use crate::rational::Rational;

/// Finite sum of terms `c * u^j * v^k` with `j, k >= 0`. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    /// The single term `c * u^u_exp * v^v_exp`.
    pub fn term(u_exp: u32, v_exp: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((u_exp, v_exp), c);
        }
        BiPoly { terms }
    }

    /// Sums the given terms; repeated keys accumulate, zeros drop out.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut p = BiPoly::zero();
        for (j, k, c) in terms {
            p.add_term(j, k, c);
        }
        p
    }

    fn add_term(&mut self, u_exp: u32, v_exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((u_exp, v_exp))
            .or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(u_exp, v_exp));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u_exp: u32, v_exp: u32) -> Rational {
        self.terms
            .get(&(u_exp, v_exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms as `(u_exp, v_exp, coefficient)`, lexicographic in the exponents.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|((j, k), c)| (*j, *k, c))
    }

    /// Highest power of `u` appearing; `None` for the zero polynomial.
    pub fn u_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(j, _)| *j).max()
    }

    /// Highest power of `v` appearing; `None` for the zero polynomial.
    pub fn v_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, k)| *k).max()
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|((j, k), c)| c * &u.pow(*j as i64) * &v.pow(*k as i64))
            .sum()
    }

    /// Substitutes `v = curve(u)`, leaving a Laurent polynomial in `u`.
    pub fn substitute_v(&self, curve: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((j, k), c) in self.terms.iter() {
            let v_part = curve.pow(*k);
            out = &out + &v_part.mul_term(*j as i64, c);
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((j, k), coeff)) in self.terms.iter().enumerate() {
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
            let mut factors = Vec::new();
            if mag != Rational::one() || (*j == 0 && *k == 0) {
                factors.push(mag.to_string());
            }
            match j {
                0 => {}
                1 => factors.push("u".to_owned()),
                _ => factors.push(format!("u^{j}")),
            }
            match k {
                0 => {}
                1 => factors.push("v".to_owned()),
                _ => factors.push(format!("v^{k}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}

/// Serializes as a term list `[{"u": j, "v": k, "coefficient": "p/q"}, ...]`
/// in the canonical exponent order.
impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct TermRepr<'a> {
            u: u32,
            v: u32,
            coefficient: &'a Rational,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((j, k), c) in self.terms.iter() {
            seq.serialize_element(&TermRepr {
                u: *j,
                v: *k,
                coefficient: c,
            })?;
        }
        seq.end()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((j, k), c) in rhs.terms.iter() {
            out.add_term(*j, *k, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((j, k), c) in rhs.terms.iter() {
            out.add_term(*j, *k, -c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BiPoly {
        // 2*u^2 + u*v - 3
        BiPoly::from_terms([
            (2, 0, Rational::from(2)),
            (1, 1, Rational::one()),
            (0, 0, Rational::from(-3)),
        ])
    }

    #[test]
    fn degrees_and_coefficients() {
        let p = sample();
        assert_eq!(p.u_degree(), Some(2));
        assert_eq!(p.v_degree(), Some(1));
        assert_eq!(p.coeff(1, 1), Rational::one());
        assert_eq!(p.coeff(0, 1), Rational::zero());
        assert_eq!(BiPoly::zero().u_degree(), None);
    }

    #[test]
    fn eval_matches_terms() {
        let p = sample();
        let u = Rational::ratio(1, 2);
        let v = Rational::from(4);
        // 2*(1/4) + (1/2)*4 - 3 = 1/2 + 2 - 3 = -1/2
        assert_eq!(p.eval(&u, &v), Rational::ratio(-1, 2));
    }

    #[test]
    fn substitution_agrees_with_pointwise_eval() {
        let p = sample();
        // v(u) = 3*u^-1 - 2*u
        let curve = LaurentPoly::from_terms([
            (-1, Rational::from(3)),
            (1, Rational::from(-2)),
        ]);
        let collapsed = p.substitute_v(&curve);
        for num in 1..6i64 {
            let u = Rational::ratio(num, 7);
            let v = curve.eval(&u);
            assert_eq!(collapsed.eval(&u), p.eval(&u, &v));
        }
    }

    #[test]
    fn display_orders_terms() {
        assert_eq!(sample().to_string(), "-3 + u*v + 2*u^2");
        assert_eq!(BiPoly::zero().to_string(), "0");
    }
}
