//! Exact real-root isolation on a bounded interval.
//!
//! Roots are located with Sturm chains computed over the integers: every
//! chain element is reduced to its primitive part (content divided out, by a
//! positive scalar, so signs are untouched), which keeps coefficient growth
//! under control without ever rounding. Intervals are then narrowed by
//! bisection, with exact rational endpoint arithmetic throughout.
//!
//! The returned intervals are disjoint closed intervals whose endpoints are
//! not roots, so an interval around a root of odd multiplicity always
//! brackets a sign change of the input.
//!
//! ```
//! use weierstab::laurent::LaurentPoly;
//! use weierstab::rational::Rational;
//! use weierstab::sturm::sturm_isolate_roots;
//!
//! // u^2 - 2 on (1/2, 2): isolates sqrt(2).
//! let p = LaurentPoly::from_terms([(2, Rational::from(1)), (0, Rational::from(-2))]);
//! let roots = sturm_isolate_roots(&p, &Rational::ratio(1, 2), &Rational::from(2)).unwrap();
//! assert_eq!(roots.len(), 1);
//! let (lo, hi) = &roots[0];
//! assert!(p.eval(lo).is_negative() && p.eval(hi).is_positive());
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::rational::{Rational, Sign};

/// Default isolating interval width, `2^-20`.
pub fn default_interval_width() -> Rational {
    Rational::ratio(1, 1 << 20)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmError {
    /// The zero polynomial vanishes everywhere; root isolation is undefined.
    #[error("polynomial is identically zero, roots cannot be isolated")]
    ZeroPolynomial,
    /// Bounds must satisfy `0 < lo < hi`.
    #[error("invalid isolation interval: require 0 < lo < hi, got lo = {lo}, hi = {hi}")]
    InvalidInterval { lo: Rational, hi: Rational },
    /// The interval width tolerance must be positive.
    #[error("interval width must be positive, got {width}")]
    InvalidWidth { width: Rational },
}

/// Isolating interval for one root, with the root's multiplicity in the
/// input polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: u32,
}

/// Isolates the distinct real roots of `p` in the open interval `(lo, hi)`,
/// with the default width [`default_interval_width`].
///
/// Returns disjoint closed intervals, sorted increasingly, each containing
/// exactly one root of `p` in its interior; interval endpoints are never
/// roots.
///
/// Requires `0 < lo < hi`; errors on invalid bounds or the zero polynomial.
pub fn sturm_isolate_roots(
    p: &LaurentPoly,
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<(Rational, Rational)>, SturmError> {
    sturm_isolate_roots_within(p, lo, hi, &default_interval_width())
}

/// [`sturm_isolate_roots`] with an explicit interval width bound.
pub fn sturm_isolate_roots_within(
    p: &LaurentPoly,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<Vec<(Rational, Rational)>, SturmError> {
    if !lo.is_positive() || lo >= hi {
        return Err(SturmError::InvalidInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    let roots = isolate_in_open_interval(p, lo, hi, width)?;
    Ok(roots.into_iter().map(|r| (r.lo, r.hi)).collect())
}

/// [`sturm_isolate_roots_within`] reporting each root's multiplicity, read
/// off the greatest-common-divisor tower `p, gcd(p, p'), gcd(gcd, gcd'), ...`
pub fn isolate_roots_with_multiplicity(
    p: &LaurentPoly,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<Vec<RootInterval>, SturmError> {
    if !lo.is_positive() || lo >= hi {
        return Err(SturmError::InvalidInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    isolate_in_open_interval(p, lo, hi, width)
}

/// Worker shared with the wall scanner, which needs `lo = 0`: roots are
/// isolated in the open interval `(lo, hi)` for any `0 <= lo < hi`.
pub(crate) fn isolate_in_open_interval(
    p: &LaurentPoly,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<Vec<RootInterval>, SturmError> {
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if lo.is_negative() || lo >= hi {
        return Err(SturmError::InvalidInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    if !width.is_positive() {
        return Err(SturmError::InvalidWidth {
            width: width.clone(),
        });
    }

    // Multiplying by u^-min_exp does not move roots in (0, infinity), and a
    // root manufactured at u = 0 is outside the open interval.
    let tower = SquarefreeTower::build(IntPoly::from_laurent(p));
    let chain = &tower.chains[0];

    let mut total = chain.count_half_open(lo, hi);
    let hi_is_root = chain.eval_sign(hi) == Sign::Zero;
    if hi_is_root {
        // The half-open count includes hi itself; hi is not in (lo, hi).
        total -= 1;
    }
    if total == 0 {
        return Ok(Vec::new());
    }

    // Cells each holding exactly one distinct root of p in (lo, hi], in
    // ascending order; the cell whose root is exactly hi is dropped.
    let mut cells = Vec::with_capacity(total);
    split_into_cells(chain, lo, hi, total + usize::from(hi_is_root), &mut cells);
    if hi_is_root {
        cells.pop();
    }

    let half_width = width * &Rational::ratio(1, 2);
    let quarter_width = width * &Rational::ratio(1, 4);
    let mut out: Vec<RootInterval> = Vec::with_capacity(cells.len());
    let mut floor: Option<Rational> = None;
    for (mut a, mut b) in cells {
        // Narrow to half the requested width, keeping the root in (a, b].
        while &(&b - &a) > &half_width {
            let mid = midpoint(&a, &b);
            if chain.count_half_open(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }

        // A root sitting exactly on b would make b a root endpoint; nudge b
        // past it without capturing the next root or leaving (lo, hi).
        if chain.eval_sign(&b) == Sign::Zero {
            let root = b.clone();
            let mut step = quarter_width.clone().min(half_gap(&root, hi));
            loop {
                let cand = &root + &step;
                if chain.eval_sign(&cand) != Sign::Zero && chain.count_half_open(&a, &cand) == 1 {
                    b = cand;
                    break;
                }
                step = half(&step);
            }
        }

        // The left endpoint must be a non-root and must clear the previous
        // interval. Candidates approach the root from below, so the count
        // check keeps the root inside.
        let needs_left_fix = |a: &Rational, floor: &Option<Rational>, chain: &SturmChain| {
            chain.eval_sign(a) == Sign::Zero || floor.as_ref().is_some_and(|f| a <= f)
        };
        while needs_left_fix(&a, &floor, chain) {
            let mut step = half(&(&b - &a));
            loop {
                let cand = &a + &step;
                if chain.eval_sign(&cand) != Sign::Zero && chain.count_half_open(&cand, &b) == 1 {
                    a = cand;
                    break;
                }
                step = half(&step);
            }
        }

        debug_assert!(&(&b - &a) <= width);
        let multiplicity = tower.multiplicity_in(&a, &b);
        floor = Some(b.clone());
        out.push(RootInterval {
            lo: a,
            hi: b,
            multiplicity,
        });
    }
    Ok(out)
}

/// Recursively partitions `(a, b]` (holding `count >= 1` roots) into cells of
/// one root each, appended in ascending order.
fn split_into_cells(
    chain: &SturmChain,
    a: &Rational,
    b: &Rational,
    count: usize,
    out: &mut Vec<(Rational, Rational)>,
) {
    if count == 1 {
        out.push((a.clone(), b.clone()));
        return;
    }
    let mid = midpoint(a, b);
    let left = chain.count_half_open(a, &mid);
    if left > 0 {
        split_into_cells(chain, a, &mid, left, out);
    }
    if count - left > 0 {
        split_into_cells(chain, &mid, b, count - left, out);
    }
}

fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) * Rational::ratio(1, 2)
}

fn half(x: &Rational) -> Rational {
    x * &Rational::ratio(1, 2)
}

fn half_gap(from: &Rational, to: &Rational) -> Rational {
    half(&(to - from))
}

/// Squarefree parts of the gcd tower `p_1 = p, p_{k+1} = gcd(p_k, p_k')`.
/// The roots of `chains[k-1]` are exactly the roots of `p` of multiplicity
/// at least `k`, each simple.
struct SquarefreeTower {
    chains: Vec<SturmChain>,
}

impl SquarefreeTower {
    fn build(p: IntPoly) -> Self {
        let mut chains = Vec::new();
        let mut current = p.primitive_part();
        loop {
            if current.degree() == 0 {
                if chains.is_empty() {
                    // Nonzero constant: no roots anywhere, one trivial chain.
                    chains.push(SturmChain::new(current));
                }
                break;
            }
            let g = IntPoly::gcd(&current, &current.derivative());
            chains.push(SturmChain::new(current.divide_exact(&g)));
            current = g;
        }
        SquarefreeTower { chains }
    }

    /// Multiplicity of the single root isolated inside `(a, b)`, with `a`,
    /// `b` non-roots: the deepest tower level still seeing the root.
    fn multiplicity_in(&self, a: &Rational, b: &Rational) -> u32 {
        let mut mult = 1u32;
        for chain in self.chains.iter().skip(1) {
            if chain.count_half_open(a, b) == 1 {
                mult += 1;
            } else {
                break;
            }
        }
        mult
    }
}

/// Sturm chain of a squarefree primitive integer polynomial.
struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    fn new(squarefree: IntPoly) -> Self {
        debug_assert!(!squarefree.is_zero());
        let mut polys = vec![squarefree];
        if polys[0].degree() > 0 {
            polys.push(polys[0].derivative().primitive_part());
            loop {
                let n = polys.len();
                let rem = IntPoly::primitive_rem(&polys[n - 2], &polys[n - 1]);
                if rem.is_zero() {
                    break;
                }
                polys.push(rem.negated());
            }
        }
        SturmChain { polys }
    }

    fn eval_sign(&self, x: &Rational) -> Sign {
        self.polys[0].eval_sign(x)
    }

    /// Sign variations at `x`, zeros dropped.
    fn variations(&self, x: &Rational) -> usize {
        let mut last: Option<Sign> = None;
        let mut v = 0;
        for p in &self.polys {
            let s = p.eval_sign(x);
            if s == Sign::Zero {
                continue;
            }
            if let Some(prev) = last {
                if prev != s {
                    v += 1;
                }
            }
            last = Some(s);
        }
        v
    }

    /// Number of roots in the half-open interval `(a, b]`.
    fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        let va = self.variations(a);
        let vb = self.variations(b);
        debug_assert!(va >= vb, "sign variations must not increase");
        va - vb
    }
}

/// Dense integer polynomial, ascending coefficients, no leading zeros; the
/// zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Clears denominators and the exponent offset: `p * u^-min_exp` scaled
    /// to integer coefficients. Positive scalings only, so every sign on
    /// `u > 0` is preserved.
    fn from_laurent(p: &LaurentPoly) -> Self {
        let Some(min) = p.min_exp() else {
            return IntPoly { coeffs: Vec::new() };
        };
        let mut lcm = BigInt::one();
        for (_, c) in p.terms() {
            lcm = lcm.lcm(c.denom());
        }
        let degree = (p.max_exp().unwrap() - min) as usize;
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        for (e, c) in p.terms() {
            coeffs[(e - min) as usize] = c.numer() * (&lcm / c.denom());
        }
        IntPoly::from_coeffs(coeffs).primitive_part()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and for the zero polynomial.
    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn negated(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly { coeffs: Vec::new() };
        }
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the content; the scalar is positive, so the sign pattern
    /// on the real line is unchanged.
    fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let content = self.content();
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &content).collect(),
        }
    }

    /// Sign of `p(x)` via the homogeneous integer form `sum a_i num^i
    /// den^(n-i)`; exact for every rational `x`.
    fn eval_sign(&self, x: &Rational) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let num = x.numer();
        let den = x.denom();
        let n = self.degree();
        let mut num_pows = Vec::with_capacity(n + 1);
        let mut den_pows = Vec::with_capacity(n + 1);
        num_pows.push(BigInt::one());
        den_pows.push(BigInt::one());
        for i in 1..=n {
            num_pows.push(&num_pows[i - 1] * num);
            den_pows.push(&den_pows[i - 1] * den);
        }
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &num_pows[i] * &den_pows[n - i];
        }
        match acc.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }

    /// Primitive part of the remainder of `a / b`, carrying the sign of the
    /// exact rational remainder: the elimination multiplier `|lead(b)|` and
    /// the content divided out are both positive.
    fn primitive_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
        debug_assert!(!b.is_zero());
        let db = b.degree();
        let lead_abs = b.leading().abs();
        let lead_sign = if b.leading().is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::one()
        };
        let mut r = a.coeffs.clone();
        loop {
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
            let dr = r.len() - 1;
            let lr = r.last().expect("nonzero remainder").clone();
            for c in r.iter_mut() {
                *c *= &lead_abs;
            }
            let factor = &lead_sign * &lr;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + i] -= &factor * bc;
            }
            debug_assert!(r[dr].is_zero());
        }
        IntPoly::from_coeffs(r).primitive_part()
    }

    /// Primitive gcd with positive leading coefficient.
    fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut x = a.primitive_part();
        let mut y = b.primitive_part();
        while !y.is_zero() {
            let r = IntPoly::primitive_rem(&x, &y);
            x = y;
            y = r;
        }
        if !x.is_zero() && x.leading().is_negative() {
            x = x.negated();
        }
        x
    }

    /// Exact quotient `self / b` (no remainder), reduced to primitive form.
    /// Panics if the division is not exact.
    fn divide_exact(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "division by the zero polynomial");
        let da = self.degree();
        let db = b.degree();
        assert!(da >= db && !self.is_zero(), "quotient degree underflow");
        let lead = Rational::from(b.leading().clone());
        let mut rem: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        let mut quot = vec![Rational::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = &rem[db + k] / &lead;
            for (i, bc) in b.coeffs.iter().enumerate() {
                let sub = &c * &Rational::from(bc.clone());
                rem[k + i] -= sub;
            }
            quot[k] = c;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "polynomial division was not exact"
        );
        // Clear denominators and content; positive scalars only.
        let mut lcm = BigInt::one();
        for c in &quot {
            lcm = lcm.lcm(c.denom());
        }
        IntPoly::from_coeffs(
            quot.iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
        .primitive_part()
    }
}
