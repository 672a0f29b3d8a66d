//! Action of the relative integral-transform pair on reduced Chern characters.
//!
//! The two functors of the fibration induce lattice maps [`phi`] and
//! [`phi_hat`] on `(n, d, c, s)`. Composing them in either order gives a
//! shift by one, which on the lattice is the negation [`shift`]`(_, 1)`:
//!
//! ```
//! use weierstab::surface::{ChernClass, SurfaceParams};
//! use weierstab::transform::{phi, phi_hat, shift};
//!
//! let p = SurfaceParams::from_ints(1, 2, 2, 1).unwrap();
//! let x = ChernClass::from_ints(2, 3, -1, 5);
//! assert_eq!(phi_hat(&phi(&x, &p), &p), shift(&x, 1));
//! assert_eq!(phi(&phi_hat(&x, &p), &p), shift(&x, 1));
//! ```

use crate::surface::{ChernClass, SurfaceParams};

/// Forward transform on reduced characters:
///
/// `(n, d, c, s) -> (d, -n, s - (e/2) d + e n, -c - e d + (e/2) n)`.
///
/// Rank and fiber degree swap (with a sign), so fiber-degree slope data maps
/// to rank data and back.
pub fn phi(x: &ChernClass, params: &SurfaceParams) -> ChernClass {
    let e = params.e();
    let half_e = params.half_e();
    ChernClass {
        n: x.d.clone(),
        d: -&x.n,
        c: &x.s - &(&half_e * &x.d) + e * &x.n,
        s: -&x.c - (e * &x.d) + half_e * &x.n,
    }
}

/// Reverse transform on reduced characters:
///
/// `(n, d, c, s) -> (d, -n, s + (e/2) d + e n, -(c + e d + (e/2) n))`.
pub fn phi_hat(x: &ChernClass, params: &SurfaceParams) -> ChernClass {
    let e = params.e();
    let half_e = params.half_e();
    ChernClass {
        n: x.d.clone(),
        d: -&x.n,
        c: &x.s + &(&half_e * &x.d) + e * &x.n,
        s: -(&x.c + &(e * &x.d) + half_e * &x.n),
    }
}

/// Homological shift by `k` places: multiplication by `(-1)^k`.
pub fn shift(x: &ChernClass, k: i64) -> ChernClass {
    if k.rem_euclid(2) == 0 {
        x.clone()
    } else {
        -x
    }
}

/// Character of the transform placed in its natural heart, `shift(phi(x), 1)`:
/// the class compared against test objects in the limit-phase scan.
pub fn phi_shifted(x: &ChernClass, params: &SurfaceParams) -> ChernClass {
    shift(&phi(x, params), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn params(e: i64, m: i64, alpha: i64, lambda: i64) -> SurfaceParams {
        SurfaceParams::from_ints(e, m, alpha, lambda).unwrap()
    }

    #[test]
    fn structure_sheaf_goes_to_a_fiber_class() {
        let p = params(0, 2, 1, 1);
        assert_eq!(
            phi(&ChernClass::from_ints(1, 0, 0, 0), &p),
            ChernClass::from_ints(0, -1, 0, 0)
        );
    }

    #[test]
    fn fiber_class_transforms_to_rank_one() {
        let p = params(0, 2, 1, 1);
        assert_eq!(
            phi(&ChernClass::from_ints(0, 1, 0, 0), &p),
            ChernClass::from_ints(1, 0, 0, 0)
        );
        // Nonzero e shows up only in the last two components.
        let p = params(2, 3, 1, 1);
        assert_eq!(
            phi_hat(&ChernClass::from_ints(0, 1, 0, 0), &p),
            ChernClass::new(
                Rational::one(),
                Rational::zero(),
                Rational::one(),
                Rational::from(-2),
            )
        );
    }

    #[test]
    fn skyscraper_transforms_to_a_section_class() {
        let p = params(0, 2, 1, 1);
        assert_eq!(
            phi(&ChernClass::from_ints(0, 0, 0, 1), &p),
            ChernClass::from_ints(0, 0, 1, 0)
        );
    }

    #[test]
    fn round_trip_is_negation() {
        for p in [params(0, 2, 1, 1), params(1, 2, 2, 1), params(-3, 1, 1, 2)] {
            for x in [
                ChernClass::from_ints(2, 3, -1, 5),
                ChernClass::from_ints(0, 0, 0, 1),
                ChernClass::from_ints(-1, 4, 7, -2),
            ] {
                assert_eq!(phi_hat(&phi(&x, &p), &p), -&x);
                assert_eq!(phi(&phi_hat(&x, &p), &p), -&x);
            }
        }
    }

    #[test]
    fn rank_and_fiber_degree_swap() {
        let p = params(1, 2, 2, 1);
        let x = ChernClass::from_ints(2, 3, -1, 5);
        let y = phi(&x, &p);
        assert_eq!(y.n, x.d);
        assert_eq!(y.d, -&x.n);
        // A torsion class of positive fiber degree transforms to positive rank.
        let t = ChernClass::from_ints(0, 2, 1, 1);
        assert!(phi(&t, &p).n.is_positive());
    }

    #[test]
    fn shift_alternates_sign() {
        let x = ChernClass::from_ints(2, 3, -1, 5);
        assert_eq!(shift(&x, 0), x);
        assert_eq!(shift(&x, 1), -&x);
        assert_eq!(shift(&x, 2), x);
        assert_eq!(shift(&x, -1), -&x);
        assert_eq!(phi_shifted(&x, &params(0, 2, 1, 1)), -phi(&x, &params(0, 2, 1, 1)));
    }

    #[test]
    fn transform_is_additive() {
        let p = params(1, 2, 2, 1);
        let x = ChernClass::from_ints(2, 3, -1, 5);
        let y = ChernClass::from_ints(-1, 0, 4, 2);
        assert_eq!(phi(&(&x + &y), &p), &phi(&x, &p) + &phi(&y, &p));
        assert_eq!(phi_hat(&(&x - &y), &p), &phi_hat(&x, &p) - &phi_hat(&y, &p));
    }

    /// Independent check of the section-degree component: pairing the
    /// transformed first Chern character with `Theta + m f` must give
    /// `s - (e/2) d + (e - m) n`, for any fiber weight `m`.
    #[test]
    fn pairing_with_the_polarisation_pins_the_section_component() {
        for x in [
            ChernClass::from_ints(2, 3, -1, 5),
            ChernClass::from_ints(1, -2, 0, 3),
            ChernClass::from_ints(0, 1, 2, -1),
        ] {
            for (e, m) in [(1i64, 2i64), (1, 5), (-2, 3), (-2, 7)] {
                let p = SurfaceParams::from_ints(e, m, 9, 1).unwrap();
                let y = phi(&x, &p);
                let lhs = &y.c + &(p.m() * &y.d);
                let rhs = &(&x.s - &(p.half_e() * &x.d))
                    + &(&(p.e() - p.m()) * &x.n);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
