//! Choice of a movement direction for a pair of coordinates.
//!
//! Several stages of the solver move two coordinates of a fractional
//! assignment along a ray `r` chosen so that two affine objectives with
//! gradients `a` and `b` are both non-decreasing, i.e. `a . r >= 0` and
//! `b . r >= 0`. Such a ray always exists: the two half-planes through the
//! origin intersect in a nonempty cone. Axis-parallel rays are preferred;
//! when all four fail, the cone is pinched between `a` and `b` and we take
//! the ray whose slope is the simplest rational inside it. Keeping the
//! slope's numerator and denominator small is what stops coordinate
//! denominators from compounding across the thousands of moves a large
//! instance performs.

use crate::error::{internal_check, Result};
use crate::rational::Rational;

/// The rational in `[lo, hi]` with the smallest denominator, breaking ties
/// toward the smallest absolute numerator. Classic continued-fraction walk.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_positive(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

// 0 < lo <= hi.
fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let ceil = Rational::from_bigint(lo.ceil_int());
    if &ceil <= hi {
        return ceil;
    }
    // Both endpoints sit strictly inside (n, n+1); recurse on the
    // reciprocal of the fractional parts, which swaps the endpoints.
    let n = Rational::from_bigint(lo.floor_int());
    let inner = simplest_positive(&(hi - &n).recip(), &(lo - &n).recip());
    n + inner.recip()
}

/// A ray `r` with `a . r >= 0` and `b . r >= 0`, never the zero vector.
///
/// Tries the four axis rays first. Otherwise every `a_i`, `b_i` is nonzero
/// with `sign(a_i) = -sign(b_i)`, and the feasible cone lies in two opposite
/// quadrants after flipping coordinates to make `a` positive; the returned
/// ray has the simplest slope in that cone.
pub fn joint_direction(
    a: &(Rational, Rational),
    b: &(Rational, Rational),
) -> Result<(Rational, Rational)> {
    let one = Rational::one();
    let axis = [
        (one.clone(), Rational::zero()),
        (-&one, Rational::zero()),
        (Rational::zero(), one.clone()),
        (Rational::zero(), -&one),
    ];
    for r in axis {
        if !dot(a, &r).is_negative() && !dot(b, &r).is_negative() {
            return Ok(r);
        }
    }

    internal_check!(
        (a.0.is_positive() && b.0.is_negative() || a.0.is_negative() && b.0.is_positive())
            && (a.1.is_positive() && b.1.is_negative() || a.1.is_negative() && b.1.is_positive()),
        "axis rays exhausted but gradients are not strictly opposed"
    );
    let flip_u = if a.0.is_positive() { Rational::one() } else { -Rational::one() };
    let flip_v = if a.1.is_positive() { Rational::one() } else { -Rational::one() };
    // After flipping, a~ = (p1, p2) > 0 and b~ = (-q1, -q2) < 0.
    let (p1, p2) = (&a.0 * &flip_u, &a.1 * &flip_v);
    let (q1, q2) = (-(&b.0 * &flip_u), -(&b.1 * &flip_v));

    // Quadrant II rays (-m, d) need p1/p2 <= d/m <= q1/q2; quadrant IV rays
    // (m, -d) need q1/q2 <= d/m <= p1/p2. Exactly one interval is nonempty
    // unless the cone degenerates to a single line.
    let pr = &p1 / &p2;
    let qr = &q1 / &q2;
    let rt = if pr <= qr {
        let rho = simplest_between(&pr, &qr);
        (-Rational::from_bigint(rho.denom().clone()), Rational::from_bigint(rho.numer().clone()))
    } else {
        let rho = simplest_between(&qr, &pr);
        (Rational::from_bigint(rho.denom().clone()), -Rational::from_bigint(rho.numer().clone()))
    };
    let r = (&rt.0 * &flip_u, &rt.1 * &flip_v);
    internal_check!(
        !dot(a, &r).is_negative() && !dot(b, &r).is_negative(),
        "constructed ray leaves an objective decreasing"
    );
    Ok(r)
}

fn dot(a: &(Rational, Rational), r: &(Rational, Rational)) -> Rational {
    &a.0 * &r.0 + &a.1 * &r.1
}
