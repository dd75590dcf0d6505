//! Rounding a clique-supported fractional point into an integral cut.
//!
//! The relaxation stage ends with an assignment `y` whose fractional
//! coordinates span a clique `C`, together with floor guarantees on the
//! relaxed objectives. This module finishes the job in two moves:
//!
//! 1. [`collapse_to_corner`] pushes the fractional mass inside `C` to the
//!    box boundary until at most one coordinate is fractional, never
//!    decreasing a pair of penalized objectives `f2`, `g2` that lower-bound
//!    the plain objectives `f0`, `g0`.
//! 2. [`select_integral`] rounds the last fractional coordinate (if any) to
//!    whichever end keeps both plain objectives nonnegative, and emits a
//!    [`RoundingCertificate`] holding the exact rational margins that make
//!    the choice verifiable after the fact.
//!
//! The penalized objectives subtract from `f0` and `g0` a quadratic charge
//! for drifting the support mass away from its starting value, plus half
//! the remaining spread `sum x(1-x)` over the support. Because the support
//! is a clique, both penalized objectives are affine along any direction
//! that only moves support coordinates, which is what makes the collapse
//! loop exact and monotone.

use crate::error::{internal_check, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;
use crate::relax::{eval_objectives, CliqueSupport, FractionalAssignment, Params};

/// Which end the final fractional coordinate was rounded to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotChoice {
    /// Rounded up to one.
    Plus,
    /// Rounded down to zero.
    Minus,
}

/// Exact rational audit trail for the rounding stage.
///
/// Every field is a value the solver asserted while rounding; a verifier
/// can recompute each one from the witness and the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingCertificate {
    /// Surplus `max(0, ||V|| - (s+t+1)|V|)` of the working graph.
    pub t_surplus: Rational,
    /// Lower bound kept on the penalized first objective: `p^2 T - p(1-p)T/(2s+2t+4)`.
    pub x_bound: Rational,
    /// Lower bound kept on the penalized second objective, with `p` and
    /// `1-p` exchanged.
    pub y_bound: Rational,
    /// Mass margin `sum(y) - (s+t+1)p - 1/2` of the fractional point.
    pub a_margin: Rational,
    /// Complementary mass margin `sum(1-y) - (s+t+1)(1-p) - 1/2`.
    pub b_margin: Rational,
    /// Pivot-local margin: `a_margin` minus the `y`-mass on non-neighbors
    /// of the pivot. Present only when a pivot coordinate existed.
    pub a_local: Option<Rational>,
    /// Pivot-local complementary margin.
    pub b_local: Option<Rational>,
    /// The vertex whose coordinate stayed fractional after the collapse.
    pub pivot: Option<u32>,
    /// Direction the pivot was rounded, when there was one.
    pub chosen: Option<PivotChoice>,
    /// First objective `||A|| - s|A|` of the selected integral point.
    pub f0: Rational,
    /// Second objective `||B|| - t|B|` of the selected integral point.
    pub g0: Rational,
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// Mass the assignment puts on the support minus the anchor's mass there.
fn support_drift(
    support: &CliqueSupport,
    anchor: &FractionalAssignment,
    x: &FractionalAssignment,
) -> Rational {
    let mut d = Rational::zero();
    for v in support.vertices().iter() {
        d += x.value(v) - anchor.value(v);
    }
    d
}

/// Remaining spread `sum_{v in C} x_v (1 - x_v)` over the support.
fn support_spread(support: &CliqueSupport, x: &FractionalAssignment) -> Rational {
    let mut s = Rational::zero();
    for v in support.vertices().iter() {
        let xv = x.value(v);
        s += xv - xv.square();
    }
    s
}

/// Evaluates the penalized objectives `(f2, g2)` at `x`.
///
/// `f2 = f0 - (drift + 1-p)^2 / 2 - spread / 2` and
/// `g2 = g0 - (drift - p)^2 / 2 - spread / 2`, where `drift` is the support
/// mass of `x` minus that of `anchor` and `spread` is `sum_C x(1-x)`. Both
/// are lower bounds for the corresponding plain objectives, and both are
/// affine in any single support coordinate because the support is a clique.
pub fn eval_penalized(
    g: &Graph,
    params: &Params,
    support: &CliqueSupport,
    anchor: &FractionalAssignment,
    x: &FractionalAssignment,
) -> Result<(Rational, Rational)> {
    let n = g.vertex_count();
    if anchor.len() != n {
        return Err(Error::DimensionMismatch {
            got: anchor.len(),
            want: n,
        });
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch { got: x.len(), want: n });
    }
    for v in support.vertices().iter() {
        if (v as usize) >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let base = eval_objectives(g, params, x)?;
    let drift = support_drift(support, anchor, x);
    let spread = support_spread(support, x);
    let f_shift = (&drift + &params.p_bar).square();
    let g_shift = (&drift - &params.p).square();
    let f2 = &base.f0 - (&f_shift + &spread) * half();
    let g2 = &base.g0 - (&g_shift + &spread) * half();
    Ok((f2, g2))
}

/// Slopes of `(f2, g2)` in the coordinate of support vertex `v` at `x`.
fn penalized_slopes(
    g: &Graph,
    params: &Params,
    support: &CliqueSupport,
    anchor: &FractionalAssignment,
    x: &FractionalAssignment,
    v: u32,
) -> (Rational, Rational) {
    let mut nbr_mass = Rational::zero();
    for &u in g.neighbors(v) {
        nbr_mass += x.value(u);
    }
    let degree = Rational::from(g.degree(v));
    let drift = support_drift(support, anchor, x);
    let spread_slope = half() - x.value(v);
    let df2 = &nbr_mass - &params.s - (&drift + &params.p_bar) - &spread_slope;
    let dg2 = &nbr_mass - &degree + &params.t - (&drift - &params.p) - spread_slope;
    (df2, dg2)
}

/// Largest step `alpha >= 0` keeping `x_u + alpha r_u` and `x_v + alpha r_v`
/// inside `[0, 1]`.
fn box_step(xu: &Rational, xv: &Rational, r: &(Rational, Rational)) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for (coord, slope) in [(xu, &r.0), (xv, &r.1)] {
        let room = if slope.is_positive() {
            Rational::one() - coord
        } else if slope.is_negative() {
            coord.clone()
        } else {
            continue;
        };
        let limit = room / slope.abs();
        best = Some(match best {
            Some(b) => b.min(limit),
            None => limit,
        });
    }
    match best {
        Some(b) => Ok(b),
        None => Err(Error::InternalAssertion(
            "joint direction had no moving coordinate".into(),
        )),
    }
}

/// Drives the support coordinates of `anchor` to the box boundary until at
/// most one remains fractional, without decreasing either penalized
/// objective.
///
/// Each iteration takes the two smallest-id fractional support coordinates,
/// asks [`crate::joint_direction`] for a ray along which both penalized
/// objectives are non-decreasing (their restriction to the pair is affine),
/// and steps to the box boundary. The affine prediction is re-checked
/// against a from-scratch evaluation after every move.
pub fn collapse_to_corner(
    g: &Graph,
    params: &Params,
    support: &CliqueSupport,
    anchor: &FractionalAssignment,
) -> Result<FractionalAssignment> {
    let fr = anchor.fractional_support();
    internal_check!(
        fr == *support.vertices(),
        "collapse input must be fractional exactly on the support"
    );
    let (mut f2, mut g2) = eval_penalized(g, params, support, anchor, anchor)?;
    let start = (f2.clone(), g2.clone());
    let mut values: Vec<Rational> = anchor.values().to_vec();
    let mut rounds = 0usize;
    loop {
        let z = FractionalAssignment::new(values.clone())?;
        let frac: Vec<u32> = support
            .vertices()
            .iter()
            .filter(|&v| {
                let zv = z.value(v);
                zv.is_positive() && *zv < Rational::one()
            })
            .collect();
        if frac.len() <= 1 {
            let (fin_f2, fin_g2) = eval_penalized(g, params, support, anchor, &z)?;
            internal_check!(
                fin_f2 == f2 && fin_g2 == g2,
                "tracked penalized objectives drifted from a direct evaluation"
            );
            internal_check!(
                f2 >= start.0 && g2 >= start.1,
                "collapse decreased a penalized objective"
            );
            return Ok(z);
        }
        rounds += 1;
        internal_check!(
            rounds <= support.len() + 1,
            "collapse failed to terminate within the support size"
        );
        let (u, v) = (frac[0], frac[1]);
        let a = {
            let (du, _) = penalized_slopes(g, params, support, anchor, &z, u);
            let (dv, _) = penalized_slopes(g, params, support, anchor, &z, v);
            (du, dv)
        };
        let b = {
            let (_, du) = penalized_slopes(g, params, support, anchor, &z, u);
            let (_, dv) = penalized_slopes(g, params, support, anchor, &z, v);
            (du, dv)
        };
        let r = crate::direction::joint_direction(&a, &b)?;
        let alpha = box_step(z.value(u), z.value(v), &r)?;
        internal_check!(alpha.is_positive(), "collapse step must move");
        values[u as usize] = z.value(u) + &alpha * &r.0;
        values[v as usize] = z.value(v) + &alpha * &r.1;
        let moved = FractionalAssignment::new(values.clone())?;
        let predicted_f2 = &f2 + &alpha * (&a.0 * &r.0 + &a.1 * &r.1);
        let predicted_g2 = &g2 + &alpha * (&b.0 * &r.0 + &b.1 * &r.1);
        let (next_f2, next_g2) = eval_penalized(g, params, support, anchor, &moved)?;
        internal_check!(
            next_f2 == predicted_f2 && next_g2 == predicted_g2,
            "penalized objectives are affine on support pairs; prediction missed"
        );
        internal_check!(
            next_f2 >= f2 && next_g2 >= g2,
            "collapse step decreased a penalized objective"
        );
        let saturated = |w: u32| {
            let zw = &values[w as usize];
            zw.is_zero() || *zw == Rational::one()
        };
        internal_check!(
            saturated(u) || saturated(v),
            "box step must saturate one of the pair"
        );
        f2 = next_f2;
        g2 = next_g2;
    }
}

struct Candidate {
    a_set: VertexSet,
    f0: Rational,
    g0: Rational,
}

/// Accepts an integral assignment iff it is a genuine two-sided cut with
/// `f0 >= 0`, `g0 >= 0`, and `f0 + g0 >= T - 1`.
fn accept_candidate(
    g: &Graph,
    params: &Params,
    t_surplus: &Rational,
    x: &FractionalAssignment,
) -> Result<Option<Candidate>> {
    internal_check!(x.is_integral(), "rounding candidate must be integral");
    let ones: Vec<u32> = (0..g.vertex_count() as u32)
        .filter(|&v| *x.value(v) == Rational::one())
        .collect();
    if ones.is_empty() || ones.len() == g.vertex_count() {
        return Ok(None);
    }
    let vals = eval_objectives(g, params, x)?;
    let floor = t_surplus - Rational::one();
    if !vals.f0.is_negative() && !vals.g0.is_negative() && &vals.f0 + &vals.g0 >= floor {
        Ok(Some(Candidate {
            a_set: VertexSet::new(ones),
            f0: vals.f0,
            g0: vals.g0,
        }))
    } else {
        Ok(None)
    }
}

fn with_coordinate(
    x: &FractionalAssignment,
    v: u32,
    value: Rational,
) -> Result<FractionalAssignment> {
    let mut values = x.values().to_vec();
    values[v as usize] = value;
    FractionalAssignment::new(values)
}

/// Rounds the collapsed point `z` to an integral cut of the working graph.
///
/// The anchor `y` supplies the exact mass margins `a_margin`, `b_margin`
/// whose positivity, together with the floors `x_bound`, `y_bound` kept by
/// the relaxation, guarantees that at least one of the two roundings of the
/// pivot coordinate yields `f0 >= 0`, `g0 >= 0`, and `f0 + g0 >= T - 1`.
/// Returns the vertex set assigned to the first side plus the certificate.
pub fn select_integral(
    g: &Graph,
    params: &Params,
    support: &CliqueSupport,
    anchor: &FractionalAssignment,
    z: &FractionalAssignment,
) -> Result<(VertexSet, RoundingCertificate)> {
    let n = g.vertex_count();
    internal_check!(n > 0, "empty working graph");
    let c = &params.c;
    let (_, t_surplus) = g.surplus(&VertexSet::full(n), c)?;
    internal_check!(
        t_surplus < c + Rational::one(),
        "surplus must stay below (s+t+2) after the peel"
    );

    let frac = z.fractional_support();
    internal_check!(frac.len() <= 1, "collapse must leave at most one fractional coordinate");
    for v in frac.iter() {
        internal_check!(support.contains(v), "fractional leftover must sit on the support");
    }
    for v in 0..n as u32 {
        if !support.contains(v) {
            internal_check!(
                z.value(v) == anchor.value(v),
                "collapse must not move coordinates off the support"
            );
        }
    }

    let sum_y = anchor.sum();
    let co_sum_y = Rational::from(n) - &sum_y;
    let a_margin = &sum_y - c * &params.p - half();
    let b_margin = &co_sum_y - c * &params.p_bar - half();
    let shave = &params.p * &params.p_bar * &t_surplus / ((c + Rational::one()) * Rational::from(2u32));
    let x_bound = params.p.square() * &t_surplus - &shave;
    let y_bound = params.p_bar.square() * &t_surplus - &shave;
    internal_check!(!x_bound.is_negative(), "penalized floor for f2 must be nonnegative");
    internal_check!(!y_bound.is_negative(), "penalized floor for g2 must be nonnegative");
    internal_check!(a_margin.is_positive(), "mass margin a must be positive");
    internal_check!(b_margin.is_positive(), "mass margin b must be positive");
    let margin_sum = &a_margin + &b_margin;
    internal_check!(
        margin_sum == Rational::from(n) - c - Rational::one(),
        "mass margins must sum to |V| - (s+t+2)"
    );
    internal_check!(margin_sum > t_surplus, "mass margins must dominate the surplus");

    let (f2z, g2z) = eval_penalized(g, params, support, anchor, z)?;
    internal_check!(
        f2z >= &x_bound + &a_margin * &params.p_bar,
        "penalized f2 lost its certified floor"
    );
    internal_check!(
        g2z >= &y_bound + &b_margin * &params.p,
        "penalized g2 lost its certified floor"
    );

    let pivot = frac.iter().next();
    let (candidate, cert) = match pivot {
        None => {
            let chosen = accept_candidate(g, params, &t_surplus, z)?;
            let candidate = match chosen {
                Some(cand) => cand,
                None => {
                    return Err(Error::InternalAssertion(
                        "integral collapse output failed the cut conditions".into(),
                    ))
                }
            };
            let cert = RoundingCertificate {
                t_surplus,
                x_bound,
                y_bound,
                a_margin,
                b_margin,
                a_local: None,
                b_local: None,
                pivot: None,
                chosen: None,
                f0: candidate.f0.clone(),
                g0: candidate.g0.clone(),
            };
            (candidate, cert)
        }
        Some(w) => {
            let zw = z.value(w).clone();
            let mut nbr_mass_y = Rational::zero();
            for &u in g.neighbors(w) {
                nbr_mass_y += anchor.value(u);
            }
            let nonnbr_mass = &sum_y - anchor.value(w) - &nbr_mass_y;
            let nonnbr_count = Rational::from(n - 1 - g.degree(w));
            let a_local = &a_margin - &nonnbr_mass;
            let b_local = &b_margin - (&nonnbr_count - &nonnbr_mass);
            let local_sum = &a_local + &b_local;
            internal_check!(
                local_sum == Rational::from(g.degree(w)) + Rational::one() - c - Rational::one(),
                "pivot margins must sum to d(w) + 1 - (s+t+2)"
            );
            internal_check!(local_sum > t_surplus, "pivot margins must dominate the surplus");

            let up = with_coordinate(z, w, Rational::one())?;
            let down = with_coordinate(z, w, Rational::zero())?;
            let room_up = Rational::one() - &zw;
            let (f2_up, g2_up) = eval_penalized(g, params, support, anchor, &up)?;
            let (f2_down, g2_down) = eval_penalized(g, params, support, anchor, &down)?;
            internal_check!(
                f2_up == &f2z + &a_local * &room_up
                    && g2_up == &g2z - &b_local * &room_up
                    && f2_down == &f2z - &a_local * &zw
                    && g2_down == &g2z + &b_local * &zw,
                "pivot slopes must match the margin identities"
            );

            let cand_up = accept_candidate(g, params, &t_surplus, &up)?;
            let cand_down = accept_candidate(g, params, &t_surplus, &down)?;
            let (candidate, choice) = match (cand_up, cand_down) {
                (Some(u_cand), Some(d_cand)) => {
                    if &d_cand.f0 + &d_cand.g0 > &u_cand.f0 + &u_cand.g0 {
                        (d_cand, PivotChoice::Minus)
                    } else {
                        (u_cand, PivotChoice::Plus)
                    }
                }
                (Some(u_cand), None) => (u_cand, PivotChoice::Plus),
                (None, Some(d_cand)) => (d_cand, PivotChoice::Minus),
                (None, None) => {
                    return Err(Error::InternalAssertion(
                        "neither rounding of the pivot met the cut conditions".into(),
                    ))
                }
            };
            let cert = RoundingCertificate {
                t_surplus,
                x_bound,
                y_bound,
                a_margin,
                b_margin,
                a_local: Some(a_local),
                b_local: Some(b_local),
                pivot: Some(w),
                chosen: Some(choice),
                f0: candidate.f0.clone(),
                g0: candidate.g0.clone(),
            };
            (candidate, cert)
        }
    };
    Ok((candidate.a_set, cert))
}
