//! End-to-end assembly of a partition witness.
//!
//! [`solve`] is the public entry point. It checks the density hypothesis
//! `||G|| >= (s+t+1)|G|`, then routes the instance through one of three
//! branches:
//!
//! - `min(s, t) <= 1/2`: a single edge already satisfies the smaller side,
//!   and an averaging bound shows the rest satisfies the larger one.
//! - The relaxation ends in a clique of at least `2s+2t+3` vertices: the
//!   clique is split directly into blocks of `ceil(2s+1)` and `ceil(2t+1)`
//!   vertices.
//! - Otherwise the rounding stage converts the fractional point into an
//!   integral cut of the peeled core.
//!
//! The last two branches cover only the peeled core, so a final merging
//! step absorbs the remaining vertices into whichever side can afford
//! them; the slack condition `margin(A) + margin(B) >= T(A u B) - 1`
//! guarantees one side always can. Every witness is re-validated from
//! scratch before it is returned.

use crate::error::{internal_check, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::peel::{peel, PeelStep};
use crate::rational::Rational;
use crate::relax::{cliqueify, CliqueSupport, CliqueifyOutcome, Params};
use crate::round::{collapse_to_corner, select_integral, RoundingCertificate};

/// Which branch of the solver produced the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolvePath {
    /// `min(s, t) <= 1/2`: one edge versus the rest.
    SmallSt,
    /// The relaxation ended in a clique large enough to split directly.
    CliqueFallback,
    /// The fractional point was rounded to an integral cut.
    Rounding,
}

/// Which side absorbed the vertices left outside the core partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergedInto {
    A,
    B,
    None,
}

/// A partition of the vertex set together with its exact margins and the
/// data needed to audit how it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    /// Side that satisfies `||A|| >= s|A|`.
    pub a: VertexSet,
    /// Side that satisfies `||B|| >= t|B|`.
    pub b: VertexSet,
    pub path: SolvePath,
    /// `||A|| - s|A|`, always nonnegative.
    pub s_side_margin: Rational,
    /// `||B|| - t|B|`, always nonnegative.
    pub t_side_margin: Rational,
    /// Deletions performed by the peel, in order.
    pub peeled: Vec<PeelStep>,
    pub merged_into: MergedInto,
    /// Exact rounding audit trail; absent on the other two paths.
    pub certificate: Option<RoundingCertificate>,
}

/// Outcome of re-checking a witness against the graph it claims to cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

fn margin(g: &Graph, side: &VertexSet, weight: &Rational) -> Result<Rational> {
    let edges = g.induced_edge_count(side)?;
    Ok(Rational::from(edges) - weight * &Rational::from(side.len()))
}

/// Splits off one edge when `min(s, t) <= 1/2`.
///
/// `x` is a minimum-degree non-isolated vertex (ties to the smallest id)
/// and `y` its smallest neighbor. The edge `{x, y}` satisfies the side
/// whose weight is at most `1/2`; under the density hypothesis the rest
/// satisfies the other side because removing `x` and `y` costs at most
/// `2||G||/k + k` edges, where `k` counts non-isolated vertices, and that
/// never eats the whole surplus. Returns `(A, B)` in caller orientation.
fn small_split(g: &Graph, s: &Rational, t: &Rational) -> Result<(VertexSet, VertexSet)> {
    let half = Rational::new(1, 2);
    internal_check!(
        s <= &half || t <= &half,
        "edge split applies only when min(s, t) <= 1/2"
    );
    let n = g.vertex_count();
    let x = (0..n as u32)
        .filter(|&v| g.degree(v) > 0)
        .min_by_key(|&v| g.degree(v));
    let x = match x {
        Some(v) => v,
        None => {
            return Err(Error::HypothesisNotMet(
                "graph has no edges at all".into(),
            ))
        }
    };
    let y = g.neighbors(x)[0];
    let pair = VertexSet::new(vec![x, y]);
    let rest = pair.complement(n);
    internal_check!(!rest.is_empty(), "density hypothesis forces more than two vertices");
    if t <= &half {
        Ok((rest, pair))
    } else {
        Ok((pair, rest))
    }
}

/// Splits a clique of at least `2s+2t+3` vertices into the first
/// `ceil(2s+1)` ids versus the next `ceil(2t+1)`.
///
/// A clique block of `k >= 2w+1` vertices has margin
/// `k(k-1)/2 - wk = k((k-1)/2 - w) >= 0`, and the two blocks together
/// leave margin at least the surplus of their union, which is what the
/// merging step needs.
fn clique_split(
    w: &Graph,
    params: &Params,
    clique: &CliqueSupport,
) -> Result<(VertexSet, VertexSet)> {
    let two = Rational::from(2u32);
    let a_size = (&two * &params.s + Rational::one()).ceil_usize();
    let b_size = (&two * &params.t + Rational::one()).ceil_usize();
    internal_check!(
        a_size + b_size <= clique.len(),
        "clique must have room for both direct blocks"
    );
    let ids = clique.vertices().as_slice();
    let a = VertexSet::new(ids[..a_size].to_vec());
    let b = VertexSet::new(ids[a_size..a_size + b_size].to_vec());
    let ma = margin(w, &a, &params.s)?;
    let mb = margin(w, &b, &params.t)?;
    internal_check!(
        !ma.is_negative() && !mb.is_negative(),
        "clique blocks must have nonnegative margins"
    );
    let (_, t_ab) = w.surplus(&a.union(&b), &params.c)?;
    internal_check!(
        &ma + &mb >= t_ab,
        "clique block margins must cover the surplus of their union"
    );
    Ok((a, b))
}

/// Absorbs the vertices outside `a u b` into one of the two sides.
///
/// Requires both margins nonnegative and their sum at least
/// `T(a u b) - 1`; then summing the two absorption inequalities against
/// the density hypothesis shows at least one side can take the whole
/// remainder at once. The first side is preferred when both work.
fn merge_remainder(
    g: &Graph,
    s: &Rational,
    t: &Rational,
    a: VertexSet,
    b: VertexSet,
) -> Result<(VertexSet, VertexSet, MergedInto)> {
    internal_check!(!a.is_empty() && !b.is_empty(), "both sides must be nonempty");
    if let Some(v) = a.intersects(&b) {
        return Err(Error::OverlappingSets(v));
    }
    let c = s + t + Rational::one();
    let n = g.vertex_count();
    let ma = margin(g, &a, s)?;
    let mb = margin(g, &b, t)?;
    internal_check!(
        !ma.is_negative() && !mb.is_negative(),
        "merge input margins must be nonnegative"
    );
    let union = a.union(&b);
    let (_, t_ab) = g.surplus(&union, &c)?;
    internal_check!(
        &ma + &mb >= &t_ab - Rational::one(),
        "margin slack must dominate the core surplus"
    );
    let rem = union.complement(n);
    if rem.is_empty() {
        return Ok((a, b, MergedInto::None));
    }
    let (excess, _) = g.surplus(&VertexSet::full(n), &c)?;
    internal_check!(
        !excess.is_negative(),
        "merging needs the density hypothesis on the whole graph"
    );
    let a_ext = a.union(&rem);
    let ma_ext = margin(g, &a_ext, s)?;
    if !ma_ext.is_negative() {
        return Ok((a_ext, b, MergedInto::A));
    }
    let b_ext = b.union(&rem);
    let mb_ext = margin(g, &b_ext, t)?;
    internal_check!(
        !mb_ext.is_negative(),
        "one side must be able to absorb the remainder"
    );
    Ok((a, b_ext, MergedInto::B))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    g: &Graph,
    s: &Rational,
    t: &Rational,
    a: VertexSet,
    b: VertexSet,
    path: SolvePath,
    peeled: Vec<PeelStep>,
    merged_into: MergedInto,
    certificate: Option<RoundingCertificate>,
) -> Result<PartitionWitness> {
    let s_side_margin = margin(g, &a, s)?;
    let t_side_margin = margin(g, &b, t)?;
    let witness = PartitionWitness {
        a,
        b,
        path,
        s_side_margin,
        t_side_margin,
        peeled,
        merged_into,
        certificate,
    };
    let report = validate(g, s, t, &witness);
    if !report.ok {
        return Err(Error::InternalAssertion(format!(
            "solver output failed validation: {}",
            report.failures.join("; ")
        )));
    }
    Ok(witness)
}

/// Computes a partition `(A, B)` of the whole vertex set with
/// `||A|| >= s|A|` and `||B|| >= t|B|`, or reports why none was produced.
///
/// Errors: [`Error::InvalidInput`] for an empty graph,
/// [`Error::NonPositiveParameter`] unless `s, t > 0`,
/// [`Error::HypothesisNotMet`] when `||G|| < (s+t+1)|G|`, and
/// [`Error::InternalAssertion`] only if an internal invariant breaks,
/// which would be a bug. The solver is fully deterministic.
pub fn solve(g: &Graph, s: &Rational, t: &Rational) -> Result<PartitionWitness> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidInput("graph has no vertices".into()));
    }
    if !s.is_positive() {
        return Err(Error::NonPositiveParameter(format!("s = {s}")));
    }
    if !t.is_positive() {
        return Err(Error::NonPositiveParameter(format!("t = {t}")));
    }
    let c = s + t + Rational::one();
    let required = &c * &Rational::from(n);
    let m = Rational::from(g.edge_count() as u64);
    if m < required {
        return Err(Error::HypothesisNotMet(format!(
            "edge count {} is below (s+t+1)|V| = {}",
            g.edge_count(),
            required
        )));
    }

    let half = Rational::new(1, 2);
    if s <= &half || t <= &half {
        let (a, b) = small_split(g, s, t)?;
        return finish(g, s, t, a, b, SolvePath::SmallSt, Vec::new(), MergedInto::None, None);
    }

    let params = Params::new(s, t)?;
    let peeled = peel(g, &params.c)?;
    let (w, map) = g.induced(&peeled.surviving)?;
    let lift = |set: &VertexSet| -> VertexSet {
        VertexSet::new(set.iter().map(|v| map[v as usize]).collect())
    };

    let (a_w, b_w, path, certificate) = match cliqueify(&w, &params)? {
        CliqueifyOutcome::BigClique(clique) => {
            let (a, b) = clique_split(&w, &params, &clique)?;
            (a, b, SolvePath::CliqueFallback, None)
        }
        CliqueifyOutcome::Fractional { assignment, support } => {
            let z = collapse_to_corner(&w, &params, &support, &assignment)?;
            let (a, cert) = select_integral(&w, &params, &support, &assignment, &z)?;
            let b = a.complement(w.vertex_count());
            (a, b, SolvePath::Rounding, Some(cert))
        }
    };

    // Internal orientation: the first side carries the (possibly swapped)
    // smaller weight params.s.
    let (mut a, mut b, mut merged_into) =
        merge_remainder(g, &params.s, &params.t, lift(&a_w), lift(&b_w))?;
    if params.swapped {
        std::mem::swap(&mut a, &mut b);
        merged_into = match merged_into {
            MergedInto::A => MergedInto::B,
            MergedInto::B => MergedInto::A,
            MergedInto::None => MergedInto::None,
        };
    }
    finish(g, s, t, a, b, path, peeled.trace, merged_into, certificate)
}

/// Re-checks a witness against the graph from scratch.
///
/// Verifies that the two sides are nonempty, disjoint, cover every vertex,
/// and that the stored margins both match a fresh computation and are
/// nonnegative. Collects every failure instead of stopping at the first.
pub fn validate(g: &Graph, s: &Rational, t: &Rational, w: &PartitionWitness) -> ValidationReport {
    let mut failures = Vec::new();
    if !s.is_positive() {
        failures.push(format!("parameter s = {s} is not positive"));
    }
    if !t.is_positive() {
        failures.push(format!("parameter t = {t} is not positive"));
    }
    if w.a.is_empty() {
        failures.push("side A is empty".into());
    }
    if w.b.is_empty() {
        failures.push("side B is empty".into());
    }
    if let Some(v) = w.a.intersects(&w.b) {
        failures.push(format!("vertex {v} appears on both sides"));
    }
    let union = w.a.union(&w.b);
    if union != VertexSet::full(g.vertex_count()) {
        failures.push("the two sides do not cover the vertex set exactly".into());
    }
    let mut check_side = |name: &str, side: &VertexSet, weight: &Rational, stored: &Rational| {
        match margin(g, side, weight) {
            Ok(m) => {
                if &m != stored {
                    failures.push(format!(
                        "stored {name} margin {stored} differs from recomputed {m}"
                    ));
                }
                if m.is_negative() {
                    failures.push(format!("{name} margin {m} is negative"));
                }
            }
            Err(e) => failures.push(format!("cannot evaluate {name} side: {e}")),
        }
    };
    check_side("s-side", &w.a, s, &w.s_side_margin);
    check_side("t-side", &w.b, t, &w.t_side_margin);
    ValidationReport {
        ok: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, complete_graph};

    fn one() -> Rational {
        Rational::one()
    }

    /// Two disjoint copies of the complete graph on seven vertices.
    fn two_cliques() -> Graph {
        let mut edges = Vec::new();
        for base in [0u32, 7] {
            for u in 0..7 {
                for v in (u + 1)..7 {
                    edges.push((base + u, base + v));
                }
            }
        }
        build_graph(14, &edges).unwrap()
    }

    /// Complete graph on nine vertices minus a perfect matching on 0..7.
    fn near_complete() -> Graph {
        let mut edges = Vec::new();
        for u in 0..9u32 {
            for v in (u + 1)..9 {
                if matches!((u, v), (0, 1) | (2, 3) | (4, 5) | (6, 7)) {
                    continue;
                }
                edges.push((u, v));
            }
        }
        build_graph(9, &edges).unwrap()
    }

    #[test]
    fn complete_seven_splits_through_the_clique_path() {
        let g = complete_graph(7);
        let w = solve(&g, &one(), &one()).unwrap();
        assert_eq!(w.path, SolvePath::CliqueFallback);
        assert_eq!(w.a.as_slice(), &[0, 1, 2, 6]);
        assert_eq!(w.b.as_slice(), &[3, 4, 5]);
        assert_eq!(w.s_side_margin, Rational::from(2u32));
        assert_eq!(w.t_side_margin, Rational::zero());
        assert_eq!(w.merged_into, MergedInto::A);
        assert!(w.peeled.is_empty());
        assert!(w.certificate.is_none());
        assert!(validate(&g, &one(), &one(), &w).ok);
    }

    #[test]
    fn near_complete_rounds_after_one_peel() {
        let g = near_complete();
        let w = solve(&g, &one(), &one()).unwrap();
        assert_eq!(w.path, SolvePath::Rounding);
        assert_eq!(w.peeled.len(), 1);
        assert_eq!(w.peeled[0].vertex, 0);
        assert_eq!(w.peeled[0].degree, 7);
        assert_eq!(w.peeled[0].t_at_deletion, Rational::from(5u32));
        assert_eq!(w.a.as_slice(), &[0, 3, 5, 7, 8]);
        assert_eq!(w.b.as_slice(), &[1, 2, 4, 6]);
        assert_eq!(w.s_side_margin, Rational::from(5u32));
        assert_eq!(w.t_side_margin, Rational::from(2u32));
        assert_eq!(w.merged_into, MergedInto::A);
        let cert = w.certificate.as_ref().unwrap();
        assert_eq!(cert.pivot, None);
        assert_eq!(cert.t_surplus, Rational::one());
    }

    #[test]
    fn disjoint_cliques_round_to_one_component() {
        let g = two_cliques();
        let w = solve(&g, &one(), &one()).unwrap();
        assert_eq!(w.path, SolvePath::Rounding);
        assert!(w.peeled.is_empty());
        assert_eq!(w.a.as_slice(), &[7, 8, 9, 10, 11, 12, 13]);
        assert_eq!(w.b.as_slice(), &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(w.s_side_margin, Rational::from(14u32));
        assert_eq!(w.t_side_margin, Rational::from(14u32));
        assert_eq!(w.merged_into, MergedInto::None);
    }

    #[test]
    fn small_weight_takes_one_edge() {
        let g = complete_graph(6);
        let s = one();
        let t = Rational::new(1, 2);
        let w = solve(&g, &s, &t).unwrap();
        assert_eq!(w.path, SolvePath::SmallSt);
        assert_eq!(w.a.as_slice(), &[2, 3, 4, 5]);
        assert_eq!(w.b.as_slice(), &[0, 1]);
        assert_eq!(w.s_side_margin, Rational::from(2u32));
        assert_eq!(w.t_side_margin, Rational::zero());
        // Mirrored weights exchange the roles of the two sides.
        let m = solve(&g, &t, &s).unwrap();
        assert_eq!(m.a.as_slice(), &[0, 1]);
        assert_eq!(m.b.as_slice(), &[2, 3, 4, 5]);
    }

    #[test]
    fn swapped_weights_exchange_sides() {
        let g = complete_graph(9);
        let s = one();
        let t = Rational::new(3, 2);
        let w = solve(&g, &s, &t).unwrap();
        let m = solve(&g, &t, &s).unwrap();
        assert_eq!(w.a, m.b);
        assert_eq!(w.b, m.a);
        assert_eq!(w.s_side_margin, m.t_side_margin);
        assert_eq!(w.t_side_margin, m.s_side_margin);
        assert_eq!(w.merged_into, MergedInto::A);
        assert_eq!(m.merged_into, MergedInto::B);
        assert_eq!(w.a.as_slice(), &[0, 1, 2, 3, 8]);
        assert_eq!(w.b.as_slice(), &[4, 5, 6, 7]);
        assert_eq!(w.s_side_margin, Rational::from(5u32));
        assert_eq!(w.t_side_margin, Rational::zero());
    }

    #[test]
    fn merge_prefers_the_first_side() {
        let g = two_cliques();
        let a = VertexSet::new(vec![0, 1, 2]);
        let b = VertexSet::new(vec![3, 4, 5]);
        let (a2, b2, merged) = merge_remainder(&g, &one(), &one(), a, b).unwrap();
        assert_eq!(merged, MergedInto::A);
        assert_eq!(a2.as_slice(), &[0, 1, 2, 6, 7, 8, 9, 10, 11, 12, 13]);
        assert_eq!(b2.as_slice(), &[3, 4, 5]);
    }

    #[test]
    fn sparse_input_is_rejected() {
        let g = complete_graph(4);
        let err = solve(&g, &one(), &one()).unwrap_err();
        assert!(matches!(err, Error::HypothesisNotMet(_)));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let empty = build_graph(0, &[]).unwrap();
        assert!(matches!(
            solve(&empty, &one(), &one()),
            Err(Error::InvalidInput(_))
        ));
        let g = complete_graph(7);
        assert!(matches!(
            solve(&g, &Rational::zero(), &one()),
            Err(Error::NonPositiveParameter(_))
        ));
    }

    #[test]
    fn validation_catches_tampering() {
        let g = complete_graph(7);
        let w = solve(&g, &one(), &one()).unwrap();
        let mut bad = w.clone();
        bad.s_side_margin = &bad.s_side_margin + Rational::one();
        assert!(!validate(&g, &one(), &one(), &bad).ok);
        let mut overlapping = w.clone();
        overlapping.b = VertexSet::new(vec![0, 3, 4, 5]);
        assert!(!validate(&g, &one(), &one(), &overlapping).ok);
        let mut short = w;
        short.a = VertexSet::new(vec![0, 1, 2]);
        assert!(!validate(&g, &one(), &one(), &short).ok);
    }
}
