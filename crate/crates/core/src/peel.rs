//! Iterated removal of low-degree vertices.
//!
//! Given `c = s + t + 1` and a graph satisfying `||G|| >= c|G|`, repeatedly
//! delete a minimum-degree vertex `v` while `d(v) <= c + T(X)`, where
//! `T(X) = max(0, ||X|| - c|X|)` is the surplus of the surviving set. Each
//! deletion keeps the excess `||X|| - c|X|` nonnegative, so the process can
//! never exhaust the graph. On exit the survivors have minimum degree
//! strictly above `c + T`, surplus below `c + 1`, and more than `c + T + 1`
//! vertices; later stages rely on all three bounds.

use crate::error::{internal_check, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// One deletion, in order. `t_at_deletion` is the surplus of the surviving
/// set just before `vertex` was removed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeelStep {
    pub vertex: u32,
    pub degree: usize,
    pub t_at_deletion: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeelResult {
    pub surviving: VertexSet,
    pub trace: Vec<PeelStep>,
}

impl PeelResult {
    /// Deleted vertex ids in deletion order.
    pub fn deleted(&self) -> Vec<u32> {
        self.trace.iter().map(|s| s.vertex).collect()
    }
}

/// Runs the peel to completion. Ties on minimum degree go to the smallest
/// vertex id, which makes the whole solver deterministic.
pub fn peel(g: &Graph, c: &Rational) -> Result<PeelResult> {
    let n = g.vertex_count();
    let mut excess = Rational::from(g.edge_count() as u64) - c * &Rational::from(n);
    if excess.is_negative() {
        return Err(Error::HypothesisNotMet(format!(
            "edge count {} is below {} times the vertex count",
            g.edge_count(),
            c
        )));
    }

    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let mut alive_count = n;
    let mut trace = Vec::new();

    loop {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| degree[v])
            .expect("excess stays nonnegative, so the surviving set is never empty");
        let t = excess.clone().max(Rational::zero());
        if Rational::from(degree[v]) > c + &t {
            break;
        }
        trace.push(PeelStep {
            vertex: v as u32,
            degree: degree[v],
            t_at_deletion: t,
        });
        alive[v] = false;
        alive_count -= 1;
        for &u in g.neighbors(v as u32) {
            if alive[u as usize] {
                degree[u as usize] -= 1;
            }
        }
        excess = excess - Rational::from(degree[v]) + c;
        internal_check!(
            !excess.is_negative(),
            "excess went negative after deleting vertex {v}"
        );
        internal_check!(alive_count > 0, "peel deleted every vertex");
    }

    let surviving: VertexSet = (0..n as u32).filter(|&v| alive[v as usize]).collect();
    let t = excess.max(Rational::zero());
    internal_check!(
        t < c + &Rational::one(),
        "surviving surplus {t} reached c + 1"
    );
    internal_check!(
        Rational::from(surviving.len()) > c + &t + Rational::one(),
        "surviving set is too small for its surplus"
    );
    Ok(PeelResult { surviving, trace })
}
