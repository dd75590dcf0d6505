//! Fractional relaxation of the partition problem.
//!
//! The integral goal is a 0/1 vector x with `f0(x) >= 0`, `g0(x) >= 0` and
//! `f0(x) + g0(x) >= T - 1`, where
//!
//! ```text
//! f0(x) = sum_{uv in E} x_u x_v       - s * sum_v x_v
//! g0(x) = sum_{uv in E} (1-x_u)(1-x_v) - t * sum_v (1-x_v)
//! ```
//!
//! and `T = max(0, ||G|| - (s+t+1)|G|)` is the surplus of the input. This
//! module works with the reweighted pair `f1`, `g1` obtained by replacing
//! `s` and `t` with `(s+t+1)p` and `(s+t+1)p_bar`, `p = (s+1)/(s+t+2)`.
//! Starting from the constant vector `p * 1`, where `f1 = p^2 T` and
//! `g1 = p_bar^2 T` exactly, an exchange loop drives coordinates to `0` or
//! `1` without ever letting `f1` drop below `p^2 T` or `g1` below
//! `p_bar^2 T`, until the fractional coordinates span a clique. The result
//! either hands a large clique to the direct splitter or a fractional point
//! with small clique support to the rounding stage.

use crate::bits;
use crate::direction::joint_direction;
use crate::error::{internal_check, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// Solver parameters derived from the pair `(s, t)`.
///
/// The internal convention is `s <= t`; when the caller's pair arrives the
/// other way round the roles of the two sides are exchanged and `swapped`
/// records that the final partition must be flipped back.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Params {
    pub s: Rational,
    pub t: Rational,
    /// `s + t + 1`, the average-degree threshold for the whole graph.
    pub c: Rational,
    /// `(s + 1) / (s + t + 2)`; at most `1/2` under the swap convention.
    pub p: Rational,
    /// `(t + 1) / (s + t + 2)`; complements `p` to one.
    pub p_bar: Rational,
    /// `2s + 2t + 3`; cliques at least this large admit a direct split.
    pub clique_threshold: Rational,
    pub swapped: bool,
}

impl Params {
    pub fn new(s: &Rational, t: &Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::NonPositiveParameter(format!("s = {s}")));
        }
        if !t.is_positive() {
            return Err(Error::NonPositiveParameter(format!("t = {t}")));
        }
        let swapped = s > t;
        let (s, t) = if swapped {
            (t.clone(), s.clone())
        } else {
            (s.clone(), t.clone())
        };
        let one = Rational::one();
        let c = &s + &t + &one;
        let denom = &c + &one;
        let p = (&s + &one) / &denom;
        let p_bar = (&t + &one) / &denom;
        internal_check!(&p + &p_bar == one, "p and p_bar must complement to one");
        let clique_threshold = Rational::from(2u32) * (&s + &t) + Rational::from(3u32);
        Ok(Params {
            s,
            t,
            c,
            p,
            p_bar,
            clique_threshold,
            swapped,
        })
    }
}

/// A point of the relaxed cube `[0,1]^n`, indexed by vertex id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FractionalAssignment {
    values: Vec<Rational>,
}

impl FractionalAssignment {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        let one = Rational::one();
        for (v, x) in values.iter().enumerate() {
            if x.is_negative() || x > &one {
                return Err(Error::InvalidInput(format!(
                    "coordinate {v} is {x}, outside [0, 1]"
                )));
            }
        }
        Ok(FractionalAssignment { values })
    }

    pub fn constant(n: usize, value: &Rational) -> Result<Self> {
        FractionalAssignment::new(vec![value.clone(); n])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: u32) -> &Rational {
        &self.values[v as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().cloned().sum()
    }

    /// Vertices with strictly fractional coordinates.
    pub fn fractional_support(&self) -> VertexSet {
        let one = Rational::one();
        (0..self.values.len() as u32)
            .filter(|&v| {
                let x = &self.values[v as usize];
                x.is_positive() && x < &one
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.fractional_support().is_empty()
    }
}

/// A vertex set verified to be pairwise adjacent in a fixed graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliqueSupport {
    vertices: VertexSet,
}

impl CliqueSupport {
    pub fn new(g: &Graph, vertices: VertexSet) -> Result<Self> {
        if let Some(&max) = vertices.as_slice().last() {
            if max as usize >= g.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: max,
                    n: g.vertex_count(),
                });
            }
        }
        let ids = vertices.as_slice();
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                if !g.has_edge(u, v) {
                    return Err(Error::NotAClique(u, v));
                }
            }
        }
        Ok(CliqueSupport { vertices })
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.contains(v)
    }
}

/// Exact values of the four working objectives at one point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ObjectiveValues {
    pub f0: Rational,
    pub g0: Rational,
    pub f1: Rational,
    pub g1: Rational,
}

/// Evaluates all four objectives directly and cross-checks the exact
/// identities `f0 - f1 = p_bar * sum(x)` and `g0 - g1 = p * sum(1 - x)`.
pub fn eval_objectives(
    g: &Graph,
    params: &Params,
    x: &FractionalAssignment,
) -> Result<ObjectiveValues> {
    if x.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            got: x.len(),
            want: g.vertex_count(),
        });
    }
    let one = Rational::one();
    let mut edge_prod = Rational::zero();
    let mut co_edge_prod = Rational::zero();
    for &(u, v) in g.edges() {
        let xu = x.value(u);
        let xv = x.value(v);
        edge_prod += xu * xv;
        co_edge_prod += (&one - xu) * (&one - xv);
    }
    let sum = x.sum();
    let co_sum = Rational::from(x.len()) - &sum;
    let cp = &params.c * &params.p;
    let cp_bar = &params.c * &params.p_bar;
    let f0 = &edge_prod - &params.s * &sum;
    let g0 = &co_edge_prod - &params.t * &co_sum;
    let f1 = &edge_prod - &cp * &sum;
    let g1 = &co_edge_prod - &cp_bar * &co_sum;
    internal_check!(
        &f0 - &f1 == &params.p_bar * &sum,
        "objective identity failed on the s side"
    );
    internal_check!(
        &g0 - &g1 == &params.p * &co_sum,
        "objective identity failed on the t side"
    );
    Ok(ObjectiveValues { f0, g0, f1, g1 })
}

/// Partial derivatives of `f1` and `g1` at `x` in coordinate `v`. Both are
/// affine per coordinate, so these are exact slopes, and their difference
/// must equal `d(v) - (s+t+1)`.
pub fn objective_gradients(
    g: &Graph,
    params: &Params,
    x: &FractionalAssignment,
    v: u32,
) -> Result<(Rational, Rational)> {
    if x.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            got: x.len(),
            want: g.vertex_count(),
        });
    }
    if v as usize >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        });
    }
    let nbr_sum: Rational = g.neighbors(v).iter().map(|&u| x.value(u).clone()).sum();
    let degree = Rational::from(g.degree(v));
    let df1 = &nbr_sum - &params.c * &params.p;
    let dg1 = &nbr_sum - &degree + &params.c * &params.p_bar;
    internal_check!(
        &df1 - &dg1 == &degree - &params.c,
        "gradient difference must equal d(v) - (s+t+1)"
    );
    Ok((df1, dg1))
}

/// Result of the exchange loop.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CliqueifyOutcome {
    /// The fractional support ended up smaller than `2s+2t+3`; the point
    /// carries exact objective floors and goes on to the rounding stage.
    Fractional {
        assignment: FractionalAssignment,
        support: CliqueSupport,
    },
    /// The support reached size `2s+2t+3` or more: the graph contains a
    /// clique large enough to split directly, no rounding needed.
    BigClique(CliqueSupport),
}

struct ExchangeState<'a> {
    g: &'a Graph,
    cp: Rational,
    cp_bar: Rational,
    y: Vec<Rational>,
    /// `nbr_sum[v] = sum of y_u over u adjacent to v`.
    nbr_sum: Vec<Rational>,
    sum: Rational,
    f1: Rational,
    g1: Rational,
    /// Bitset of strictly fractional coordinates.
    fr: Vec<u64>,
    /// Bitset of coordinates equal to one.
    ones: Vec<u64>,
}

impl<'a> ExchangeState<'a> {
    fn new(g: &'a Graph, params: &Params, excess: &Rational) -> Self {
        let n = g.vertex_count();
        let p = &params.p;
        let words = bits::words_for(n);
        let mut fr = vec![0u64; words];
        for v in 0..n as u32 {
            bits::set(&mut fr, v);
        }
        ExchangeState {
            g,
            cp: &params.c * p,
            cp_bar: &params.c * &params.p_bar,
            y: vec![p.clone(); n],
            nbr_sum: (0..n as u32).map(|v| p * &Rational::from(g.degree(v))).collect(),
            sum: p * &Rational::from(n),
            f1: p.square() * excess,
            g1: params.p_bar.square() * excess,
            fr,
            ones: vec![0u64; words],
        }
    }

    fn grad(&self, v: u32) -> (Rational, Rational) {
        let s = &self.nbr_sum[v as usize];
        let df1 = s - &self.cp;
        let dg1 = s - &Rational::from(self.g.degree(v)) + &self.cp_bar;
        (df1, dg1)
    }

    /// Moves one coordinate and updates every cached quantity exactly;
    /// both objectives are affine per coordinate, so the updates are not
    /// approximations.
    fn set_coord(&mut self, v: u32, new: Rational) -> Result<()> {
        let one = Rational::one();
        internal_check!(
            !new.is_negative() && new <= one,
            "coordinate {v} pushed outside [0, 1]"
        );
        let old = self.y[v as usize].clone();
        if old == new {
            return Ok(());
        }
        let delta = &new - &old;
        let (df1, dg1) = self.grad(v);
        self.f1 += &delta * &df1;
        self.g1 += &delta * &dg1;
        self.sum += &delta;
        for &u in self.g.neighbors(v) {
            self.nbr_sum[u as usize] += &delta;
        }
        if new.is_positive() && new < one {
            bits::set(&mut self.fr, v);
        } else {
            bits::clear(&mut self.fr, v);
        }
        if new == one {
            bits::set(&mut self.ones, v);
        } else {
            bits::clear(&mut self.ones, v);
        }
        self.y[v as usize] = new;
        Ok(())
    }

    /// Lexicographically first pair `u < v` of fractional, non-adjacent
    /// vertices, if any.
    fn first_nonadjacent_fractional_pair(&self) -> Option<(u32, u32)> {
        for u in bits::iter(&self.fr) {
            let adj = self.g.adjacency_words(u);
            let word_of_u = u as usize / 64;
            for (i, (&frw, &aw)) in self.fr.iter().zip(adj).enumerate() {
                if i < word_of_u {
                    continue;
                }
                let mut w = frw & !aw;
                if i == word_of_u {
                    let shift = u % 64 + 1;
                    w &= if shift == 64 { 0 } else { u64::MAX << shift };
                }
                if w != 0 {
                    return Some((u, i as u32 * 64 + w.trailing_zeros()));
                }
            }
        }
        None
    }

    /// `f1` at the restriction of `y` to its fractional support, i.e. with
    /// every saturated coordinate reset to zero. Simulated by zeroing the
    /// ones in ascending order with exact affine updates.
    fn restricted_f1(&self) -> Rational {
        let mut f = self.f1.clone();
        let mut zeroed = vec![0u64; self.ones.len()];
        for w in bits::iter(&self.ones) {
            let already: u64 = self
                .g
                .adjacency_words(w)
                .iter()
                .zip(&zeroed)
                .map(|(a, z)| (a & z).count_ones() as u64)
                .sum();
            let s_current = &self.nbr_sum[w as usize] - &Rational::from(already);
            f = f - s_current + &self.cp;
            bits::set(&mut zeroed, w);
        }
        f
    }
}

fn positive_room(y: &Rational, r: &Rational) -> Option<Rational> {
    if r.is_positive() {
        Some((&Rational::one() - y) / r)
    } else if r.is_negative() {
        Some(y / &-r)
    } else {
        None
    }
}

/// Runs the exchange loop on a peeled graph.
///
/// Preconditions: `||G|| >= (s+t+1)|G|` and minimum degree strictly above
/// `(s+t+1) + T`; the peel establishes both. Each iteration applies the
/// first applicable move:
///
/// 1. a non-adjacent fractional pair slides along a jointly non-decreasing
///    ray until a coordinate saturates;
/// 2. a fractional vertex whose two slopes agree in sign rounds to the
///    favourable endpoint;
/// 3. while `f1` exceeds `p^2 T`, the smallest fractional vertex walks down
///    toward the floor (its `f1` slope is provably positive here);
/// 4. if resetting all saturated coordinates to zero would leave `f1` above
///    the floor, do so (this provably keeps `g1` above its own floor);
/// 5. otherwise stop.
///
/// The loop terminates in at most `4n + 1` iterations; `n(n+2)` is enforced.
pub fn cliqueify(g: &Graph, params: &Params) -> Result<CliqueifyOutcome> {
    let n = g.vertex_count();
    let excess =
        Rational::from(g.edge_count() as u64) - &params.c * &Rational::from(n);
    if excess.is_negative() {
        return Err(Error::HypothesisNotMet(format!(
            "edge count {} is below {} times the vertex count",
            g.edge_count(),
            params.c
        )));
    }
    let t_surplus = excess.clone();
    if Rational::from(g.min_degree()) <= &params.c + &t_surplus {
        return Err(Error::InvalidInput(
            "minimum degree must exceed (s+t+1) + T; run the peel first".into(),
        ));
    }

    let f_floor = params.p.square() * &t_surplus;
    let g_floor = params.p_bar.square() * &t_surplus;
    let mut st = ExchangeState::new(g, params, &excess);

    let check = eval_objectives(g, params, &FractionalAssignment::new(st.y.clone())?)?;
    internal_check!(
        check.f1 == st.f1 && check.g1 == st.g1,
        "incremental objectives disagree with direct evaluation at the start"
    );

    let iteration_cap = n * (n + 2) + 1;
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        internal_check!(
            iterations <= iteration_cap,
            "exchange loop exceeded its iteration bound"
        );

        if let Some((u, v)) = st.first_nonadjacent_fractional_pair() {
            let gu = st.grad(u);
            let gv = st.grad(v);
            let a = (gu.0, gv.0);
            let b = (gu.1, gv.1);
            let r = joint_direction(&a, &b)?;
            let yu = st.y[u as usize].clone();
            let yv = st.y[v as usize].clone();
            let alpha = match (positive_room(&yu, &r.0), positive_room(&yv, &r.1)) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => {
                    return Err(Error::InternalAssertion(
                        "pair ray is the zero vector".into(),
                    ))
                }
            };
            internal_check!(alpha.is_positive(), "pair move has no room");
            let before = bits::count(&st.fr);
            st.set_coord(u, &yu + &(&alpha * &r.0))?;
            st.set_coord(v, &yv + &(&alpha * &r.1))?;
            internal_check!(
                bits::count(&st.fr) < before,
                "pair move failed to saturate a coordinate"
            );
            continue;
        }

        // The fractional support is now a clique. Round any vertex whose
        // two slopes agree in sign.
        let mut single: Option<(u32, Rational)> = None;
        for v in bits::iter(&st.fr) {
            let (df1, dg1) = st.grad(v);
            if !df1.is_negative() && !dg1.is_negative() {
                single = Some((v, Rational::one()));
                break;
            }
            if !df1.is_positive() && !dg1.is_positive() {
                single = Some((v, Rational::zero()));
                break;
            }
        }
        if let Some((v, target)) = single {
            st.set_coord(v, target)?;
            continue;
        }

        if st.f1 > f_floor {
            if let Some(v) = bits::iter(&st.fr).next() {
                let (df1, dg1) = st.grad(v);
                internal_check!(
                    df1.is_positive() && dg1.is_negative(),
                    "mixed slopes must be positive for f1 and negative for g1"
                );
                let room = (&st.f1 - &f_floor) / &df1;
                let yv = st.y[v as usize].clone();
                let delta = yv.clone().min(room);
                st.set_coord(v, &yv - &delta)?;
                internal_check!(st.f1 >= f_floor, "descent overshot the f1 floor");
                continue;
            }
        }

        let restricted = st.restricted_f1();
        if restricted > f_floor {
            let saturated: Vec<u32> = bits::iter(&st.ones).collect();
            internal_check!(
                !saturated.is_empty(),
                "support restriction fired with no saturated coordinate"
            );
            for w in saturated {
                st.set_coord(w, Rational::zero())?;
            }
            internal_check!(
                st.f1 == restricted,
                "support restriction disagrees with its predicted value"
            );
            internal_check!(
                st.g1 >= g_floor,
                "support restriction dropped g1 below its floor"
            );
            continue;
        }

        break;
    }

    let assignment = FractionalAssignment::new(st.y.clone())?;
    let direct = eval_objectives(g, params, &assignment)?;
    internal_check!(
        direct.f1 == st.f1 && direct.g1 == st.g1,
        "incremental objectives disagree with direct evaluation at the end"
    );
    internal_check!(
        st.f1 >= f_floor && st.g1 >= g_floor,
        "exchange loop ended below an objective floor"
    );
    internal_check!(
        st.sum.is_positive() && st.sum < Rational::from(n),
        "exchange loop ended at a trivial corner"
    );
    let two = Rational::from(2u32);
    internal_check!(
        st.sum >= &two * &st.cp && &Rational::from(n) - &st.sum >= &two * &st.cp_bar,
        "coordinate mass ended below its guaranteed level"
    );

    let support_set = assignment.fractional_support();
    internal_check!(
        support_set.as_slice() == bits::iter(&st.fr).collect::<Vec<u32>>(),
        "fractional-support bitset drifted from the coordinates"
    );
    let support = CliqueSupport::new(g, support_set)?;
    for v in support.vertices().iter() {
        let (df1, dg1) = st.grad(v);
        internal_check!(
            df1.is_positive() && dg1.is_negative(),
            "support vertex {v} lacks the mixed-slope property"
        );
    }
    if !support.is_empty() {
        internal_check!(
            st.f1 == f_floor,
            "nonempty support requires f1 to sit exactly on its floor"
        );
        internal_check!(
            st.restricted_f1() <= f_floor,
            "restriction of the final point must not beat the floor"
        );
    }

    if Rational::from(support.len()) >= params.clique_threshold {
        return Ok(CliqueifyOutcome::BigClique(support));
    }

    // Spread bound on the support: with |C| < 2s+2t+3 the two concave
    // envelopes for sum_C (y - y^2) intersect below this line.
    let spread: Rational = support
        .vertices()
        .iter()
        .map(|v| {
            let yv = assignment.value(v);
            yv - &yv.square()
        })
        .sum();
    let pq = &params.p * &params.p_bar;
    let limit = &params.clique_threshold * &pq
        + &t_surplus * &pq / (&params.c + &Rational::one());
    internal_check!(
        spread < limit,
        "support spread reached its theoretical ceiling"
    );

    Ok(CliqueifyOutcome::Fractional {
        assignment,
        support,
    })
}
