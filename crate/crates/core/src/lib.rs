//! Exact-rational solver for two-part graph partitions under average-degree
//! constraints.
//!
//! Given a graph `G` and positive rationals `s`, `t` with
//! `||G|| >= (s + t + 1) |G|`, the solver produces a partition `(A, B)` of
//! the vertex set such that `A` has average degree at least `2s` inside `A`
//! and `B` has average degree at least `2t` inside `B` (equivalently
//! `||A|| >= s|A|` and `||B|| >= t|B|`). All arithmetic is exact: the
//! returned witness carries rational margins that an independent checker can
//! re-verify with no floating point anywhere.

mod assemble;
mod bits;
mod direction;
mod error;
mod graph;
mod oracle;
mod peel;
mod rational;
mod relax;
mod round;

pub use assemble::{solve, validate, MergedInto, PartitionWitness, SolvePath, ValidationReport};
pub use oracle::{
    all_proper_subsets_sparse, brute_force_partition, PARTITION_CAP, SUBSET_CAP,
};
pub use direction::{joint_direction, simplest_between};
pub use error::{Error, Result};
pub use graph::{build_graph, complete_graph, Graph, VertexSet};
pub use peel::{peel, PeelResult, PeelStep};
pub use rational::Rational;
pub use relax::{
    cliqueify, eval_objectives, objective_gradients, CliqueSupport, CliqueifyOutcome,
    FractionalAssignment, ObjectiveValues, Params,
};
pub use round::{
    collapse_to_corner, eval_penalized, select_integral, PivotChoice, RoundingCertificate,
};
