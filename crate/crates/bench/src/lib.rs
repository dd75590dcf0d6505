//! Shared fixtures for the solver benchmarks.

use adpart::{Graph, Rational};
use adpart_cli::generate::{generate, GraphSpec};

/// Seeded G(n, 1/2) instance.
pub fn half_density(n: usize, seed: u64) -> Graph {
    generate(
        &GraphSpec::Gnp {
            n,
            p: Rational::new(1, 2),
            seed: Some(seed),
        },
        None,
    )
    .expect("generator accepts the fixture spec")
}

/// Dense clique block next to a sparse random shell; most of the shell
/// peels away before the relaxation starts.
pub fn clique_with_shell(clique: usize, shell: usize, seed: u64) -> Graph {
    generate(
        &GraphSpec::Union(
            Box::new(GraphSpec::Complete(clique)),
            Box::new(GraphSpec::Gnp {
                n: shell,
                p: Rational::new(1, 5),
                seed: Some(seed),
            }),
        ),
        None,
    )
    .expect("generator accepts the fixture spec")
}
