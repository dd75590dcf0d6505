//! Seeded graph generators behind a small spec language.
//!
//! Specs are strings like `complete(7)`, `gnp(12, 1/2, 99)`,
//! `sharp(1, 1, 6)`, and `union(complete(4), gnp(8, 1/3))`. The `gnp`
//! seed may be omitted in the spec and supplied on the command line
//! instead. All randomness flows through [`SplitMix64`], so a spec plus
//! a seed pins the output graph exactly, independent of platform.

use adpart::{build_graph, complete_graph, Error, Graph, Rational, Result};
use num::BigInt;
use std::str::FromStr;

/// splitmix64: one u64 of state, finalizer constants from the reference
/// implementation. Chosen because the whole generator is three lines and
/// trivially reproducible in any language.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

/// Parsed generator spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    /// `complete(n)`: the complete graph on n vertices.
    Complete(usize),
    /// `gnp(n, p[, seed])`: each pair becomes an edge independently with
    /// exact rational probability p.
    Gnp {
        n: usize,
        p: Rational,
        seed: Option<u64>,
    },
    /// `sharp(s, t, n)`: integer weights, a clique on the first s+t+1
    /// vertices joined completely to an independent set on the rest.
    Sharp { s: u64, t: u64, n: usize },
    /// `union(a, b)`: disjoint union, second block relabeled upward.
    Union(Box<GraphSpec>, Box<GraphSpec>),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Splits `complete(7)` into the name and the comma-separated argument
/// list, honoring nested parentheses inside arguments.
fn split_call(text: &str) -> Result<(&str, Vec<&str>)> {
    let open = text
        .find('(')
        .ok_or_else(|| invalid(format!("spec `{text}` is missing `(`")))?;
    if !text.ends_with(')') {
        return Err(invalid(format!("spec `{text}` is missing the closing `)`")));
    }
    let name = text[..open].trim();
    let body = &text[open + 1..text.len() - 1];
    let mut args = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| invalid(format!("unbalanced `)` in `{text}`")))?;
            }
            ',' if depth == 0 => {
                args.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(invalid(format!("unbalanced `(` in `{text}`")));
    }
    let last = body[start..].trim();
    if !last.is_empty() {
        args.push(last);
    }
    Ok((name, args))
}

fn parse_usize(text: &str, what: &str) -> Result<usize> {
    text.parse()
        .map_err(|_| invalid(format!("{what} `{text}` is not a non-negative integer")))
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (name, args) = split_call(text.trim())?;
        match (name, args.len()) {
            ("complete", 1) => Ok(GraphSpec::Complete(parse_usize(args[0], "vertex count")?)),
            ("gnp", 2) | ("gnp", 3) => {
                let n = parse_usize(args[0], "vertex count")?;
                let p: Rational = args[1].parse()?;
                if p.is_negative() || p > Rational::one() {
                    return Err(invalid(format!("edge probability {p} is outside [0, 1]")));
                }
                let seed = match args.get(2) {
                    Some(raw) => Some(
                        raw.parse::<u64>()
                            .map_err(|_| invalid(format!("seed `{raw}` is not a u64")))?,
                    ),
                    None => None,
                };
                Ok(GraphSpec::Gnp { n, p, seed })
            }
            ("sharp", 3) => {
                let s: u64 = args[0]
                    .parse()
                    .map_err(|_| invalid(format!("sharp weight `{}` must be an integer", args[0])))?;
                let t: u64 = args[1]
                    .parse()
                    .map_err(|_| invalid(format!("sharp weight `{}` must be an integer", args[1])))?;
                if s == 0 || t == 0 {
                    return Err(Error::NonPositiveParameter(format!("sharp({s}, {t}, _)")));
                }
                let n = parse_usize(args[2], "vertex count")?;
                Ok(GraphSpec::Sharp { s, t, n })
            }
            ("union", 2) => Ok(GraphSpec::Union(
                Box::new(args[0].parse()?),
                Box::new(args[1].parse()?),
            )),
            (other, k) => Err(invalid(format!(
                "unknown generator `{other}` with {k} argument(s); expected complete(n), gnp(n, p[, seed]), sharp(s, t, n), or union(a, b)"
            ))),
        }
    }
}

/// Draws each vertex pair once and keeps it exactly when
/// `draw * denom(p) < numer(p) * 2^64`. The comparison is done in big
/// integers, so any rational probability is honored without rounding.
fn gnp_graph(n: usize, p: &Rational, seed: u64) -> Result<Graph> {
    let mut rng = SplitMix64::new(seed);
    let two64 = BigInt::from(1u8) << 64u32;
    let threshold = p.numer() * &two64;
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            let draw = BigInt::from(rng.next_u64());
            if draw * p.denom() < threshold {
                edges.push((u, v));
            }
        }
    }
    build_graph(n, &edges)
}

/// Clique on {0, .., s+t} joined to an independent set on the rest; the
/// extremal family whose density sits just under the solvable threshold.
fn sharp_graph(s: u64, t: u64, n: usize) -> Result<Graph> {
    let k = (s + t + 1) as usize;
    if n <= k {
        return Err(invalid(format!(
            "sharp({s}, {t}, {n}) needs more than {k} vertices"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..k as u32 {
        for v in (u + 1)..k as u32 {
            edges.push((u, v));
        }
    }
    for v in k as u32..n as u32 {
        for u in 0..k as u32 {
            edges.push((u, v));
        }
    }
    build_graph(n, &edges)
}

/// Materializes a spec. `fallback_seed` fills in for `gnp` specs that
/// did not pin their own seed.
pub fn generate(spec: &GraphSpec, fallback_seed: Option<u64>) -> Result<Graph> {
    match spec {
        GraphSpec::Complete(n) => Ok(complete_graph(*n)),
        GraphSpec::Gnp { n, p, seed } => {
            let seed = seed
                .or(fallback_seed)
                .ok_or_else(|| invalid("gnp spec needs a seed (inline or via --seed)"))?;
            gnp_graph(*n, p, seed)
        }
        GraphSpec::Sharp { s, t, n } => sharp_graph(*s, *t, *n),
        GraphSpec::Union(a, b) => {
            let left = generate(a, fallback_seed)?;
            let right = generate(b, fallback_seed)?;
            let shift = left.vertex_count() as u32;
            let mut edges = left.edges().to_vec();
            edges.extend(right.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
            build_graph(left.vertex_count() + right.vertex_count(), &edges)
        }
    }
}
