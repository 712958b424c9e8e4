//! Seeded instance generators. All randomness flows from a `ChaCha8Rng`
//! seeded with the caller's seed, so output is stable across platforms.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DigraphError, SemiCompleteDigraph};
use crate::bitset::VertexSet;

/// Transitive tournament with arcs `(i,j)` for all `i < j`.
pub fn gen_transitive(n: usize) -> SemiCompleteDigraph {
    let out = (0..n)
        .map(|u| VertexSet::from_iter_in(n, u + 1..n))
        .collect();
    SemiCompleteDigraph::from_parts(out)
}

/// Uniformly random tournament.
pub fn gen_random_tournament(n: usize, seed: u64) -> SemiCompleteDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![VertexSet::empty(n); n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                out[u].insert(v);
            } else {
                out[v].insert(u);
            }
        }
    }
    SemiCompleteDigraph::from_parts(out)
}

/// Transitive tournament with `flips` distinct arcs, chosen uniformly, reversed.
/// The reversed arcs form a feedback arc set w.r.t. the identity order.
pub fn gen_noisy_transitive(n: usize, flips: usize, seed: u64) -> Result<SemiCompleteDigraph, DigraphError> {
    let pairs = n * n.saturating_sub(1) / 2;
    if flips > pairs {
        return Err(DigraphError::InvalidParameter(format!(
            "cannot reverse {flips} arcs of a tournament with {pairs} arcs"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out: Vec<VertexSet> = (0..n)
        .map(|u| VertexSet::from_iter_in(n, u + 1..n))
        .collect();
    let mut chosen = sample(&mut rng, pairs, flips).into_vec();
    chosen.sort_unstable();
    for i in chosen {
        let (u, v) = all[i];
        out[u].remove(v);
        out[v].insert(u);
    }
    Ok(SemiCompleteDigraph::from_parts(out))
}

/// Random semi-complete digraph: each pair is joined in both directions with
/// probability `p_double`, otherwise by one arc of random direction.
pub fn gen_random_semicomplete(n: usize, p_double: f64, seed: u64) -> Result<SemiCompleteDigraph, DigraphError> {
    if !(0.0..=1.0).contains(&p_double) {
        return Err(DigraphError::InvalidParameter(format!(
            "p_double must lie in [0,1], got {p_double}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![VertexSet::empty(n); n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p_double) {
                out[u].insert(v);
                out[v].insert(u);
            } else if rng.random_bool(0.5) {
                out[u].insert(v);
            } else {
                out[v].insert(u);
            }
        }
    }
    Ok(SemiCompleteDigraph::from_parts(out))
}

/// Assigns every arc an integer weight drawn uniformly from `1..=max_weight`.
pub fn with_random_integer_weights(
    t: &SemiCompleteDigraph,
    max_weight: u32,
    seed: u64,
) -> Result<SemiCompleteDigraph, DigraphError> {
    if max_weight < 1 {
        return Err(DigraphError::InvalidParameter("max_weight must be at least 1".into()));
    }
    let n = t.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![vec![None; n]; n];
    for (u, v) in t.arcs() {
        w[u][v] = Some(rng.random_range(1..=max_weight) as f64);
    }
    t.unweighted().with_weights(&w)
}
