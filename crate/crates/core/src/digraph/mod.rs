//! Semi-complete digraphs, vertex orderings and their objective values.

mod generate;
mod io;

pub use generate::{
    gen_noisy_transitive, gen_random_semicomplete, gen_random_tournament, gen_transitive,
    with_random_integer_weights,
};
pub use io::{read_digraph, write_digraph, ParseError};

use thiserror::Error;

use crate::bitset::VertexSet;

/// Equality tolerance used when comparing real-valued weighted objectives.
pub const WEIGHT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DigraphError {
    #[error("row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("loop at vertex {0}")]
    LoopPresent(usize),
    #[error("neither ({0},{1}) nor ({1},{0}) is an arc")]
    MissingArcPair(usize, usize),
    #[error("weight of arc ({0},{1}) is below 1")]
    WeightBelowOne(usize, usize),
    #[error("weight given for missing arc ({0},{1})")]
    WeightOnMissingArc(usize, usize),
    #[error("arc ({0},{1}) has no weight")]
    WeightMissing(usize, usize),
    #[error("weighted objective requested on an unweighted instance")]
    WeightedCalledOnUnweighted,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a permutation of 0..{n}: {reason}")]
    InvalidOrdering { n: usize, reason: String },
}

/// A simple digraph in which every pair of distinct vertices is joined by at
/// least one arc. Vertices are `0..n`.
///
/// Out- and in-neighbourhoods are kept as bit-sets so that cut values reduce
/// to word-wise popcounts. Weights, when present, are stored densely with `0`
/// at non-arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiCompleteDigraph {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
    weights: Option<Vec<f64>>,
}

impl SemiCompleteDigraph {
    /// Validates a boolean adjacency matrix; `matrix[u][v]` is the arc `(u,v)`.
    pub fn from_matrix(matrix: &[Vec<bool>]) -> Result<Self, DigraphError> {
        let n = matrix.len();
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(DigraphError::NotSquare { row, len: r.len(), n });
            }
        }
        for (v, row) in matrix.iter().enumerate() {
            if row[v] {
                return Err(DigraphError::LoopPresent(v));
            }
        }
        let mut pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        if let Some((u, v)) = pairs.find(|&(u, v)| !matrix[u][v] && !matrix[v][u]) {
            return Err(DigraphError::MissingArcPair(u, v));
        }
        let mut out = vec![VertexSet::empty(n); n];
        let mut inn = vec![VertexSet::empty(n); n];
        for u in 0..n {
            for v in 0..n {
                if matrix[u][v] {
                    out[u].insert(v);
                    inn[v].insert(u);
                }
            }
        }
        Ok(SemiCompleteDigraph { n, out, inn, weights: None })
    }

    /// Attaches weights given as `weights[u][v]`, which must be `Some(w)` with
    /// `w >= 1` exactly on the arcs.
    pub fn with_weights(mut self, weights: &[Vec<Option<f64>>]) -> Result<Self, DigraphError> {
        let n = self.n;
        if weights.len() != n {
            return Err(DigraphError::NotSquare { row: weights.len(), len: weights.len(), n });
        }
        let mut dense = vec![0.0; n * n];
        for (u, row) in weights.iter().enumerate() {
            if row.len() != n {
                return Err(DigraphError::NotSquare { row: u, len: row.len(), n });
            }
            for (v, w) in row.iter().enumerate() {
                match (self.has_arc(u, v), w) {
                    (true, Some(w)) if w.is_nan() || *w < 1.0 || !w.is_finite() => {
                        return Err(DigraphError::WeightBelowOne(u, v))
                    }
                    (true, Some(w)) => dense[u * n + v] = *w,
                    (true, None) => return Err(DigraphError::WeightMissing(u, v)),
                    (false, Some(_)) => return Err(DigraphError::WeightOnMissingArc(u, v)),
                    (false, None) => {}
                }
            }
        }
        self.weights = Some(dense);
        Ok(self)
    }

    /// Drops the weights, keeping the arc structure.
    pub fn unweighted(&self) -> Self {
        SemiCompleteDigraph { weights: None, ..self.clone() }
    }

    pub(crate) fn from_parts(out: Vec<VertexSet>) -> Self {
        let n = out.len();
        let mut inn = vec![VertexSet::empty(n); n];
        for (u, row) in out.iter().enumerate() {
            for v in row.iter() {
                inn[v].insert(u);
            }
        }
        SemiCompleteDigraph { n, out, inn, weights: None }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    #[inline]
    pub fn out_neighbours(&self, u: usize) -> &VertexSet {
        &self.out[u]
    }

    #[inline]
    pub fn in_neighbours(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Weight of arc `(u,v)`; `1` on unweighted instances and `0` on non-arcs.
    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        match &self.weights {
            Some(w) => w[u * self.n + v],
            None if self.has_arc(u, v) => 1.0,
            None => 0.0,
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(VertexSet::len).sum()
    }

    /// True iff no pair of vertices is joined in both directions.
    pub fn is_tournament(&self) -> bool {
        (0..self.n).all(|u| self.out[u].intersection_len(&self.inn[u]) == 0)
    }

    /// Boolean adjacency matrix.
    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.has_arc(u, v)).collect())
            .collect()
    }

    /// Number of arcs from vertex `v` into `set`.
    #[inline]
    pub fn arcs_into(&self, v: usize, set: &VertexSet) -> usize {
        self.out[v].intersection_len(set)
    }

    /// Total weight of arcs from vertex `v` into `set`.
    pub fn weight_into(&self, v: usize, set: &VertexSet) -> f64 {
        match &self.weights {
            None => self.arcs_into(v, set) as f64,
            Some(w) => {
                let row = &w[v * self.n..(v + 1) * self.n];
                self.out[v].iter().filter(|&x| set.contains(x)).map(|x| row[x]).sum()
            }
        }
    }
}

/// A permutation of the vertices; position `i` holds the `(i+1)`-th vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordering(Vec<usize>);

impl Ordering {
    pub fn new(perm: Vec<usize>) -> Result<Self, DigraphError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n {
                return Err(DigraphError::InvalidOrdering { n, reason: format!("vertex {v} out of range") });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(DigraphError::InvalidOrdering { n, reason: format!("vertex {v} repeated") });
            }
        }
        Ok(Ordering(perm))
    }

    pub fn identity(n: usize) -> Self {
        Ordering((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `positions()[v]` is the zero-based position of `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    fn check_against(&self, t: &SemiCompleteDigraph) {
        assert_eq!(self.0.len(), t.n(), "ordering does not cover the instance");
    }
}

/// A set of arcs, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FeedbackArcSet(Vec<(usize, usize)>);

impl FeedbackArcSet {
    pub fn new(mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        FeedbackArcSet(arcs)
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, t: &SemiCompleteDigraph) -> f64 {
        self.0.iter().map(|&(u, v)| t.weight(u, v)).sum()
    }

    /// Topological order of `t` with these arcs removed, or `None` if a cycle
    /// survives. Ties are broken by smallest vertex.
    pub fn topological_order_after_removal(&self, t: &SemiCompleteDigraph) -> Option<Ordering> {
        let n = t.n();
        let mut out = t.out.clone();
        for &(u, v) in &self.0 {
            if u < n && v < n {
                out[u].remove(v);
            }
        }
        let mut indeg = vec![0usize; n];
        for row in &out {
            for v in row.iter() {
                indeg[v] += 1;
            }
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for v in out[u].iter() {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.insert(v);
                }
            }
        }
        (order.len() == n).then_some(Ordering(order))
    }

    pub fn is_feedback_arc_set_of(&self, t: &SemiCompleteDigraph) -> bool {
        self.topological_order_after_removal(t).is_some()
    }
}

/// Largest number of arcs directed from a suffix of `sigma` to the
/// complementary prefix; `0` when `n <= 1`.
pub fn ordering_width(t: &SemiCompleteDigraph, sigma: &Ordering) -> usize {
    sigma.check_against(t);
    let n = t.n();
    let mut prefix = VertexSet::empty(n);
    let mut suffix = VertexSet::full(n);
    let mut current = 0usize;
    let mut best = 0;
    for &v in sigma.as_slice().iter().take(n.saturating_sub(1)) {
        suffix.remove(v);
        current -= t.arcs_into(v, &prefix);
        current += t.in_neighbours(v).intersection_len(&suffix);
        prefix.insert(v);
        best = best.max(current);
    }
    best
}

/// Sum over backward arcs of their length in `sigma`.
pub fn ordering_cost(t: &SemiCompleteDigraph, sigma: &Ordering) -> u64 {
    sigma.check_against(t);
    let pos = sigma.positions();
    t.arcs()
        .filter(|&(u, v)| pos[u] > pos[v])
        .map(|(u, v)| (pos[u] - pos[v]) as u64)
        .sum()
}

/// Sum over backward arcs of weight times length.
pub fn ordering_cost_weighted(t: &SemiCompleteDigraph, sigma: &Ordering) -> Result<f64, DigraphError> {
    if !t.is_weighted() {
        return Err(DigraphError::WeightedCalledOnUnweighted);
    }
    sigma.check_against(t);
    let pos = sigma.positions();
    Ok(t.arcs()
        .filter(|&(u, v)| pos[u] > pos[v])
        .map(|(u, v)| t.weight(u, v) * (pos[u] - pos[v]) as f64)
        .sum())
}

/// The cost of `sigma` accumulated as the sum of all prefix cut values.
pub fn ordering_cost_by_cuts(t: &SemiCompleteDigraph, sigma: &Ordering) -> u64 {
    sigma.check_against(t);
    let n = t.n();
    let mut prefix = VertexSet::empty(n);
    let mut suffix = VertexSet::full(n);
    let mut current = 0usize;
    let mut total = 0u64;
    for &v in sigma.as_slice().iter().take(n.saturating_sub(1)) {
        suffix.remove(v);
        current -= t.arcs_into(v, &prefix);
        current += t.in_neighbours(v).intersection_len(&suffix);
        prefix.insert(v);
        total += current as u64;
    }
    total
}

/// Arcs of `t` pointing backwards in `sigma`.
pub fn backward_arcs(t: &SemiCompleteDigraph, sigma: &Ordering) -> FeedbackArcSet {
    sigma.check_against(t);
    let pos = sigma.positions();
    FeedbackArcSet::new(t.arcs().filter(|&(u, v)| pos[u] > pos[v]).collect())
}

#[cfg(test)]
pub(crate) fn triangle() -> SemiCompleteDigraph {
    // a=0, b=1, c=2 with a->b, b->c, c->a
    SemiCompleteDigraph::from_matrix(&[
        vec![false, true, false],
        vec![false, false, true],
        vec![true, false, false],
    ])
    .unwrap()
}
