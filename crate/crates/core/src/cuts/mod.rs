//! k-cuts: bipartitions `(X, Y)` with at most `k` arcs directed from `Y` to `X`.
//!
//! Enumeration branches over vertices in index order, placing each vertex in
//! `X` before `Y`. After every assignment a capped max-flow from the `Y` side
//! to the `X` side lower-bounds the value of every completion; branches whose
//! bound exceeds `k` are discarded. Each surviving node therefore has a k-cut
//! below it, which gives polynomial delay between consecutive outputs.

mod flow;

#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::digraph::SemiCompleteDigraph;
use flow::UnitFlow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance with {n} vertices exceeds the brute-force limit of {limit}")]
    InstanceTooLargeForOracle { n: usize, limit: usize },
}

/// A bipartition of the vertex set; `Y` is the complement of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    x: VertexSet,
    n: usize,
}

impl Cut {
    pub fn new(n: usize, x: VertexSet) -> Self {
        debug_assert!(x.is_subset(&VertexSet::full(n)));
        Cut { x, n }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, x: I) -> Self {
        Cut::new(n, VertexSet::from_iter_in(n, x))
    }

    /// `(∅, V)`
    pub fn source(n: usize) -> Self {
        Cut::new(n, VertexSet::empty(n))
    }

    /// `(V, ∅)`
    pub fn sink(n: usize) -> Self {
        Cut::new(n, VertexSet::full(n))
    }

    pub fn x(&self) -> &VertexSet {
        &self.x
    }

    pub fn y(&self) -> VertexSet {
        self.x.complement(self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|X|`
    pub fn level(&self) -> usize {
        self.x.len()
    }

    pub fn into_x(self) -> VertexSet {
        self.x
    }
}

/// Number of arcs from `Y` to `X`.
pub fn cut_value(t: &SemiCompleteDigraph, cut: &Cut) -> usize {
    set_value(t, cut.x())
}

/// Total weight of arcs from `Y` to `X` (the count on unweighted instances).
pub fn cut_weight(t: &SemiCompleteDigraph, cut: &Cut) -> f64 {
    set_weight(t, cut.x())
}

pub(crate) fn set_value(t: &SemiCompleteDigraph, x: &VertexSet) -> usize {
    (0..t.n())
        .filter(|&u| !x.contains(u))
        .map(|u| t.arcs_into(u, x))
        .sum()
}

pub(crate) fn set_weight(t: &SemiCompleteDigraph, x: &VertexSet) -> f64 {
    if !t.is_weighted() {
        return set_value(t, x) as f64;
    }
    (0..t.n())
        .filter(|&u| !x.contains(u))
        .map(|u| t.weight_into(u, x))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Sides for the first `len()` vertices, in index order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    sides: Vec<Side>,
}

impl PartialAssignment {
    pub fn new(sides: Vec<Side>) -> Self {
        PartialAssignment { sides }
    }

    pub fn assigned_prefix_length(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn push(&mut self, side: Side) {
        self.sides.push(side);
    }

    fn split(&self, n: usize) -> (VertexSet, VertexSet) {
        assert!(self.sides.len() <= n, "assignment longer than the vertex set");
        let mut xs = VertexSet::empty(n);
        let mut ys = VertexSet::empty(n);
        for (v, side) in self.sides.iter().enumerate() {
            match side {
                Side::X => xs.insert(v),
                Side::Y => ys.insert(v),
            }
        }
        (xs, ys)
    }
}

/// Minimum, over all completions of `partial`, of the number of arcs from the
/// final `Y` to the final `X`, computed as a max-flow.
pub fn min_completion_cut(t: &SemiCompleteDigraph, partial: &PartialAssignment) -> usize {
    let (xs, ys) = partial.split(t.n());
    min_completion_cut_between(t, &xs, &ys)
}

/// As [`min_completion_cut`] for arbitrary disjoint fixed sets.
pub fn min_completion_cut_between(t: &SemiCompleteDigraph, x_fixed: &VertexSet, y_fixed: &VertexSet) -> usize {
    UnitFlow::zero(t.n()).augment(t, y_fixed, x_fixed, usize::MAX - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerationOutcome {
    /// Every k-cut, in emission order.
    Complete(Vec<Cut>),
    /// More than `cap` k-cuts exist.
    CapExceeded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutEnumeration {
    pub outcome: EnumerationOutcome,
    pub cuts_emitted: usize,
}

impl CutEnumeration {
    pub fn is_complete(&self) -> bool {
        matches!(self.outcome, EnumerationOutcome::Complete(_))
    }

    pub fn cuts(&self) -> Option<&[Cut]> {
        match &self.outcome {
            EnumerationOutcome::Complete(c) => Some(c),
            EnumerationOutcome::CapExceeded(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Node {
    depth: usize,
    x: VertexSet,
    y: VertexSet,
    flow: UnitFlow,
}

impl Node {
    fn root(n: usize) -> Self {
        Node {
            depth: 0,
            x: VertexSet::empty(n),
            y: VertexSet::empty(n),
            flow: UnitFlow::zero(n),
        }
    }

    /// Children that survive the max-flow bound, `X` branch first.
    fn expand(self, t: &SemiCompleteDigraph, k: usize, mut visit: impl FnMut(Node)) {
        let v = self.depth;
        let mut y_child = Node {
            depth: v + 1,
            x: self.x.clone(),
            y: self.y.with(v),
            flow: self.flow.clone(),
        };
        let mut x_child = Node {
            depth: v + 1,
            x: self.x.with(v),
            ..self
        };
        if x_child.flow.augment(t, &x_child.y, &x_child.x, k) <= k {
            visit(x_child);
        }
        if y_child.flow.augment(t, &y_child.y, &y_child.x, k) <= k {
            visit(y_child);
        }
    }
}

/// Depth-first k-cut enumerator; a stateful iterator yielding each k-cut
/// exactly once in a fixed order, starting with `(V, ∅)`.
pub struct KCutIter<'a> {
    t: &'a SemiCompleteDigraph,
    k: usize,
    stack: Vec<Node>,
    nodes_expanded: usize,
}

impl<'a> KCutIter<'a> {
    pub fn new(t: &'a SemiCompleteDigraph, k: usize) -> Self {
        Self::from_node(t, k, Node::root(t.n()))
    }

    fn from_node(t: &'a SemiCompleteDigraph, k: usize, node: Node) -> Self {
        KCutIter { t, k, stack: vec![node], nodes_expanded: 0 }
    }

    /// Number of internal branch nodes expanded so far.
    pub fn nodes_expanded(&self) -> usize {
        self.nodes_expanded
    }
}

impl Iterator for KCutIter<'_> {
    type Item = Cut;

    fn next(&mut self) -> Option<Cut> {
        let n = self.t.n();
        while let Some(node) = self.stack.pop() {
            if node.depth == n {
                return Some(Cut::new(n, node.x));
            }
            self.nodes_expanded += 1;
            let mut children = Vec::with_capacity(2);
            node.expand(self.t, self.k, |c| children.push(c));
            // LIFO: push Y first so X is explored first.
            self.stack.extend(children.into_iter().rev());
        }
        None
    }
}

/// Collects k-cuts, stopping as soon as the `(cap+1)`-th is found.
pub fn enumerate_k_cuts(t: &SemiCompleteDigraph, k: usize, cap: usize) -> CutEnumeration {
    #[cfg(feature = "parallel")]
    {
        if t.n() >= PARALLEL_MIN_VERTICES {
            return enumerate_k_cuts_parallel(t, k, cap);
        }
    }
    enumerate_k_cuts_sequential(t, k, cap)
}

pub fn enumerate_k_cuts_sequential(t: &SemiCompleteDigraph, k: usize, cap: usize) -> CutEnumeration {
    let mut cuts = Vec::new();
    for cut in KCutIter::new(t, k) {
        if cuts.len() == cap {
            return CutEnumeration {
                outcome: EnumerationOutcome::CapExceeded(cap),
                cuts_emitted: cap.saturating_add(1),
            };
        }
        cuts.push(cut);
    }
    let emitted = cuts.len();
    CutEnumeration { outcome: EnumerationOutcome::Complete(cuts), cuts_emitted: emitted }
}

/// Smaller instances are always enumerated sequentially.
pub const PARALLEL_MIN_VERTICES: usize = 12;

/// Subtrees handed to the thread pool per worker thread.
#[cfg(feature = "parallel")]
const SUBTREES_PER_THREAD: usize = 8;

/// Same result as [`enumerate_k_cuts_sequential`]. The branching tree is
/// expanded level by level until there are enough subtrees to keep every
/// thread busy; subtrees are explored concurrently and concatenated in
/// branching order.
#[cfg(feature = "parallel")]
pub fn enumerate_k_cuts_parallel(t: &SemiCompleteDigraph, k: usize, cap: usize) -> CutEnumeration {
    use rayon::prelude::*;

    let target = SUBTREES_PER_THREAD * rayon::current_num_threads();
    let mut frontier = vec![Node::root(t.n())];
    let mut depth = 0;
    while frontier.len() < target && depth < t.n() {
        let mut next = Vec::with_capacity(2 * frontier.len());
        for node in frontier {
            node.expand(t, k, |c| next.push(c));
        }
        frontier = next;
        depth += 1;
    }

    let found = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let parts: Vec<Vec<Cut>> = frontier
        .into_par_iter()
        .map(|node| {
            let mut local = Vec::new();
            for cut in KCutIter::from_node(t, k, node) {
                if stop.load(AtomicOrdering::Relaxed) {
                    break;
                }
                if found.fetch_add(1, AtomicOrdering::Relaxed) >= cap {
                    stop.store(true, AtomicOrdering::Relaxed);
                    break;
                }
                local.push(cut);
            }
            local
        })
        .collect();

    if stop.load(AtomicOrdering::Relaxed) {
        return CutEnumeration {
            outcome: EnumerationOutcome::CapExceeded(cap),
            cuts_emitted: cap.saturating_add(1),
        };
    }
    let cuts: Vec<Cut> = parts.into_iter().flatten().collect();
    let emitted = cuts.len();
    CutEnumeration { outcome: EnumerationOutcome::Complete(cuts), cuts_emitted: emitted }
}

/// Largest instance accepted by [`brute_count_k_cuts`].
pub const BRUTE_CUT_LIMIT: usize = 24;

/// Counts k-cuts by checking all `2^n` bipartitions.
pub fn brute_count_k_cuts(t: &SemiCompleteDigraph, k: usize) -> Result<u64, OracleError> {
    let n = t.n();
    if n > BRUTE_CUT_LIMIT {
        return Err(OracleError::InstanceTooLargeForOracle { n, limit: BRUTE_CUT_LIMIT });
    }
    let out: Vec<u32> = (0..n)
        .map(|u| (0..n).filter(|&v| t.has_arc(u, v)).fold(0u32, |m, v| m | 1 << v))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let qualifies = |x: u32| {
        let mut value = 0;
        let mut ys = full & !x;
        while ys != 0 {
            let u = ys.trailing_zeros() as usize;
            ys &= ys - 1;
            value += (out[u] & x).count_ones() as usize;
        }
        value <= k
    };
    let total: u64 = 1u64 << n;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..total).into_par_iter().filter(|&x| qualifies(x as u32)).count() as u64)
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..total).filter(|&x| qualifies(x as u32)).count() as u64)
    }
}
