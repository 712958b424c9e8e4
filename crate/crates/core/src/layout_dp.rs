//! The cut digraph: one vertex per enumerated cut, an arc from `(X1, Y1)` to
//! `(X2, Y2)` whenever `X2 = X1 ∪ {v}` for a single `v ∈ Y1`.
//!
//! Source-to-sink paths are exactly the vertex orderings whose prefix cuts were
//! all enumerated. Arc weights depend on the problem:
//!
//! * FAS: arcs from `v` into `X1`, the arcs that become backward once `v` is
//!   placed after `X1`;
//! * OLA: the whole value of `(X1, Y1)`, so a path accumulates the sum of
//!   prefix cut values, which is the cost of the ordering.
//!
//! Arcs are never materialized: successors of a cut are found by looking up
//! `X ∪ {v}` in the index for every `v` outside `X`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::cuts::{set_value, set_weight, Cut};
use crate::digraph::{backward_arcs, FeedbackArcSet, Ordering, SemiCompleteDigraph, WEIGHT_EPSILON};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("the cut set lacks (∅,V) or (V,∅)")]
    SourceOrSinkMissing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightMode {
    Reachability,
    Fas,
    Ola,
    FasWeighted,
    OlaWeighted,
}

/// Does `c2` extend `c1` by exactly one vertex?
pub fn extends(c1: &Cut, c2: &Cut) -> bool {
    extension_vertex(c1, c2).is_some()
}

/// The single vertex `v` with `X2 = X1 ∪ {v}`, if any.
pub fn extension_vertex(c1: &Cut, c2: &Cut) -> Option<usize> {
    if c2.level() != c1.level() + 1 || !c1.x().is_subset(c2.x()) {
        return None;
    }
    c2.x().first_not_in(c1.x())
}

/// Number (or total weight, on weighted instances) of arcs from `v` into `X1`.
pub fn arc_weight_fas(t: &SemiCompleteDigraph, c1: &Cut, v: usize) -> f64 {
    debug_assert!(!c1.x().contains(v));
    t.weight_into(v, c1.x())
}

/// Value (or weight, on weighted instances) of the cut `c1`.
pub fn arc_weight_ola(t: &SemiCompleteDigraph, c1: &Cut) -> f64 {
    set_weight(t, c1.x())
}

/// A source-to-sink path; `cuts[i]` has level `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct CutGraphPath {
    pub cuts: Vec<Cut>,
    pub total_weight: f64,
}

impl CutGraphPath {
    pub fn len(&self) -> usize {
        self.cuts.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Outcome of a budgeted search.
#[derive(Clone, Debug, PartialEq)]
pub enum PathSearch {
    Found(CutGraphPath),
    NoPathWithinBudget,
}

pub struct CutGraph<'a> {
    t: &'a SemiCompleteDigraph,
    mode: WeightMode,
    /// Sorted by `(level, X)`; ids are positions in this list.
    cuts: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    /// Per-cut OLA arc weight, filled in OLA modes.
    leaving: Vec<f64>,
}

impl<'a> CutGraph<'a> {
    pub fn new(t: &'a SemiCompleteDigraph, cuts: impl IntoIterator<Item = Cut>, mode: WeightMode) -> Self {
        let mut xs: Vec<VertexSet> = cuts.into_iter().map(Cut::into_x).collect();
        xs.sort_by_cached_key(|x| (x.len(), x.clone()));
        xs.dedup();
        let index = xs.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let leaving = match mode {
            WeightMode::Ola => xs.iter().map(|x| set_value(t, x) as f64).collect(),
            WeightMode::OlaWeighted => xs.iter().map(|x| set_weight(t, x)).collect(),
            _ => Vec::new(),
        };
        CutGraph { t, mode, cuts: xs, index, leaving }
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn id_of(&self, x: &VertexSet) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn cut(&self, id: usize) -> Cut {
        Cut::new(self.t.n(), self.cuts[id].clone())
    }

    /// `(v, id of X ∪ {v})` for every arc leaving `id`, by increasing `v`.
    pub fn successors(&self, id: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let x = &self.cuts[id];
        (0..self.t.n())
            .filter(move |&v| !x.contains(v))
            .filter_map(move |v| self.index.get(&x.with(v)).map(|&j| (v, j)))
    }

    pub fn arc_count(&self) -> usize {
        (0..self.len()).map(|i| self.successors(i).count()).sum()
    }

    /// Weight of the arc leaving `id` by adding `v`.
    pub fn arc_weight(&self, id: usize, v: usize) -> f64 {
        match self.mode {
            WeightMode::Reachability => 0.0,
            WeightMode::Fas => self.t.arcs_into(v, &self.cuts[id]) as f64,
            WeightMode::FasWeighted => self.t.weight_into(v, &self.cuts[id]),
            WeightMode::Ola | WeightMode::OlaWeighted => self.leaving[id],
        }
    }

    /// Accumulated weight along a sequence of cuts, or `None` if some step is
    /// not an arc of this graph.
    pub fn path_weight(&self, cuts: &[Cut]) -> Option<f64> {
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let id = self.id_of(w[0].x())?;
            self.id_of(w[1].x())?;
            let v = extension_vertex(&w[0], &w[1])?;
            total += self.arc_weight(id, v);
        }
        Some(total)
    }

    fn terminals(&self) -> Result<(usize, usize), LayoutError> {
        let n = self.t.n();
        let s = self.id_of(&VertexSet::empty(n)).ok_or(LayoutError::SourceOrSinkMissing)?;
        let z = self.id_of(&VertexSet::full(n)).ok_or(LayoutError::SourceOrSinkMissing)?;
        Ok((s, z))
    }

    fn build_path(&self, parent: &[usize], sink: usize, total_weight: f64) -> CutGraphPath {
        let mut ids = vec![sink];
        let mut cur = sink;
        while parent[cur] != usize::MAX {
            cur = parent[cur];
            ids.push(cur);
        }
        ids.reverse();
        CutGraphPath { cuts: ids.into_iter().map(|i| self.cut(i)).collect(), total_weight }
    }
}

/// Any source-to-sink path by depth-first search, or `None` when the sink is
/// unreachable.
pub fn solve_reachability(g: &CutGraph<'_>) -> Result<Option<CutGraphPath>, LayoutError> {
    let (source, sink) = g.terminals()?;
    let mut parent = vec![usize::MAX; g.len()];
    let mut seen = vec![false; g.len()];
    seen[source] = true;
    let mut stack = vec![source];
    while let Some(u) = stack.pop() {
        if u == sink {
            return Ok(Some(g.build_path(&parent, sink, 0.0)));
        }
        // reversed so that the smallest extension vertex is explored first
        let succ: Vec<usize> = g.successors(u).map(|(_, j)| j).collect();
        for j in succ.into_iter().rev() {
            if !seen[j] {
                seen[j] = true;
                parent[j] = u;
                stack.push(j);
            }
        }
    }
    Ok(None)
}

#[derive(PartialEq)]
struct Entry {
    dist: f64,
    id: usize,
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // ids follow (level, X) order, which fixes the tie-breaking
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dist.total_cmp(&other.dist).then(self.id.cmp(&other.id))
    }
}

/// Minimum-weight source-to-sink path, if its weight is within `budget`.
pub fn solve_min_path(g: &CutGraph<'_>, budget: f64) -> Result<PathSearch, LayoutError> {
    let (source, sink) = g.terminals()?;
    let limit = budget + WEIGHT_EPSILON;
    let mut dist = vec![f64::INFINITY; g.len()];
    let mut parent = vec![usize::MAX; g.len()];
    let mut done = vec![false; g.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Reverse(Entry { dist: 0.0, id: source }));
    while let Some(Reverse(Entry { dist: d, id: u })) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == sink {
            return Ok(PathSearch::Found(g.build_path(&parent, sink, d)));
        }
        for (v, j) in g.successors(u) {
            let nd = d + g.arc_weight(u, v);
            if nd <= limit && nd < dist[j] {
                dist[j] = nd;
                parent[j] = u;
                heap.push(Reverse(Entry { dist: nd, id: j }));
            }
        }
    }
    Ok(PathSearch::NoPathWithinBudget)
}

/// The ordering that appends extension vertices in path order.
pub fn path_to_ordering(path: &CutGraphPath) -> Ordering {
    let perm = path
        .cuts
        .windows(2)
        .map(|w| extension_vertex(&w[0], &w[1]).expect("consecutive path cuts must extend"))
        .collect();
    Ordering::new(perm).expect("a source-to-sink path visits every vertex once")
}

pub fn path_to_fas(t: &SemiCompleteDigraph, path: &CutGraphPath) -> FeedbackArcSet {
    backward_arcs(t, &path_to_ordering(path))
}
