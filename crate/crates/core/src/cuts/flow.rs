//! Unit-capacity max-flow from a set of sources to a set of sinks, with
//! unbounded capacity on the source and sink attachments.
//!
//! The flow is kept as a 0/1 matrix over the arcs of the digraph. Adding
//! vertices to either terminal set never invalidates a feasible flow, so the
//! enumerator hands a parent's flow to its children and only augments.

use crate::bitset::VertexSet;
use crate::digraph::SemiCompleteDigraph;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub(crate) struct UnitFlow {
    /// `along[u]` contains `v` iff arc `(u,v)` carries a unit.
    along: Vec<VertexSet>,
    /// Transpose of `along`.
    against: Vec<VertexSet>,
    value: usize,
}

impl UnitFlow {
    pub fn zero(n: usize) -> Self {
        UnitFlow {
            along: vec![VertexSet::empty(n); n],
            against: vec![VertexSet::empty(n); n],
            value: 0,
        }
    }

    /// Augments along shortest residual paths from `sources` to `sinks` until
    /// none remains or the value exceeds `limit`. Returns the new value, which
    /// is the exact max-flow whenever it is `<= limit`.
    pub fn augment(
        &mut self,
        t: &SemiCompleteDigraph,
        sources: &VertexSet,
        sinks: &VertexSet,
        limit: usize,
    ) -> usize {
        let n = t.n();
        if sources.is_empty() || sinks.is_empty() {
            return self.value;
        }
        let mut parent = vec![NONE; n];
        let mut queue = Vec::with_capacity(n);
        while self.value <= limit {
            let mut visited = sources.clone();
            queue.clear();
            queue.extend(sources.iter());
            let mut head = 0;
            let mut hit = None;
            'bfs: while head < queue.len() {
                let u = queue[head];
                head += 1;
                let mut fresh = VertexSet::empty(n);
                {
                    let out = t.out_neighbours(u).words();
                    let along = self.along[u].words();
                    let back = self.against[u].words();
                    let seen = visited.words();
                    for (i, w) in fresh.words_mut().iter_mut().enumerate() {
                        *w = ((out[i] & !along[i]) | back[i]) & !seen[i];
                    }
                }
                if let Some(w) = fresh.iter().find(|&w| sinks.contains(w)) {
                    parent[w] = u;
                    hit = Some(w);
                    break 'bfs;
                }
                for w in fresh.iter() {
                    parent[w] = u;
                    queue.push(w);
                }
                visited.union_with(&fresh);
            }
            let Some(mut c) = hit else { break };
            loop {
                let p = parent[c];
                if self.against[p].contains(c) {
                    self.along[c].remove(p);
                    self.against[p].remove(c);
                } else {
                    self.along[p].insert(c);
                    self.against[c].insert(p);
                }
                if sources.contains(p) {
                    break;
                }
                c = p;
            }
            self.value += 1;
        }
        self.value
    }
}
