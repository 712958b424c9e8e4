//! Decision and minimization drivers for the three ordering problems.
//!
//! Each decision procedure picks a cut budget and the matching cap from
//! [`crate::partitions`], enumerates cuts (answering "no" as soon as the cap
//! is exceeded), builds the cut digraph and searches it. Every "yes" carries an
//! ordering whose objective has been recomputed from scratch.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cuts::{enumerate_k_cuts, EnumerationOutcome};
use crate::digraph::{
    backward_arcs, ordering_cost, ordering_cost_weighted, ordering_width, FeedbackArcSet, Ordering,
    SemiCompleteDigraph, WEIGHT_EPSILON,
};
use crate::layout_dp::{path_to_ordering, solve_min_path, solve_reachability, CutGraph, PathSearch, WeightMode};
use crate::partitions::{cap_cutwidth, cap_fas, cap_ola, ola_width_budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Fas,
    Cutwidth,
    Ola,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Fas => "fas",
            Problem::Cutwidth => "cutwidth",
            Problem::Ola => "ola",
        })
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fas" => Ok(Problem::Fas),
            "cutwidth" => Ok(Problem::Cutwidth),
            "ola" => Ok(Problem::Ola),
            _ => Err(format!("unknown problem `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("malformed solution: {0}")]
    MalformedSolution(String),
}

/// Objective of `sigma`: backward arcs (FAS), width, or cost (OLA). With
/// `weighted`, FAS and OLA sum arc weights; cutwidth is always unweighted.
pub fn evaluate(problem: Problem, t: &SemiCompleteDigraph, sigma: &Ordering, weighted: bool) -> f64 {
    match (problem, weighted && t.is_weighted()) {
        (Problem::Fas, false) => backward_arcs(t, sigma).len() as f64,
        (Problem::Fas, true) => backward_arcs(t, sigma).weight(t),
        (Problem::Cutwidth, _) => ordering_width(t, sigma) as f64,
        (Problem::Ola, false) => ordering_cost(t, sigma) as f64,
        (Problem::Ola, true) => ordering_cost_weighted(t, sigma).expect("weighted instance"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub ordering: Ordering,
    /// Objective of `ordering`, recomputed by the digraph evaluators.
    pub objective: f64,
    /// Backward arcs of `ordering`; FAS only.
    pub fas: Option<FeedbackArcSet>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NoReason {
    /// More than `cap` cuts of value at most `cut_budget` exist.
    CapExceeded { cap: BigUint, cut_budget: usize },
    /// All cuts were enumerated but no ordering fits the budget.
    SearchExhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Answer {
    Yes(Solution),
    No(NoReason),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveStats {
    /// Cut values allowed during enumeration.
    pub cut_budget: usize,
    pub cap: BigUint,
    pub cuts_enumerated: usize,
    pub cut_graph_size: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub answer: Answer,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self.answer, Answer::Yes(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match &self.answer {
            Answer::Yes(s) => Some(s),
            Answer::No(_) => None,
        }
    }
}

fn cap_to_usize(cap: &BigUint) -> usize {
    cap.to_usize().unwrap_or(usize::MAX)
}

fn check_budget(k: f64) -> Result<(), SolverError> {
    if k.is_nan() || k < 0.0 {
        return Err(SolverError::InvalidInstance(format!("budget must be non-negative, got {k}")));
    }
    Ok(())
}

/// Shared decision pipeline. `budget` bounds the objective; `weighted`
/// selects the weighted objective for FAS and OLA.
fn decide(problem: Problem, t: &SemiCompleteDigraph, budget: f64, weighted: bool) -> Result<SolveOutcome, SolverError> {
    check_budget(budget)?;
    if weighted && !t.is_weighted() {
        return Err(SolverError::InvalidInstance("weighted solver called on an unweighted instance".into()));
    }
    let start = Instant::now();
    // Weights are at least 1, so the unweighted objective never exceeds the
    // weighted one and the integer part of the budget bounds it.
    let k = (budget + WEIGHT_EPSILON).floor().min(usize::MAX as f64 / 4.0) as usize;
    let n = t.n();
    let (cut_budget, cap, mode) = match (problem, weighted) {
        (Problem::Fas, false) => (k, cap_fas(n, k), WeightMode::Fas),
        (Problem::Fas, true) => (k, cap_fas(n, k), WeightMode::FasWeighted),
        (Problem::Cutwidth, _) => (k, cap_cutwidth(n, k), WeightMode::Reachability),
        (Problem::Ola, false) => (ola_width_budget(k), cap_ola(n, k), WeightMode::Ola),
        (Problem::Ola, true) => (ola_width_budget(k), cap_ola(n, k), WeightMode::OlaWeighted),
    };
    let enumeration = enumerate_k_cuts(t, cut_budget, cap_to_usize(&cap));
    let mut stats = SolveStats {
        cut_budget,
        cap: cap.clone(),
        cuts_enumerated: enumeration.cuts_emitted,
        cut_graph_size: 0,
        elapsed: Duration::ZERO,
    };
    let cuts = match enumeration.outcome {
        EnumerationOutcome::Complete(cuts) => cuts,
        EnumerationOutcome::CapExceeded(_) => {
            stats.elapsed = start.elapsed();
            return Ok(SolveOutcome { answer: Answer::No(NoReason::CapExceeded { cap, cut_budget }), stats });
        }
    };
    let graph = CutGraph::new(t, cuts, mode);
    stats.cut_graph_size = graph.len();
    let path = match mode {
        WeightMode::Reachability => solve_reachability(&graph),
        _ => solve_min_path(&graph, budget).map(|r| match r {
            PathSearch::Found(p) => Some(p),
            PathSearch::NoPathWithinBudget => None,
        }),
    }
    .expect("complete enumerations contain both terminal cuts");

    let answer = match path {
        None => Answer::No(NoReason::SearchExhausted),
        Some(path) => {
            let ordering = path_to_ordering(&path);
            let objective = evaluate(problem, t, &ordering, weighted);
            assert!(
                objective <= budget + WEIGHT_EPSILON,
                "{problem} solution with objective {objective} exceeds budget {budget}"
            );
            if mode != WeightMode::Reachability {
                assert!((objective - path.total_weight).abs() <= WEIGHT_EPSILON * objective.max(1.0));
            }
            let fas = (problem == Problem::Fas).then(|| backward_arcs(t, &ordering));
            Answer::Yes(Solution { ordering, objective, fas })
        }
    };
    stats.elapsed = start.elapsed();
    Ok(SolveOutcome { answer, stats })
}

/// Feedback arc set of size at most `k`, or a certified "no".
pub fn fas_decide(t: &SemiCompleteDigraph, k: usize) -> Result<SolveOutcome, SolverError> {
    decide(Problem::Fas, t, k as f64, false)
}

/// Feedback arc set of total weight at most `k`.
pub fn fas_decide_weighted(t: &SemiCompleteDigraph, k: f64) -> Result<SolveOutcome, SolverError> {
    decide(Problem::Fas, t, k, true)
}

/// Ordering of width at most `k`, or a certified "no".
pub fn cutwidth_decide(t: &SemiCompleteDigraph, k: usize) -> Result<SolveOutcome, SolverError> {
    decide(Problem::Cutwidth, t, k as f64, false)
}

/// Ordering of cost at most `k`, or a certified "no".
pub fn ola_decide(t: &SemiCompleteDigraph, k: usize) -> Result<SolveOutcome, SolverError> {
    decide(Problem::Ola, t, k as f64, false)
}

/// Ordering of weighted cost at most `k`.
pub fn ola_decide_weighted(t: &SemiCompleteDigraph, k: f64) -> Result<SolveOutcome, SolverError> {
    decide(Problem::Ola, t, k, true)
}

/// Dispatches to the decision procedure for `problem`.
pub fn decide_problem(
    problem: Problem,
    t: &SemiCompleteDigraph,
    k: f64,
    weighted: bool,
) -> Result<SolveOutcome, SolverError> {
    match (problem, weighted) {
        (Problem::Fas, false) => fas_decide(t, budget_as_int(k)?),
        (Problem::Fas, true) => fas_decide_weighted(t, k),
        (Problem::Cutwidth, _) => cutwidth_decide(t, budget_as_int(k)?),
        (Problem::Ola, false) => ola_decide(t, budget_as_int(k)?),
        (Problem::Ola, true) => ola_decide_weighted(t, k),
    }
}

fn budget_as_int(k: f64) -> Result<usize, SolverError> {
    check_budget(k)?;
    Ok((k + WEIGHT_EPSILON).floor() as usize)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchStrategy {
    /// `k = 0, 1, 3, 7, ..` until "yes", then binary search below it.
    #[default]
    Doubling,
    /// `k = 0, 1, 2, ..`
    Linear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    /// Smallest integer budget answered "yes".
    pub k: usize,
    /// Optimal objective value; equals `k` on unweighted problems.
    pub objective: f64,
    pub outcome: SolveOutcome,
    /// Number of decision calls made.
    pub calls: usize,
}

impl Minimum {
    pub fn solution(&self) -> &Solution {
        self.outcome.solution().expect("minimum carries a yes outcome")
    }
}

/// Smallest budget for which the decision procedure answers "yes".
pub fn minimize(
    problem: Problem,
    t: &SemiCompleteDigraph,
    weighted: bool,
    strategy: SearchStrategy,
) -> Result<Minimum, SolverError> {
    let mut calls = 0;
    let mut run = |k: usize| {
        calls += 1;
        decide_problem(problem, t, k as f64, weighted)
    };
    let (k, outcome) = match strategy {
        SearchStrategy::Linear => {
            let mut k = 0;
            loop {
                let out = run(k)?;
                if out.is_yes() {
                    break (k, out);
                }
                k += 1;
            }
        }
        SearchStrategy::Doubling => {
            // invariant: `lo` is "no" (or -1), `hi` is "yes"
            let first = run(0)?;
            if first.is_yes() {
                (0, first)
            } else {
                let mut lo = 0usize;
                let mut hi = 1usize;
                let mut best = loop {
                    let out = run(hi)?;
                    if out.is_yes() {
                        break out;
                    }
                    lo = hi;
                    hi = hi * 2 + 1;
                };
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    let out = run(mid)?;
                    if out.is_yes() {
                        hi = mid;
                        best = out;
                    } else {
                        lo = mid;
                    }
                }
                (hi, best)
            }
        }
    };
    let objective = outcome.solution().expect("yes").objective;
    Ok(Minimum { k, objective, outcome, calls })
}

/// A certificate to check independently of the solvers.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Ordering(Ordering),
    Arcs(FeedbackArcSet),
}

/// Recomputes the objective of `certificate` and compares it with `k`.
pub fn verify(
    problem: Problem,
    t: &SemiCompleteDigraph,
    certificate: &Certificate,
    k: f64,
    weighted: bool,
) -> Result<bool, SolverError> {
    if weighted && !t.is_weighted() {
        return Err(SolverError::InvalidInstance("weighted check on an unweighted instance".into()));
    }
    let value = match certificate {
        Certificate::Ordering(sigma) => {
            if sigma.len() != t.n() {
                return Err(SolverError::MalformedSolution(format!(
                    "ordering has {} vertices, instance has {}",
                    sigma.len(),
                    t.n()
                )));
            }
            evaluate(problem, t, sigma, weighted)
        }
        Certificate::Arcs(arcs) => {
            if problem != Problem::Fas {
                return Err(SolverError::MalformedSolution(format!("an arc set does not certify {problem}")));
            }
            if let Some(&(u, v)) = arcs.arcs().iter().find(|&&(u, v)| u >= t.n() || v >= t.n() || !t.has_arc(u, v)) {
                return Err(SolverError::MalformedSolution(format!("({u},{v}) is not an arc")));
            }
            if !arcs.is_feedback_arc_set_of(t) {
                return Err(SolverError::MalformedSolution("removing the arcs leaves a cycle".into()));
            }
            if weighted {
                arcs.weight(t)
            } else {
                arcs.len() as f64
            }
        }
    };
    Ok(value <= k + WEIGHT_EPSILON)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{
        gen_noisy_transitive, gen_random_semicomplete, gen_random_tournament, gen_transitive, triangle,
        with_random_integer_weights,
    };
    use crate::oracle::{brute_cutwidth, brute_min_fas, brute_ola, brute_optimum};

    #[test]
    fn triangle_decisions() {
        let tri = triangle();
        let yes = fas_decide(&tri, 1).unwrap();
        assert_eq!(yes.solution().unwrap().fas.as_ref().unwrap().len(), 1);
        assert!(!fas_decide(&tri, 0).unwrap().is_yes());
        assert!(!cutwidth_decide(&tri, 0).unwrap().is_yes());
        assert!(cutwidth_decide(&tri, 1).unwrap().is_yes());
        assert_eq!(ola_decide(&tri, 2).unwrap().solution().unwrap().objective, 2.0);
        assert!(!ola_decide(&tri, 1).unwrap().is_yes());
    }

    #[test]
    fn transitive_is_free() {
        let t = gen_transitive(12);
        for out in [fas_decide(&t, 0), cutwidth_decide(&t, 0), ola_decide(&t, 0)] {
            let out = out.unwrap();
            assert_eq!(out.solution().unwrap().ordering, Ordering::identity(12));
            assert_eq!(out.solution().unwrap().objective, 0.0);
        }
        for p in [Problem::Fas, Problem::Cutwidth, Problem::Ola] {
            assert_eq!(minimize(p, &t, false, SearchStrategy::Doubling).unwrap().k, 0);
        }
    }

    #[test]
    fn noisy_fas_found() {
        let t = gen_noisy_transitive(30, 5, 11).unwrap();
        let out = fas_decide(&t, 5).unwrap();
        let sol = out.solution().unwrap();
        assert!(sol.fas.as_ref().unwrap().len() <= 5);
        assert!(verify(Problem::Fas, &t, &Certificate::Arcs(sol.fas.clone().unwrap()), 5.0, false).unwrap());
    }

    #[test]
    fn triangle_minima() {
        let tri = triangle();
        let got: Vec<usize> = [Problem::Fas, Problem::Cutwidth, Problem::Ola]
            .into_iter()
            .map(|p| minimize(p, &tri, false, SearchStrategy::Linear).unwrap().k)
            .collect();
        assert_eq!(got, vec![1, 1, 2]);
    }

    #[test]
    fn random_tournament_cutwidth_and_ola_match_brute() {
        for seed in 0..4 {
            let t = gen_random_tournament(7, seed);
            let cw = brute_cutwidth(&t).unwrap() as usize;
            for k in 0..=cw + 1 {
                assert_eq!(cutwidth_decide(&t, k).unwrap().is_yes(), cw <= k);
            }
            let t6 = gen_random_tournament(6, seed);
            let ola = brute_ola(&t6).unwrap() as usize;
            for k in 0..=10 {
                assert_eq!(ola_decide(&t6, k).unwrap().is_yes(), ola <= k, "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn strategies_agree_and_are_monotone() {
        for seed in 0..8 {
            let t = gen_random_semicomplete(6, 0.25, seed).unwrap();
            for p in [Problem::Fas, Problem::Cutwidth, Problem::Ola] {
                let a = minimize(p, &t, false, SearchStrategy::Doubling).unwrap();
                let b = minimize(p, &t, false, SearchStrategy::Linear).unwrap();
                assert_eq!(a.k, b.k);
                for k in a.k..a.k + 3 {
                    assert!(decide_problem(p, &t, k as f64, false).unwrap().is_yes());
                }
            }
            assert_eq!(minimize(Problem::Fas, &t, false, SearchStrategy::Doubling).unwrap().k as u64, brute_min_fas(&t).unwrap());
        }
    }

    #[test]
    fn weighted_with_unit_weights_matches_unweighted() {
        for seed in 0..6 {
            let t = gen_random_semicomplete(6, 0.3, seed).unwrap();
            let unit = with_random_integer_weights(&t, 1, seed).unwrap();
            for p in [Problem::Fas, Problem::Ola] {
                let a = minimize(p, &t, false, SearchStrategy::Doubling).unwrap();
                let b = minimize(p, &unit, true, SearchStrategy::Doubling).unwrap();
                assert_eq!(a.objective, b.objective);
            }
        }
    }

    #[test]
    fn weighted_fractional_optimum() {
        let t = with_random_integer_weights(&gen_random_tournament(6, 3), 3, 3).unwrap();
        let mut w = vec![vec![None; 6]; 6];
        for (u, v) in t.arcs() {
            w[u][v] = Some(t.weight(u, v) + 0.25);
        }
        let t = t.unweighted().with_weights(&w).unwrap();
        for p in [Problem::Fas, Problem::Ola] {
            let (best, _) = brute_optimum(p, &t, true).unwrap();
            let m = minimize(p, &t, true, SearchStrategy::Doubling).unwrap();
            assert!((m.objective - best).abs() < 1e-9);
            assert!(decide_problem(p, &t, best, true).unwrap().is_yes());
            assert!(!decide_problem(p, &t, best - 0.1, true).unwrap().is_yes());
        }
    }

    #[test]
    fn verify_rejections() {
        let tri = triangle();
        let sigma = Ordering::new(vec![0, 1, 2]).unwrap();
        assert!(!verify(Problem::Cutwidth, &tri, &Certificate::Ordering(sigma.clone()), 0.0, false).unwrap());
        assert!(verify(Problem::Cutwidth, &tri, &Certificate::Ordering(sigma), 1.0, false).unwrap());
        assert!(matches!(
            verify(Problem::Fas, &tri, &Certificate::Arcs(FeedbackArcSet::default()), 5.0, false),
            Err(SolverError::MalformedSolution(_))
        ));
        assert!(matches!(
            verify(Problem::Fas, &tri, &Certificate::Arcs(FeedbackArcSet::new(vec![(0, 2)])), 5.0, false),
            Err(SolverError::MalformedSolution(_))
        ));
        assert!(matches!(
            verify(Problem::Ola, &tri, &Certificate::Ordering(Ordering::identity(2)), 5.0, false),
            Err(SolverError::MalformedSolution(_))
        ));
        assert!(fas_decide_weighted(&tri, 1.0).is_err());
        assert!(decide_problem(Problem::Fas, &tri, -1.0, false).is_err());
    }
}
