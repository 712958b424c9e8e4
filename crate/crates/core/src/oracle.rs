//! Exhaustive reference optima over all `n!` orderings.
//!
//! No pruning: every ordering is evaluated with the plain objective
//! definitions. Ties go to the lexicographically smallest ordering.

use crate::cuts::OracleError;
use crate::digraph::{Ordering, SemiCompleteDigraph};
use crate::solvers::{evaluate, Problem};

/// Largest instance accepted by the ordering oracle.
pub const BRUTE_ORDER_LIMIT: usize = 9;

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn better(a: &(f64, Vec<usize>), b: &(f64, Vec<usize>)) -> bool {
    a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)).is_lt()
}

/// Best ordering among those starting with `first`.
fn best_with_first(problem: Problem, t: &SemiCompleteDigraph, weighted: bool, first: usize) -> (f64, Vec<usize>) {
    let n = t.n();
    let mut perm: Vec<usize> = std::iter::once(first).chain((0..n).filter(|&v| v != first)).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let sigma = Ordering::new(perm.clone()).expect("permutation");
        let value = evaluate(problem, t, &sigma, weighted);
        let cand = (value, perm.clone());
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            best = Some(cand);
        }
        if !next_permutation(&mut perm[1..]) {
            break;
        }
    }
    best.expect("at least one ordering")
}

/// Minimum objective value and the lexicographically first ordering attaining it.
pub fn brute_optimum(
    problem: Problem,
    t: &SemiCompleteDigraph,
    weighted: bool,
) -> Result<(f64, Ordering), OracleError> {
    let n = t.n();
    if n > BRUTE_ORDER_LIMIT {
        return Err(OracleError::InstanceTooLargeForOracle { n, limit: BRUTE_ORDER_LIMIT });
    }
    if n == 0 {
        return Ok((0.0, Ordering::identity(0)));
    }
    #[cfg(feature = "parallel")]
    let per_first: Vec<(f64, Vec<usize>)> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(|f| best_with_first(problem, t, weighted, f)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_first: Vec<(f64, Vec<usize>)> = (0..n).map(|f| best_with_first(problem, t, weighted, f)).collect();

    let (value, perm) = per_first
        .into_iter()
        .reduce(|a, b| if better(&b, &a) { b } else { a })
        .expect("n > 0");
    Ok((value, Ordering::new(perm).expect("permutation")))
}

pub fn brute_min_fas(t: &SemiCompleteDigraph) -> Result<u64, OracleError> {
    brute_optimum(Problem::Fas, t, false).map(|(v, _)| v as u64)
}

pub fn brute_cutwidth(t: &SemiCompleteDigraph) -> Result<u64, OracleError> {
    brute_optimum(Problem::Cutwidth, t, false).map(|(v, _)| v as u64)
}

pub fn brute_ola(t: &SemiCompleteDigraph) -> Result<u64, OracleError> {
    brute_optimum(Problem::Ola, t, false).map(|(v, _)| v as u64)
}

pub fn brute_min_fas_weighted(t: &SemiCompleteDigraph) -> Result<f64, OracleError> {
    brute_optimum(Problem::Fas, t, true).map(|(v, _)| v)
}

pub fn brute_ola_weighted(t: &SemiCompleteDigraph) -> Result<f64, OracleError> {
    brute_optimum(Problem::Ola, t, true).map(|(v, _)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{gen_random_semicomplete, gen_transitive, triangle};
    use proptest::prelude::*;

    #[test]
    fn permutation_stepping() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn known_optima() {
        let t5 = gen_transitive(5);
        assert_eq!((brute_min_fas(&t5), brute_cutwidth(&t5), brute_ola(&t5)), (Ok(0), Ok(0), Ok(0)));
        let tri = triangle();
        assert_eq!((brute_min_fas(&tri), brute_cutwidth(&tri), brute_ola(&tri)), (Ok(1), Ok(1), Ok(2)));
        // triangle plus b->a: ordering (b,c,a) has the single backward arc a->b
        let doubled = SemiCompleteDigraph::from_matrix(&[
            vec![false, true, false],
            vec![true, false, true],
            vec![true, false, false],
        ])
        .unwrap();
        assert_eq!(brute_min_fas(&doubled), Ok(1));
        assert_eq!(brute_cutwidth(&doubled), Ok(1));
        assert_eq!(brute_ola(&doubled), Ok(2));
        assert!(brute_ola(&gen_transitive(10)).is_err());
        assert_eq!(brute_optimum(Problem::Ola, &gen_transitive(0), false).unwrap().0, 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn oracle_orderings_and_relabelling(n in 1usize..7, seed: u64, shift in 0usize..7) {
            let t = gen_random_semicomplete(n, 0.3, seed).unwrap();
            let fas = brute_min_fas(&t).unwrap();
            let cw = brute_cutwidth(&t).unwrap();
            let ola = brute_ola(&t).unwrap();
            prop_assert!(cw <= fas && fas <= ola);

            let relabel = |v: usize| (v + shift) % n;
            let mut m = vec![vec![false; n]; n];
            for (u, v) in t.arcs() {
                m[relabel(u)][relabel(v)] = true;
            }
            let r = SemiCompleteDigraph::from_matrix(&m).unwrap();
            prop_assert_eq!(brute_min_fas(&r).unwrap(), fas);
            prop_assert_eq!(brute_cutwidth(&r).unwrap(), cw);
            prop_assert_eq!(brute_ola(&r).unwrap(), ola);
        }
    }
}
