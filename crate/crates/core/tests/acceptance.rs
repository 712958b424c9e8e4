//! Acceptance suite. Runs without the libtest harness so that each criterion
//! prints exactly one PASS/FAIL line; exits non-zero if any criterion fails.
//!
//! `cargo test --release --test acceptance`

use std::collections::HashSet;
use std::f64::consts::{LN_2, PI};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semicut::cuts::{brute_count_k_cuts, enumerate_k_cuts, EnumerationOutcome};
use semicut::digraph::{
    gen_noisy_transitive, gen_random_semicomplete, gen_random_tournament, gen_transitive, ordering_cost,
    ordering_cost_by_cuts, ordering_width, with_random_integer_weights, SemiCompleteDigraph,
};
use semicut::oracle::{brute_cutwidth, brute_optimum};
use semicut::partitions::{
    base_two_exponent_constant, cap_cutwidth, cap_fas, count_bounded_partitions, partition_numbers,
    transitive_cap, HARDY_RAMANUJAN_C,
};
use semicut::solvers::{
    cutwidth_decide, decide_problem, evaluate, fas_decide, minimize, Answer, NoReason, Problem, SearchStrategy,
};
use semicut::Ordering;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn no_cap_exceeded(answer: &Answer, what: &str) -> Result<(), String> {
    match answer {
        Answer::No(NoReason::CapExceeded { cap, cut_budget }) => {
            Err(format!("{what}: cap {cap} exceeded at cut budget {cut_budget}"))
        }
        _ => Ok(()),
    }
}

fn oracle_equivalence() -> Check {
    let mut instances = 0;
    for i in 0..240u64 {
        let n = 4 + (i % 5) as usize;
        let tournament = (i / 5) % 2 == 0;
        let weighted = (i / 10) % 2 == 0;
        let base = if tournament {
            gen_random_tournament(n, i)
        } else {
            gen_random_semicomplete(n, 0.3, i).unwrap()
        };
        let t = if weighted { with_random_integer_weights(&base, 3, i).unwrap() } else { base };
        for problem in [Problem::Fas, Problem::Cutwidth, Problem::Ola] {
            let w = weighted && problem != Problem::Cutwidth;
            let (expected, _) = brute_optimum(problem, &t, w).unwrap();
            let m = minimize(problem, &t, w, SearchStrategy::Doubling).map_err(|e| e.to_string())?;
            ensure(m.objective == expected, || {
                format!("instance {i} {problem}: minimize {} vs oracle {expected}", m.objective)
            })?;
            let achieved = evaluate(problem, &t, &m.solution().ordering, w);
            ensure(achieved == expected, || format!("instance {i} {problem}: certificate evaluates to {achieved}"))?;
            let at_optimum = decide_problem(problem, &t, expected, w).map_err(|e| e.to_string())?;
            no_cap_exceeded(&at_optimum.answer, &format!("instance {i} {problem}"))?;
            ensure(at_optimum.is_yes(), || format!("instance {i} {problem}: no at the optimum"))?;
        }
        instances += 1;
    }
    Ok(format!("{instances} instances, 3 problems each, all equal to the oracle"))
}

fn enumeration_completeness() -> Check {
    let mut checked = 0;
    for seed in 0..60u64 {
        let n = 1 + (seed % 10) as usize;
        let t = match seed % 3 {
            0 => gen_random_tournament(n, seed),
            1 => gen_random_semicomplete(n, 0.25, seed).unwrap(),
            _ => gen_noisy_transitive(n, (seed as usize / 3) % 4, seed).unwrap_or_else(|_| gen_transitive(n)),
        };
        for k in 0..=4 {
            let expected = brute_count_k_cuts(&t, k).unwrap();
            let e = enumerate_k_cuts(&t, k, 1 << 30);
            let EnumerationOutcome::Complete(cuts) = e.outcome else {
                return Err(format!("seed {seed} k {k}: cap hit"));
            };
            let distinct: HashSet<_> = cuts.iter().map(|c| c.x().clone()).collect();
            ensure(distinct.len() == cuts.len(), || format!("seed {seed} k {k}: duplicates"))?;
            ensure(cuts.len() as u64 == expected, || {
                format!("seed {seed} k {k}: enumerated {} vs brute {expected}", cuts.len())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (instance, k) pairs over 60 instances"))
}

fn transitive_identity() -> Check {
    for n in 0..=12 {
        let t = gen_transitive(n);
        for k in 0..=6 {
            let brute = BigUint::from(brute_count_k_cuts(&t, k).unwrap());
            let by_partitions: BigUint = (0..=n).map(|a| count_bounded_partitions(k, a, n - a)).sum();
            ensure(brute == by_partitions, || format!("n {n} k {k}: brute {brute} vs partitions {by_partitions}"))?;
            let cap = transitive_cap(n, k);
            ensure(brute <= cap, || format!("n {n} k {k}: {brute} above {cap}"))?;
        }
    }
    Ok("n <= 12, k <= 6".into())
}

fn cap_validity() -> Check {
    let mut noisy = 0;
    for n in 1..=12 {
        for k in 0..=4 {
            for seed in 0..3u64 {
                let Ok(t) = gen_noisy_transitive(n, k, seed) else { continue };
                let count = BigUint::from(brute_count_k_cuts(&t, k).unwrap());
                ensure(count <= cap_fas(n, k), || format!("noisy n {n} k {k} seed {seed}: {count} cuts"))?;
                let out = fas_decide(&t, k).map_err(|e| e.to_string())?;
                no_cap_exceeded(&out.answer, &format!("fas noisy n {n} k {k} seed {seed}"))?;
                ensure(out.is_yes(), || format!("fas noisy n {n} k {k} seed {seed}: answered no"))?;
                noisy += 1;
            }
        }
    }
    let mut narrow = 0;
    for seed in 0..80u64 {
        let n = 3 + (seed % 7) as usize;
        let t = match seed % 3 {
            0 => gen_random_tournament(n, seed),
            1 => gen_random_semicomplete(n, 0.3, seed).unwrap(),
            _ => gen_noisy_transitive(n, 2, seed).unwrap(),
        };
        let cw = brute_cutwidth(&t).unwrap() as usize;
        for k in cw..=cw + 2 {
            let count = BigUint::from(brute_count_k_cuts(&t, k).unwrap());
            ensure(count <= cap_cutwidth(n, k), || format!("seed {seed} k {k}: {count} cuts"))?;
            let out = cutwidth_decide(&t, k).map_err(|e| e.to_string())?;
            no_cap_exceeded(&out.answer, &format!("cutwidth seed {seed} k {k}"))?;
            ensure(out.is_yes(), || format!("cutwidth seed {seed} k {k}: answered no"))?;
            narrow += 1;
        }
    }
    Ok(format!("{noisy} noisy instances, {narrow} cutwidth instances, no cap exceeded on a yes-instance"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut all = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            all.push(q);
        }
    }
    all
}

fn width_cost_transfer() -> Check {
    let mut orderings = 0u64;
    for n in 1..=7 {
        let perms = permutations(n);
        for seed in 0..4u64 {
            let t = if seed % 2 == 0 {
                gen_random_tournament(n, seed)
            } else {
                gen_random_semicomplete(n, 0.3, seed).unwrap()
            };
            for p in &perms {
                let sigma = Ordering::new(p.clone()).unwrap();
                let w = ordering_width(&t, &sigma) as u128;
                let c = ordering_cost(&t, &sigma) as u128;
                ensure(w * w * w <= (4 * c) * (4 * c), || format!("n {n} seed {seed} {p:?}: width {w} cost {c}"))?;
                orderings += 1;
            }
        }
    }
    Ok(format!("{orderings} orderings"))
}

fn cost_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..10_000u64 {
        let n = 1 + (i % 30) as usize;
        let t: SemiCompleteDigraph = if i % 2 == 0 {
            gen_random_tournament(n, i)
        } else {
            gen_random_semicomplete(n, 0.2, i).unwrap()
        };
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng);
        let sigma = Ordering::new(p).unwrap();
        let (a, b) = (ordering_cost(&t, &sigma), ordering_cost_by_cuts(&t, &sigma));
        ensure(a == b, || format!("pair {i}: {a} vs {b}"))?;
    }
    Ok("10000 pairs, n <= 30".into())
}

fn count_partitions_brute(j: usize, max_part: usize) -> u64 {
    if j == 0 {
        return 1;
    }
    (1..=max_part.min(j)).map(|part| count_partitions_brute(j - part, part)).sum()
}

fn partition_numbers_check() -> Check {
    let table = partition_numbers(2000);
    for j in 0..=20 {
        let brute = count_partitions_brute(j, j);
        ensure(*table.get(j) == BigUint::from(brute), || format!("p({j}) = {} vs {brute}", table.get(j)))?;
    }
    ensure(*table.get(5) == BigUint::from(7u32) && *table.get(10) == BigUint::from(42u32), || "anchors".into())?;
    // independent computation: parts added one size at a time
    let mut dp = vec![BigUint::zero(); 2001];
    dp[0] = BigUint::one();
    for part in 1..=2000 {
        for s in part..=2000 {
            let add = dp[s - part].clone();
            dp[s] += add;
        }
    }
    for (j, v) in dp.iter().enumerate() {
        ensure(table.get(j) == v, || format!("p({j}) disagrees with the part-by-part count"))?;
    }
    Ok(format!("p(j) for j <= 20 by enumeration, j <= 2000 cross-checked ({} digits)", table.get(2000).to_string().len()))
}

fn constant_identity() -> Check {
    let big_c = PI * (2.0f64 / 3.0).sqrt();
    let c = base_two_exponent_constant();
    ensure((HARDY_RAMANUJAN_C - big_c).abs() <= 1e-15, || format!("C = {HARDY_RAMANUJAN_C}"))?;
    ensure((c - 2.0 * PI / (3f64.sqrt() * LN_2)).abs() <= 1e-15 && c <= 5.24, || format!("c = {c}"))?;
    let mut worst = 0.0f64;
    for k in [1.0f64, 4.0, 9.0, 100.0] {
        let lhs = (big_c * (2.0 * k).sqrt()).exp();
        let rhs = 2f64.powf(c * k.sqrt());
        let rel = ((lhs - rhs) / lhs).abs();
        worst = worst.max(rel);
        ensure(rel <= 1e-12, || format!("k {k}: relative error {rel:e}"))?;
    }
    Ok(format!("c = {c:.6}, worst relative error {worst:.1e}"))
}

fn performance_smoke() -> Check {
    let budget = Duration::from_secs(60);
    let t = gen_noisy_transitive(40, 8, 0).unwrap();
    let start = Instant::now();
    let cw = cutwidth_decide(&t, 8).map_err(|e| e.to_string())?;
    let cw_time = start.elapsed();
    ensure(cw.is_yes() && cw_time < budget, || format!("cutwidth: yes={} in {cw_time:?}", cw.is_yes()))?;

    let t = gen_noisy_transitive(60, 10, 0).unwrap();
    let start = Instant::now();
    let fas = fas_decide(&t, 10).map_err(|e| e.to_string())?;
    let fas_time = start.elapsed();
    ensure(fas.is_yes() && fas_time < budget, || format!("fas: yes={} in {fas_time:?}", fas.is_yes()))?;
    Ok(format!("cutwidth n=40 k=8 in {cw_time:.2?}, fas n=60 k=10 in {fas_time:.2?}"))
}

fn run_cli(args: &[&str]) -> Result<(Option<i32>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_semicut")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code(), out.stdout))
}

fn cli_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (tour, weighted) = (p("tour.txt"), p("weighted.txt"));
    run_cli(&["gen", "tournament", "--n", "8", "--seed", "11", "--out", &tour])?;
    run_cli(&["gen", "noisy", "--n", "9", "--flips", "3", "--seed", "5", "--max-weight", "3", "--out", &weighted])?;

    let stdout_commands: Vec<Vec<&str>> = vec![
        vec!["gen", "semicomplete", "--n", "12", "--pdouble", "0.3", "--seed", "4"],
        vec!["validate", &tour],
        vec!["solve", "fas", &tour, "--minimize", "--json"],
        vec!["solve", "cutwidth", &tour, "--k", "2", "--json"],
        vec!["solve", "ola", &weighted, "--minimize", "--weighted", "--json"],
        vec!["solve", "ola", &tour, "--minimize", "--engine", "brute", "--json"],
        vec!["count-cuts", &tour, "--k", "3", "--json"],
    ];
    for args in &stdout_commands {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure(first == second, || format!("`{}` differs between runs", args.join(" ")))?;
    }
    let mut csvs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = p(name);
        let (code, _) = run_cli(&["bench", "--family", "noisy", "--n", "8..14", "--k", "0..3", "--seeds", "3", "--out", &out])?;
        ensure(code == Some(0), || format!("bench exited with {code:?}"))?;
        csvs.push(std::fs::read(Path::new(&out)).map_err(|e| e.to_string())?);
    }
    ensure(csvs[0] == csvs[1], || "bench CSV differs between runs".into())?;
    Ok(format!("{} commands plus bench CSV, byte-identical", stdout_commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("enumeration completeness", enumeration_completeness),
        ("transitive count identity", transitive_identity),
        ("cap validity", cap_validity),
        ("width/cost transfer", width_cost_transfer),
        ("cost identity", cost_identity),
        ("partition numbers", partition_numbers_check),
        ("constant identity", constant_identity),
        ("performance smoke", performance_smoke),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
