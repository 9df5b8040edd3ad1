//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the console.
//! Criteria that are red for a documented mathematical reason are listed in
//! `EXPECTED_RED`; the process fails if the observed set of red criteria
//! differs from that list in either direction.

use std::collections::{BTreeSet, HashSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use clap::Parser;
use turan_cli::{run, RunConfig};
use turan_core::covering::{family_fp, independent_cover_number, CoverNumber};
use turan_core::graph6::read_corpus;
use turan_core::invariants::chromatic_number;
use turan_core::report::{TheoremReport, Verdict};
use turan_core::solver::{count_free, enumerate_free, ex_general, SolverConfig};
use turan_core::verifier::{
    verify_color_critical_components, verify_erdos_gallai, verify_forest_remark, verify_forest_theorem,
    verify_gerbner_slope, verify_ma_hou, verify_main_theorem_exact, verify_tutte_berge, DenseCandidate,
};
use turan_core::{is_isomorphic, Graph, GraphFamily};

/// Wall-clock budget for criterion 1.
const REMARK_BUDGET: Duration = Duration::from_secs(1);
/// Wall-clock budget for each exhaustive grid.
const GRID_BUDGET: Duration = Duration::from_secs(600);
/// Exact criteria compare integers; no slack is allowed.
const VALUE_TOLERANCE: u64 = 0;
/// Criteria that fail as stated, with the reason.
const EXPECTED_RED: &[(u32, &str)] = &[
    (
        3,
        "K_{2s+1} contains K_{k+1} whenever k <= 2s, so it is not admissible and the \
         maximum over the two candidates overshoots; the admissible dense candidate T_k(2s+1) matches everywhere",
    ),
    (
        5,
        "brute ex(n,{M_4,P_4}) is 6, 7, 9 at n = 7, 8, 9: three disjoint triangles fit exactly at n = 9 \
         and beat the n-1 edges of a star, so the offset to n is -1, -1, 0; from n = 10 the star wins again \
         and the offset returns to -1, consistent with (p-1)n + O(1) but not constant on this window",
    ),
];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cfg() -> SolverConfig {
    SolverConfig::with_workers(4)
}

fn g(text: &str) -> Graph {
    match text {
        "K3" => Graph::complete(3),
        "K4" => Graph::complete(4),
        "C5" => Graph::cycle(5),
        "P4" => Graph::path(4),
        "P6" => Graph::path(6),
        "M2" => Graph::matching(2),
        "M3" => Graph::matching(3),
        "K2+K1" => Graph::from_edges(3, &[(0, 1)]),
        _ => unreachable!("{text}"),
    }
    .unwrap()
}

fn values_equal(report: &TheoremReport) -> Vec<String> {
    report
        .points
        .iter()
        .filter(|p| match (p.brute, p.formula) {
            (Some(b), Some(f)) => b.abs_diff(f) > VALUE_TOLERANCE,
            _ => true,
        })
        .map(|p| format!("{} brute {:?} formula {:?}", p.params_text(), p.brute, p.formula))
        .collect()
}

fn timed<T>(budget: Duration, f: impl FnOnce() -> T) -> (T, Duration, bool) {
    let start = Instant::now();
    let value = f();
    let elapsed = start.elapsed();
    (value, elapsed, elapsed <= budget)
}

fn criterion_1() -> Outcome {
    let (checks, elapsed, fast) = timed(REMARK_BUDGET, || {
        let c5 = g("C5");
        let mut bad = Vec::new();
        let fp2 = family_fp(&c5, 2).unwrap();
        if !(fp2.len() == 1 && is_isomorphic(&fp2.members()[0], &g("K3"))) {
            bad.push(format!("F[2] = {fp2:?}"));
        }
        for p in 3..=5 {
            let fam = family_fp(&c5, p).unwrap();
            if !fam.contains_isomorph(&g("K2+K1")) {
                bad.push(format!("F[{p}] lacks K2+K1"));
            }
        }
        let expect = [(2usize, 1u64), (3, 0), (4, 0)];
        for (p, want) in expect {
            let got = ex_general(p, 2, &family_fp(&c5, p).unwrap(), &cfg()).unwrap().value;
            if got != Some(want) {
                bad.push(format!("ex({p},F[{p}]) = {got:?}, want {want}"));
            }
        }
        bad
    });
    outcome(
        checks.is_empty() && fast,
        format!(
            "{} mismatches, {:.3}s (budget {:?}) {:?}",
            checks.len(),
            elapsed.as_secs_f64(),
            REMARK_BUDGET,
            checks
        ),
    )
}

fn criterion_2() -> Outcome {
    let grid: Vec<(usize, usize)> = (1..=3).flat_map(|s| (2 * s + 1..=9).map(move |n| (n, s))).collect();
    let (report, elapsed, fast) = timed(GRID_BUDGET, || verify_erdos_gallai(&grid, &cfg()).unwrap());
    let bad = values_equal(&report);
    let strict = report.points.iter().all(|p| p.verdict == Verdict::Pass);
    outcome(
        bad.is_empty() && strict && fast,
        format!(
            "{} points, {} mismatches, {:.2}s {:?}",
            report.points.len(),
            bad.len(),
            elapsed.as_secs_f64(),
            bad
        ),
    )
}

fn ma_hou_grid() -> Vec<(usize, usize, usize, usize)> {
    let mut grid = Vec::new();
    for s in 1..=2 {
        for r in 2..=3 {
            for k in r..=3 {
                for n in 2 * s + 1..=8 {
                    grid.push((n, s, r, k));
                }
            }
        }
    }
    grid
}

fn criterion_3() -> Outcome {
    let grid = ma_hou_grid();
    let (report, elapsed, fast) = timed(GRID_BUDGET, || {
        verify_ma_hou(&grid, DenseCandidate::Complete, &cfg()).unwrap()
    });
    let bad = values_equal(&report);
    let turan = verify_ma_hou(&grid, DenseCandidate::Turan, &cfg()).unwrap();
    let turan_bad = values_equal(&turan);
    outcome(
        bad.is_empty() && fast,
        format!(
            "{} points, {} mismatches with K_(2s+1), {:.2}s; diagnostic with T_k(2s+1): {} mismatches; first: {:?}",
            report.points.len(),
            bad.len(),
            elapsed.as_secs_f64(),
            turan_bad.len(),
            bad.iter().take(4).collect::<Vec<_>>()
        ),
    )
}

fn criterion_4() -> Outcome {
    let cases = [("K3", 2usize, 2usize), ("K4", 2, 2), ("K4", 2, 3), ("C5", 2, 2)];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, s, r) in cases {
        let f = g(name);
        let ns: Vec<usize> = ((2 * s + 2).max(6)..=9).collect();
        let gate = match independent_cover_number(&f) {
            CoverNumber::Finite(p) => p > s,
            CoverNumber::Infinite => true,
        };
        let report = verify_main_theorem_exact(&f, s, r, &ns, &cfg()).unwrap();
        let checks_ok = report.checks.iter().all(|c| c.verdict == Verdict::Pass);
        let bad = values_equal(&report);
        let unique_ok = report
            .points
            .iter()
            .all(|p| matches!(p.uniqueness, Some(Verdict::Pass | Verdict::SmallNException)));
        let top = report
            .points
            .last()
            .map(|p| p.uniqueness == Some(Verdict::Pass))
            .unwrap_or(false);
        let exceptions: Vec<String> = report
            .points
            .iter()
            .filter(|p| p.uniqueness == Some(Verdict::SmallNException))
            .map(|p| {
                format!(
                    "n={} has {} extremal graphs",
                    p.size("n").unwrap_or(0),
                    p.witnesses.len()
                )
            })
            .collect();
        let from = report.summary.uniqueness_from_n.values().next().copied();
        ok &= gate && checks_ok && bad.is_empty() && unique_ok && top;
        notes.push(format!(
            "({name},{s},{r}) gate {gate}, value mismatches {}, unique from n={from:?} {exceptions:?}",
            bad.len()
        ));
    }
    outcome(ok, notes.join("; "))
}

fn criterion_5() -> Outcome {
    let f = g("P4");
    let slope = match independent_cover_number(&f) {
        CoverNumber::Finite(p) => p as i64 - 1,
        CoverNumber::Infinite => unreachable!("P4 is bipartite"),
    };
    let report = verify_gerbner_slope(&f, 3, &[7, 8, 9], &cfg()).unwrap();
    let offsets: Vec<i64> = report
        .points
        .iter()
        .map(|p| p.brute.unwrap() as i64 - slope * p.size("n").unwrap() as i64)
        .collect();
    let constant = offsets.windows(2).all(|w| w[0] == w[1]);
    let wide = SolverConfig {
        ceiling: Some(10),
        ..cfg()
    };
    let fam = GraphFamily::from_members("m4 p4", [Graph::matching(4).unwrap(), f]);
    let at_10 = ex_general(10, 2, &fam, &wide).unwrap().value.unwrap() as i64 - slope * 10;
    outcome(
        constant,
        format!("slope {slope}, offsets at n=7..9: {offsets:?}; diagnostic offset at n=10: {at_10}"),
    )
}

fn criterion_6() -> Outcome {
    let report = verify_forest_theorem(&g("P6"), 3, &[8, 9], &cfg()).unwrap();
    let direct: Vec<(usize, Option<u64>)> = report.points.iter().map(|p| (p.size("n").unwrap(), p.brute)).collect();
    let closed = direct.iter().all(|&(n, b)| b == Some(2 * (n as u64 - 2) + 1));
    let strict = report.points.iter().all(|p| p.verdict == Verdict::Pass);
    let checks_ok = report.checks.iter().all(|c| c.verdict == Verdict::Pass);

    let double_star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]).unwrap();
    let forests = [g("P6"), g("M2"), g("P4"), g("M3"), double_star];
    let remark = verify_forest_remark(&forests, &cfg()).unwrap();
    let remark_ok = remark.points.iter().all(|p| p.verdict == Verdict::Pass);
    let star_point = remark.points.last().unwrap();
    let star_ok = star_point.brute == Some(0) && star_point.notes.iter().any(|n| n == "perfect matching: false");
    let values: Vec<Option<u64>> = remark.points.iter().map(|p| p.brute).collect();
    outcome(
        closed && strict && checks_ok && remark_ok && star_ok,
        format!("brute at n=8,9: {direct:?}; remark values P6,M2,P4,M3,double star: {values:?}"),
    )
}

fn criterion_7() -> Outcome {
    let report = verify_tutte_berge(7, &cfg()).unwrap();
    let classes: u64 = report.points.iter().filter_map(|p| p.formula).sum();
    let agree: u64 = report.points.iter().filter_map(|p| p.brute).sum();
    outcome(
        agree == classes && report.all_pass(),
        format!("{agree}/{classes} classes agree on n <= 7"),
    )
}

fn criterion_8() -> Outcome {
    let f = g("K4");
    let ps: Vec<usize> = (3..=7).collect();
    let report = verify_color_critical_components(&f, 3, &ps, &cfg()).unwrap();
    let closed = report
        .points
        .iter()
        .all(|p| p.brute == Some((p.size("p").unwrap() as u64).pow(2) / 4));
    let strict = report.points.iter().all(|p| p.verdict == Verdict::Pass);
    let chi_ok = ps.iter().all(|&p| {
        family_fp(&f, p)
            .unwrap()
            .members()
            .iter()
            .all(|h| chromatic_number(h) >= 3)
    });
    let values: Vec<Option<u64>> = report.points.iter().map(|p| p.brute).collect();
    outcome(
        closed && strict && chi_ok,
        format!("ex(p,K_2,F[p]) for p=3..7: {values:?}, members χ >= 3: {chi_ok}"),
    )
}

/// Isomorphism classes on `n` vertices by labelled enumeration: graphs with
/// non-increasing degrees, deduplicated by the least edge mask over all
/// relabellings that preserve the degree sequence.
fn labelled_classes(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let slot = |a: usize, b: usize| {
        let (lo, hi) = (a.min(b), a.max(b));
        hi * (hi - 1) / 2 + lo
    };
    let mut seen = HashSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut deg = vec![0usize; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
        if deg.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        let mut start = 0;
        while start < n {
            let end = (start..n).find(|&v| deg[v] != deg[start]).unwrap_or(n);
            let mut next = Vec::new();
            for p in &perms {
                for block in permutations((start..end).collect()) {
                    let mut q = p.clone();
                    q.extend(block);
                    next.push(q);
                }
            }
            perms = next;
            start = end;
        }
        let best = perms
            .iter()
            .map(|perm| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .fold(0u64, |m, (_, &(i, j))| m | 1 << slot(perm[i], perm[j]))
            })
            .min()
            .unwrap();
        seen.insert(best);
    }
    seen.len() as u64
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let head = rest.remove(i);
        for mut tail in permutations(rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let none = GraphFamily::new("none");
    let mut counts = Vec::new();
    let mut ok = true;
    for n in 0..=7 {
        let ours = count_free(n, &none, &cfg()).unwrap();
        let theirs = labelled_classes(n);
        ok &= ours == theirs;
        counts.push((ours, theirs));
    }
    let families = [
        GraphFamily::from_members("m3 k4", [g("M3"), g("K4")]),
        GraphFamily::from_members("c5 m3", [g("C5"), g("M3")]),
        GraphFamily::from_members("none", []),
    ];
    let mut identical = true;
    for fam in &families {
        for (n, r) in [(7usize, 2usize), (8, 3)] {
            let payloads: BTreeSet<String> = [1, 4, 8]
                .iter()
                .map(|&w| {
                    serde_json::to_string(&ex_general(n, r, fam, &SolverConfig::with_workers(w)).unwrap()).unwrap()
                })
                .collect();
            identical &= payloads.len() == 1;
        }
        let listings: BTreeSet<Vec<Graph>> = [1, 4, 8]
            .iter()
            .map(|&w| enumerate_free(7, fam, &SolverConfig::with_workers(w)).unwrap())
            .collect();
        identical &= listings.len() == 1;
    }
    outcome(
        ok && identical,
        format!("(enumerated, labelled) counts n=0..7: {counts:?}; 1/4/8 workers identical: {identical}"),
    )
}

fn criterion_10() -> Outcome {
    let text = include_str!("../../core/tests/data/corpus.g6");
    let corpus = read_corpus(text.as_bytes()).unwrap();
    let codes: Vec<&str> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .collect();
    let round_trip = corpus.len() == codes.len()
        && corpus
            .iter()
            .zip(&codes)
            .all(|(g, code)| g.to_graph6() == *code && Graph::from_graph6(code).unwrap() == *g);

    let args = [
        "turan", "verify", "main", "--F", "K4", "--s", "2", "--r", "3", "--n", "6..8",
    ];
    let first = run(&RunConfig::parse_from(args)).unwrap().json;
    let second = run(&RunConfig::parse_from(args)).unwrap().json;
    let mut parallel = args.to_vec();
    parallel.extend(["--workers", "4"]);
    let third = run(&RunConfig::parse_from(&parallel)).unwrap().json;
    let api_same = first == second && second == third;

    let binary = |extra: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_turan"))
            .args(["ex", "--n", "7", "--r", "3", "--forbid", "M3,K4", "--json"])
            .args(extra)
            .output()
            .unwrap();
        (out.status.code(), out.stdout)
    };
    let (a, b, c) = (binary(&[]), binary(&[]), binary(&["--workers", "8"]));
    let bin_same = a == b && b == c && a.0 == Some(0) && !a.1.is_empty();
    outcome(
        round_trip && api_same && bin_same,
        format!(
            "{} corpus graphs round-trip: {round_trip}; repeated run() JSON identical: {api_same}; repeated binary JSON identical: {bin_same}",
            corpus.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "covering family of C5", criterion_1),
        (2, "Erdős–Gallai exact", criterion_2),
        (3, "Ma–Hou exact", criterion_3),
        (4, "main theorem exact with uniqueness", criterion_4),
        (5, "Gerbner slope constant", criterion_5),
        (6, "forest theorem and remark", criterion_6),
        (7, "Tutte–Berge duality", criterion_7),
        (8, "colour-critical components", criterion_8),
        (9, "enumeration self-consistency", criterion_9),
        (10, "determinism and round-trip", criterion_10),
    ];
    let mut red = BTreeSet::new();
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {tag} {name} ({:.2}s): {}",
            start.elapsed().as_secs_f64(),
            result.detail
        );
        if !result.pass {
            red.insert(id);
            if let Some((_, why)) = EXPECTED_RED.iter().find(|(i, _)| *i == id) {
                println!("             analysis: {why}");
            }
        }
    }
    let expected: BTreeSet<u32> = EXPECTED_RED.iter().map(|(i, _)| *i).collect();
    let passed = 10 - red.len();
    println!("acceptance: {passed}/10 pass, red {red:?}, documented red {expected:?}");
    if red == expected {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: observed red set differs from the documented one");
        ExitCode::FAILURE
    }
}
