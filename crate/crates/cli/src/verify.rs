//! Acceptance checks. Each check returns a [`Report`]; `mbox verify` and the
//! `acceptance` test target print one line per check.

use std::sync::Arc;
use std::time::{Duration, Instant};

use mbox_core::criteria::{
    enforcer_gcd_condition, estimate_bounds, gcd, gcd_avoider_witness, n_mono_enforcer, n_strict,
    potential_criterion, strict_last_mover,
};
use mbox_core::hypergames::{
    greedy_independent_set, h_game_board, hyper_best_response, isolation_hypothesis,
    play_hyper_match, random_bounded_degree_graph, GraphSpec, HyperState, Hypergraph,
    IsolateVertexAvoider, MatchingEnforcer, Objective, RandomHyperPlayer, SpreadEnforcer,
};
use mbox_core::strict::strategy_s_steps;
use mbox_core::{
    new_game, play_match, uniform_game, Bias, LargestBoxEnforcer, MinimalN, MonoAvoider,
    MonoEnforcer, OptimalStrategy, Position, RandomStrategy, Rules, Side, Solver, StrategyS,
    StrictAvoider, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const CRITERIA: u8 = 11;
const SCAN_LIMIT: u32 = 20;

#[derive(Debug, Clone)]
pub struct Report {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Report {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {} ({:.2?}) {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed,
            self.detail
        )
    }
}

pub fn run(id: u8, solver: &Arc<Solver>) -> Report {
    let start = Instant::now();
    let (title, (passed, detail)) = match id {
        1 => ("two boxes of two, strict, Avoider first", two_boxes_of_two(solver)),
        2 => ("gcd witness implies Avoider win (solver and strategy)", gcd_witness_grid(solver)),
        3 => ("strict dichotomy at solver scale", strict_dichotomy(solver)),
        4 => ("strategy S survives truncated first moves", truncated_first_move(solver)),
        5 => ("monotone Avoider strategy wins exhaustively", mono_avoider_suite(solver)),
        6 => ("monotone Enforcer strategy wins exhaustively", mono_enforcer_suite(solver)),
        7 => ("closed-form estimates of the monotone Enforcer threshold", estimates()),
        8 => ("average dangerous size drops against largest-box Enforcer", phi_recurrence()),
        9 => ("strategy S structural invariants", strategy_s_invariants(solver)),
        10 => ("potential criterion implies Avoider win", potential_cross_check(solver)),
        11 => ("hypergraph applications", applications(solver)),
        _ => ("unknown criterion", (false, format!("no criterion {id}"))),
    };
    Report {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(solver: &Arc<Solver>) -> Vec<Report> {
    (1..=CRITERIA).map(|id| run(id, solver)).collect()
}

fn summarize(checked: usize, failures: &[String]) -> (bool, String) {
    let mut detail = format!("{checked} checks, {} failures", failures.len());
    if !failures.is_empty() {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        detail.push_str(&format!("; e.g. {}", shown.join("; ")));
    }
    (failures.is_empty(), detail)
}

/// Non-decreasing size vectors with 1..=max_n entries in `lo..=hi`.
pub fn size_vectors(max_n: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    fn rec(cur: &mut Vec<u32>, from: u32, hi: u32, max_n: usize, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_n {
            return;
        }
        for s in from..=hi {
            cur.push(s);
            rec(cur, s, hi, max_n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), lo, hi, max_n, &mut out);
    out
}

struct GridPoint {
    bias: Bias,
    sizes: Vec<u32>,
    first: Side,
}

/// p, q in 1..=3; up to four boxes of size at most five; both first players.
fn small_grid() -> Vec<GridPoint> {
    let mut out = Vec::new();
    for p in 1..=3 {
        for q in 1..=3 {
            for sizes in size_vectors(4, 1, 5) {
                for first in [Side::Avoider, Side::Enforcer] {
                    out.push(GridPoint {
                        bias: Bias::new(p, q).expect("positive"),
                        sizes: sizes.clone(),
                        first,
                    });
                }
            }
        }
    }
    out
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Avoider => "Avoider",
        Side::Enforcer => "Enforcer",
    }
}

fn two_boxes_of_two(solver: &Solver) -> (bool, String) {
    let expected = [((1, 1), Side::Avoider), ((1, 2), Side::Enforcer), ((2, 2), Side::Avoider)];
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut got = Vec::new();
    for ((p, q), want) in expected {
        let pos = new_game(&[2, 2], Bias::new(p, q).expect("positive"), Rules::Strict, Side::Avoider)
            .expect("valid sizes");
        match solver.solve(&pos) {
            Ok(r) => {
                got.push(format!("({p},{q})={}", side_name(r.winner)));
                if r.winner != want {
                    failures.push(format!("({p},{q}) expected {}", side_name(want)));
                }
            }
            Err(e) => failures.push(format!("({p},{q}): {e}")),
        }
    }
    if start.elapsed() >= Duration::from_secs(1) {
        failures.push(format!("took {:.2?}", start.elapsed()));
    }
    let (ok, mut detail) = summarize(3, &failures);
    detail.push_str(&format!(" [{}]", got.join(" ")));
    (ok, detail)
}

fn gcd_witness_grid(solver: &Solver) -> (bool, String) {
    let points: Vec<GridPoint> = small_grid()
        .into_iter()
        .filter(|g| gcd_avoider_witness(g.bias.p(), g.bias.q(), g.sizes[0]).is_some())
        .collect();
    let failures: Vec<String> = points
        .par_iter()
        .filter_map(|g| {
            let pos = new_game(&g.sizes, g.bias, Rules::Strict, g.first).expect("valid sizes");
            let solved = solver.solve(&pos).map(|r| r.winner);
            let resp = solver
                .best_response(&pos, Side::Avoider, &StrictAvoider::new())
                .map(|r| r.winner);
            match (solved, resp) {
                (Ok(Side::Avoider), Ok(Side::Avoider)) => None,
                (a, b) => Some(format!(
                    "{:?} {} {}-first: solve={a:?} strategy={b:?}",
                    g.sizes,
                    g.bias,
                    side_name(g.first)
                )),
            }
        })
        .collect();
    summarize(points.len(), &failures)
}

/// Solver-minimal Enforcer n for every tuple with the gcd condition, per
/// first player.
fn dichotomy_tuples() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for p in 1..=2 {
        for q in 1..=2 {
            for k in 1..=3 {
                out.push((p, q, k));
            }
        }
    }
    out
}

fn strict_dichotomy(solver: &Solver) -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut found = Vec::new();
    for (p, q, k) in dichotomy_tuples() {
        let bias = Bias::new(p, q).expect("positive");
        let cond = enforcer_gcd_condition(p, q, k);
        for first in [Side::Avoider, Side::Enforcer] {
            checked += 1;
            let tag = format!("({p},{q},{k}) {}-first", side_name(first));
            match (cond, solver.minimal_enforcer_n(bias, k, Rules::Strict, first, SCAN_LIMIT)) {
                (true, Ok(MinimalN::Found(n))) => {
                    let bound = n_strict(p, q, k).unwrap_or(u64::MAX);
                    if u64::from(n) > bound {
                        failures.push(format!("{tag}: minimal n {n} above {bound}"));
                    }
                    let pos = uniform_game(n, k, bias, Rules::Strict, first).expect("valid");
                    match solver.best_response(&pos, Side::Enforcer, &StrategyS) {
                        Ok(r) if r.winner == Side::Enforcer => {}
                        other => failures.push(format!("{tag}: strategy S at n={n}: {other:?}")),
                    }
                    found.push(format!("{tag}={n}"));
                }
                (false, Ok(MinimalN::NoneUpTo(_))) => {}
                (c, r) => failures.push(format!("{tag}: condition {c}, scan {r:?}")),
            }
        }
    }
    let (ok, mut detail) = summarize(checked, &failures);
    detail.push_str(&format!(" [minimal n: {}]", found.join(", ")));
    (ok, detail)
}

/// Solver-minimal n for (p,q,k), the larger over both first players.
pub fn minimal_n_both(solver: &Solver, bias: Bias, k: u32, rules: Rules) -> Option<u32> {
    let mut n = 0;
    for first in [Side::Avoider, Side::Enforcer] {
        match solver.minimal_enforcer_n(bias, k, rules, first, SCAN_LIMIT) {
            Ok(MinimalN::Found(m)) => n = n.max(m),
            _ => return None,
        }
    }
    Some(n)
}

/// Positions after Enforcer, moving first in `n x k`, claims only `t` of his
/// `q` elements with strategy S, for every `t` in `0..=q`.
fn truncated_starts(n: u32, k: u32, bias: Bias) -> Vec<(u32, Position)> {
    let pos = uniform_game(n, k, bias, Rules::Strict, Side::Enforcer).expect("valid");
    (0..=bias.q())
        .map(|t| {
            let start = if t == 0 {
                pos.with_to_move(Side::Avoider)
            } else {
                pos.apply_partial(&strategy_s_steps(&pos, t)).expect("S steps are legal")
            };
            (t, start)
        })
        .collect()
}

/// Smallest `n` such that every truncated start is an Enforcer win for all
/// `n..=SCAN_LIMIT`. Winners are not monotone in `n`, so a single win is
/// not enough.
pub fn truncation_robust_n(solver: &Solver, bias: Bias, k: u32) -> Option<u32> {
    let robust = |n: u32| {
        truncated_starts(n, k, bias)
            .iter()
            .all(|(_, s)| matches!(solver.solve(s), Ok(r) if r.winner == Side::Enforcer))
    };
    let mut best = None;
    for n in (1..=SCAN_LIMIT).rev() {
        if !robust(n) {
            break;
        }
        best = Some(n);
    }
    best
}

fn truncated_first_move(solver: &Solver) -> (bool, String) {
    let (p, q, k) = (1, 2, 2);
    let bias = Bias::new(p, q).expect("positive");
    let Some(n0) = truncation_robust_n(solver, bias, k) else {
        return (false, format!("no robust n up to {SCAN_LIMIT}"));
    };
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in n0..=(n0 + 2).min(SCAN_LIMIT) {
        for (t, start) in truncated_starts(n, k, bias) {
            checked += 1;
            match solver.best_response(&start, Side::Enforcer, &StrategyS) {
                Ok(r) if r.winner == Side::Enforcer => {}
                other => failures.push(format!("n={n} t={t}: {other:?}")),
            }
        }
    }
    let (ok, mut detail) = summarize(checked, &failures);
    let plain = minimal_n_both(solver, bias, k, Rules::Strict);
    detail.push_str(&format!(
        " [(1,2,2): robust from n={n0}; plain minimal n={}]",
        plain.map_or("none".into(), |n| n.to_string())
    ));
    (ok, detail)
}

fn exhaustive_suite(
    solver: &Solver,
    instances: &[(Bias, Vec<u32>)],
    fixed: Side,
    make: impl Fn() -> Box<dyn mbox_core::Strategy> + Sync,
) -> (usize, Vec<String>) {
    let jobs: Vec<(Bias, Vec<u32>, Side)> = instances
        .iter()
        .flat_map(|(b, s)| [Side::Avoider, Side::Enforcer].map(|f| (*b, s.clone(), f)))
        .collect();
    let failures = jobs
        .par_iter()
        .filter_map(|(bias, sizes, first)| {
            let pos = new_game(sizes, *bias, Rules::Monotone, *first).expect("valid");
            match solver.best_response(&pos, fixed, make().as_ref()) {
                Ok(r) if r.winner == fixed => None,
                other => Some(format!("{sizes:?} {bias} {}-first: {other:?}", side_name(*first))),
            }
        })
        .collect();
    (jobs.len(), failures)
}

fn mono_avoider_suite(solver: &Solver) -> (bool, String) {
    let mut instances = Vec::new();
    for (p, q, k, max_n) in [(1, 2, 2, 2), (1, 3, 3, 4)] {
        let bias = Bias::new(p, q).expect("positive");
        for sizes in size_vectors(max_n, k, 5) {
            instances.push((bias, sizes));
        }
    }
    let (n, failures) = exhaustive_suite(solver, &instances, Side::Avoider, || {
        Box::new(MonoAvoider::new())
    });
    summarize(n, &failures)
}

/// Instances for the monotone Enforcer suite: four boxes of two, plus
/// mixed sizes with mean at most two.
pub fn mono_enforcer_instances() -> Vec<Vec<u32>> {
    vec![
        vec![2, 2, 2, 2],
        vec![1, 2, 2, 3],
        vec![1, 1, 3, 3],
        vec![1, 1, 2, 4],
        vec![1, 2, 2, 2, 3],
    ]
}

fn mono_enforcer_suite(solver: &Solver) -> (bool, String) {
    let bias = Bias::new(1, 2).expect("positive");
    let instances: Vec<(Bias, Vec<u32>)> = mono_enforcer_instances()
        .into_iter()
        .map(|s| (bias, s))
        .collect();
    let (n, failures) = exhaustive_suite(solver, &instances, Side::Enforcer, || Box::new(MonoEnforcer));
    summarize(n, &failures)
}

fn estimates() -> (bool, String) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for a in 1..=5 {
        for k in 1..=8 {
            let pairs = if a == 1 { vec![(1, 1)] } else { vec![(1, a), (a, 1)] };
            for (p, q) in pairs {
                checked += 1;
                match estimate_bounds(p, q, k) {
                    Ok(b) if b.holds => {}
                    Ok(b) => failures.push(format!(
                        "N({p},{q},{k})={} exceeds {:.3}",
                        b.recursion_value, b.bound_value
                    )),
                    Err(e) => failures.push(format!("({p},{q},{k}): {e}")),
                }
            }
        }
    }
    summarize(checked, &failures)
}

/// Mean size of the dangerous boxes as an exact fraction `(sum, count)`.
fn dangerous_mean(pos: &Position) -> Option<(i128, i128)> {
    let d: Vec<u32> = pos
        .boxes()
        .iter()
        .filter(|b| b.is_dangerous())
        .map(|b| b.remaining)
        .collect();
    if d.is_empty() {
        return None;
    }
    Some((d.iter().map(|&x| i128::from(x)).sum(), d.len() as i128))
}

/// `phi(i+1) <= phi(i) - p/(n-i)` at every round of one match, Enforcer
/// first. Returns the violations.
pub fn phi_violations(verdict: &Verdict, n: u32, p: u32) -> Vec<String> {
    let mut out = Vec::new();
    // positions[2(i-1)] is the start of round i.
    let starts: Vec<&Position> = verdict.positions.iter().step_by(2).collect();
    for (idx, pair) in starts.windows(2).enumerate() {
        let i = idx as i128 + 1;
        let left = i128::from(n) - i;
        if left <= 0 || pair[1].is_over() {
            continue;
        }
        let (Some((s0, c0)), Some((s1, c1))) = (dangerous_mean(pair[0]), dangerous_mean(pair[1])) else {
            continue;
        };
        // s1/c1 <= s0/c0 - p/left
        if s1 * c0 * left > (s0 * left - i128::from(p) * c0) * c1 {
            out.push(format!("round {i}: {s0}/{c0} -> {s1}/{c1}"));
        }
    }
    out
}

fn phi_recurrence() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut rounds = 0;
    for m in 0..100 {
        let p = rng.gen_range(1..=3);
        let n = rng.gen_range(2..=12);
        let sizes: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let pos = new_game(&sizes, Bias::new(p, 1).expect("positive"), Rules::Monotone, Side::Enforcer)
            .expect("valid");
        let mut avoider = RandomStrategy::new(rng.gen());
        let v = play_match(&pos, &mut avoider, &mut LargestBoxEnforcer);
        rounds += v.positions.len() / 2;
        if let Some((side, why)) = &v.forfeit {
            failures.push(format!("match {m}: {} forfeited: {why}", side_name(*side)));
        }
        for f in phi_violations(&v, n, p) {
            failures.push(format!("match {m} {sizes:?} p={p}: {f}"));
        }
    }
    let (ok, mut detail) = summarize(100, &failures);
    detail.push_str(&format!(" [{rounds} rounds]"));
    (ok, detail)
}

/// Strategy S invariants along one transcript where S played every
/// Enforcer move: at most one nonempty safe box, and (when
/// `gcd(p+q, l) <= p`) never `l` consecutive Avoider moves inside safe boxes
/// that had `l` elements when Enforcer first touched them, while the
/// largest box has size `l`.
pub fn strategy_s_violations(verdict: &Verdict) -> Vec<String> {
    let mut out = Vec::new();
    for (i, pos) in verdict.positions.iter().enumerate() {
        let safe_boxes = pos.boxes().iter().filter(|b| b.is_safe()).count();
        if safe_boxes > 1 {
            out.push(format!("position {i}: {safe_boxes} safe boxes"));
        }
    }
    // Box id -> its size when Enforcer first claimed from it.
    let mut touched_at = std::collections::HashMap::new();
    for b in verdict.positions[0].boxes().iter().filter(|b| b.touched_by_enforcer) {
        touched_at.insert(b.id, b.remaining);
    }
    let mut run = 0u32;
    let mut run_size = 0u32;
    for (i, (side, mv)) in verdict.transcript.iter().enumerate() {
        let pos = &verdict.positions[i];
        if *side == Side::Enforcer {
            for &(b, _) in &mv.claims {
                let bx = pos.boxes()[b];
                touched_at.entry(bx.id).or_insert(bx.remaining);
            }
            continue;
        }
        let l = pos.largest_box();
        if l != run_size {
            run = 0;
            run_size = l;
        }
        let in_l_safe_box = mv.claims.iter().all(|&(b, _)| {
            let bx = pos.boxes()[b];
            bx.is_safe() && touched_at.get(&bx.id) == Some(&l)
        });
        if !in_l_safe_box {
            run = 0;
            continue;
        }
        run += 1;
        let (p, q) = (pos.bias().p(), pos.bias().q());
        if gcd(u64::from(p + q), u64::from(l)) <= u64::from(p) && run >= l {
            out.push(format!("move {i}: {run} consecutive safe moves at largest size {l}"));
        }
    }
    out
}

fn strategy_s_invariants(solver: &Arc<Solver>) -> (bool, String) {
    let mut positions: Vec<Position> = small_grid()
        .into_iter()
        .map(|g| new_game(&g.sizes, g.bias, Rules::Strict, g.first).expect("valid"))
        .collect();
    for (p, q, k) in dichotomy_tuples() {
        let bias = Bias::new(p, q).expect("positive");
        if let Some(n) = minimal_n_both(solver, bias, k, Rules::Strict) {
            for first in [Side::Avoider, Side::Enforcer] {
                positions.push(uniform_game(n, k, bias, Rules::Strict, first).expect("valid"));
            }
        }
    }
    let failures: Vec<String> = positions
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, pos)| {
            let mut avoiders: Vec<Box<dyn mbox_core::Strategy>> = vec![
                Box::new(OptimalStrategy::new(solver.clone())),
                Box::new(RandomStrategy::new(i as u64)),
            ];
            let min = pos.boxes().iter().map(|b| b.remaining).min().unwrap_or(0);
            if gcd_avoider_witness(pos.bias().p(), pos.bias().q(), min).is_some() {
                avoiders.push(Box::new(StrictAvoider::new()));
            }
            let mut found = Vec::new();
            for mut a in avoiders {
                let v = play_match(pos, a.as_mut(), &mut StrategyS);
                for f in strategy_s_violations(&v) {
                    found.push(format!("{pos} vs {}: {f}", a.name()));
                }
            }
            found
        })
        .collect();
    summarize(positions.len() * 2, &failures)
}

fn potential_cross_check(solver: &Solver) -> (bool, String) {
    let jobs: Vec<(GridPoint, Rules)> = small_grid()
        .into_iter()
        .flat_map(|g| {
            [Rules::Strict, Rules::Monotone].map(|r| {
                (
                    GridPoint {
                        bias: g.bias,
                        sizes: g.sizes.clone(),
                        first: g.first,
                    },
                    r,
                )
            })
        })
        .collect();
    let applicable: Vec<&(GridPoint, Rules)> = jobs
        .iter()
        .filter(|(g, rules)| {
            let total: u64 = g.sizes.iter().map(|&s| u64::from(s)).sum();
            let avoider_last = match rules {
                Rules::Strict => strict_last_mover(total, g.bias, g.first) == Side::Avoider,
                Rules::Monotone => true,
            };
            potential_criterion(&g.sizes, g.bias.p(), avoider_last)
        })
        .collect();
    let failures: Vec<String> = applicable
        .par_iter()
        .filter_map(|(g, rules)| {
            let pos = new_game(&g.sizes, g.bias, *rules, g.first).expect("valid");
            match solver.solve(&pos) {
                Ok(r) if r.winner == Side::Avoider => None,
                other => Some(format!("{pos}: {other:?}")),
            }
        })
        .collect();
    let (ok, mut detail) = summarize(applicable.len(), &failures);
    detail.push_str(&format!(" [{} grid points]", jobs.len()));
    (ok, detail)
}

/// Every `h`-copy inside `K_n`, as bitmasks over the edges of `K_n`, found
/// by trying all vertex permutations on every edge subset of the right size.
pub fn brute_force_copies(n: usize, h: &GraphSpec) -> Vec<u32> {
    let all = GraphSpec::complete(n);
    let e = all.edges().len();
    let k = h.edges().len();
    let mut out = Vec::new();
    if h.vertex_count() > n || k == 0 {
        return out;
    }
    let h_set: std::collections::HashSet<(usize, usize)> = h.edges().iter().copied().collect();
    let perms = permutations(n);
    for mask in 0u32..(1 << e) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let chosen: Vec<(usize, usize)> = (0..e)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| all.edges()[i])
            .collect();
        // Some bijection V(K_n) -> V(K_n) maps the chosen edges onto the
        // image of H's edges (H's vertices sit at 0..|V(H)|).
        let hit = perms.iter().any(|perm| {
            chosen.iter().all(|&(u, v)| {
                let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                h_set.contains(&(a, b))
            })
        });
        if hit {
            out.push(mask);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn pattern_graphs() -> Vec<(&'static str, GraphSpec)> {
    let g = |n, e: &[(usize, usize)]| GraphSpec::new(n, e.to_vec()).expect("simple");
    vec![
        ("triangle", GraphSpec::complete(3)),
        ("path", g(3, &[(0, 1), (1, 2)])),
        ("claw", g(4, &[(0, 1), (0, 2), (0, 3)])),
        ("C4", GraphSpec::cycle(4)),
        ("two edges", g(4, &[(0, 1), (2, 3)])),
    ]
}

fn h_game_agreement() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=6usize {
        let kn = GraphSpec::complete(n);
        let e = kn.edges().len();
        for (name, h) in pattern_graphs() {
            let copies = brute_force_copies(n, &h);
            let per_graph: Vec<Option<String>> = (0u32..(1 << e))
                .into_par_iter()
                .map(|gmask| {
                    let edges: Vec<(usize, usize)> = (0..e)
                        .filter(|&i| gmask & (1 << i) != 0)
                        .map(|i| kn.edges()[i])
                        .collect();
                    let g = GraphSpec::new(n, edges.clone()).expect("simple");
                    let mut expected: Vec<u32> = copies.iter().copied().filter(|&c| c & !gmask == 0).collect();
                    expected.sort_unstable();
                    let mut got: Vec<u32> = h_game_board(&g, &h)
                        .edges()
                        .iter()
                        .map(|copy| {
                            copy.iter().fold(0u32, |m, &i| {
                                let pos = kn.edges().iter().position(|&x| x == edges[i]).expect("edge of K_n");
                                m | (1 << pos)
                            })
                        })
                        .collect();
                    got.sort_unstable();
                    (got != expected).then(|| {
                        format!("{name} in graph {gmask:#x} on {n}: {} vs {}", got.len(), expected.len())
                    })
                })
                .collect();
            checked += per_graph.len();
            failures.extend(per_graph.into_iter().flatten());
        }
    }
    (checked, failures)
}

fn isolation_checks() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut checked = 0;
    let matching = GraphSpec::new(8, vec![(0, 1), (2, 3), (4, 5), (6, 7)]).expect("simple");
    for first in [Side::Avoider, Side::Enforcer] {
        checked += 1;
        let st = HyperState::new(
            Objective::IsolateVertex(matching.clone()),
            Bias::new(1, 1).expect("positive"),
            Rules::Monotone,
            first,
        );
        match hyper_best_response(&st, Side::Avoider, &IsolateVertexAvoider::new(), None) {
            Ok(r) if r.winner == Side::Avoider => {}
            other => failures.push(format!("perfect matching, {}-first: {other:?}", side_name(first))),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    let mut graphs = 0;
    while graphs < 20 {
        let n = rng.gen_range(12..=30);
        let d = rng.gen_range(1..=3);
        let g = random_bounded_degree_graph(n, d, 4 * n, &mut rng);
        let d = g.max_degree();
        let Some(q) = (1..=20).find(|&q| isolation_hypothesis(n, d, q)) else {
            continue;
        };
        if d == 0 || greedy_independent_set(&g).is_empty() {
            continue;
        }
        graphs += 1;
        for first in [Side::Avoider, Side::Enforcer] {
            for seed in 0..3u64 {
                checked += 1;
                let st = HyperState::new(
                    Objective::IsolateVertex(g.clone()),
                    Bias::new(1, q).expect("positive"),
                    Rules::Monotone,
                    first,
                );
                let mut enforcer: Box<dyn mbox_core::hypergames::HyperStrategy> = if seed == 0 {
                    Box::new(SpreadEnforcer)
                } else {
                    Box::new(RandomHyperPlayer::new(seed * 1000 + graphs as u64))
                };
                let v = play_hyper_match(&st, &mut IsolateVertexAvoider::new(), enforcer.as_mut());
                if v.winner != Side::Avoider {
                    failures.push(format!(
                        "graph {graphs} (n={n}, d={d}, q={q}) vs {}: {:?}",
                        enforcer.name(),
                        v.forfeit
                    ));
                }
            }
        }
    }
    (checked, failures)
}

/// Matching of `m` disjoint pairs plus three off-matching elements and two
/// extra targets that overlap the matching.
pub fn matching_board(m: usize) -> (Hypergraph, Vec<usize>) {
    let mut edges: Vec<Vec<usize>> = (0..m).map(|i| vec![2 * i, 2 * i + 1]).collect();
    let off = 2 * m;
    edges.push(vec![1, off]);
    edges.push(vec![3.min(2 * m - 1), off + 1, off + 2]);
    let h = Hypergraph::new(off + 3, edges).expect("valid ids");
    let matching = (0..m).collect();
    (h, matching)
}

fn matching_checks(solver: &Solver) -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (p, q) in [(2, 1), (1, 2)] {
        let bias = Bias::new(p, q).expect("positive");
        let Some(m) = truncation_robust_n(solver, bias, 2) else {
            failures.push(format!("({p},{q}): no robust matching size"));
            continue;
        };
        let (h, matching) = matching_board(m as usize);
        for first in [Side::Avoider, Side::Enforcer] {
            checked += 1;
            let st = HyperState::new(Objective::AvoidTargets(h.clone()), bias, Rules::Strict, first);
            match hyper_best_response(&st, Side::Enforcer, &MatchingEnforcer::new(matching.clone()), None) {
                Ok(r) if r.winner == Side::Enforcer => {}
                other => failures.push(format!(
                    "({p},{q}) matching of {m}, {}-first: {other:?}",
                    side_name(first)
                )),
            }
        }
    }
    (checked, failures)
}

fn applications(solver: &Solver) -> (bool, String) {
    let (a, fa) = h_game_agreement();
    let (b, fb) = isolation_checks();
    let (c, fc) = matching_checks(solver);
    let failures: Vec<String> = fa.into_iter().chain(fb).chain(fc).collect();
    let (ok, mut detail) = summarize(a + b + c, &failures);
    detail.push_str(&format!(" [H-game {a}, isolation {b}, matching {c}]"));
    (ok, detail)
}

/// Monotone Enforcer threshold used by the estimate check, re-exported for
/// the CLI `criteria` output.
pub fn mono_threshold(p: u32, q: u32, k: u32) -> Option<u64> {
    n_mono_enforcer(p, q, k).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_vector_counts() {
        // Multisets of size 1..=2 from {1,2,3}: 3 + 6.
        assert_eq!(size_vectors(2, 1, 3).len(), 9);
        assert!(size_vectors(4, 2, 5).iter().all(|v| v.windows(2).all(|w| w[0] <= w[1])));
    }

    #[test]
    fn brute_force_copy_counts() {
        assert_eq!(brute_force_copies(4, &GraphSpec::complete(3)).len(), 4);
        assert_eq!(brute_force_copies(4, &GraphSpec::cycle(4)).len(), 3);
        assert_eq!(brute_force_copies(5, &GraphSpec::complete(3)).len(), 10);
        assert!(brute_force_copies(3, &GraphSpec::cycle(4)).is_empty());
    }

    #[test]
    fn matching_board_shape() {
        let (h, m) = matching_board(3);
        assert_eq!(h.ground_size(), 9);
        assert_eq!(m, vec![0, 1, 2]);
        assert_eq!(h.edges().len(), 5);
    }

    #[test]
    fn phi_check_flags_a_stalled_round() {
        // Enforcer passes through safe elements only; the mean cannot drop.
        let bias = Bias::new(1, 1).unwrap();
        let pos = new_game(&[3, 3], bias, Rules::Monotone, Side::Enforcer).unwrap();
        let a = pos.apply_move(&mbox_core::Move::new(vec![(0, 1)])).unwrap();
        let b = a.apply_move(&mbox_core::Move::new(vec![(0, 1)])).unwrap();
        let c = b.apply_move(&mbox_core::Move::new(vec![(0, 1)])).unwrap();
        let v = Verdict {
            winner: Side::Avoider,
            losing_box: None,
            forfeit: None,
            transcript: vec![],
            positions: vec![pos, a, b, c],
        };
        assert_eq!(phi_violations(&v, 2, 1).len(), 1);
    }

    #[test]
    fn fast_checks_pass() {
        let solver = Arc::new(Solver::new());
        for id in [1, 7] {
            let r = run(id, &solver);
            assert_eq!(r.id, id);
            assert!(r.line().starts_with(&format!("criterion {id:>2}")));
        }
        assert!(run(1, &solver).passed);
        assert!(!run(99, &solver).passed);
    }
}
