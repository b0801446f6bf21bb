use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mbox_core::{uniform_game, Bias, Rules, Side, Solver, StrategyS};

/// Cold solves: a fresh memo each iteration.
fn cold_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("cold_solve");
    for (label, n, k, p, q, rules) in [
        ("strict 6x2 (1,2)", 6, 2, 1, 2, Rules::Strict),
        ("strict 5x3 (2,2)", 5, 3, 2, 2, Rules::Strict),
        ("monotone 4x2 (1,2)", 4, 2, 1, 2, Rules::Monotone),
        ("monotone 4x3 (1,3)", 4, 3, 1, 3, Rules::Monotone),
    ] {
        let pos = uniform_game(n, k, Bias::new(p, q).unwrap(), rules, Side::Avoider).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(label), &pos, |b, pos| {
            b.iter(|| Solver::new().solve(black_box(pos)).unwrap().winner)
        });
    }
    group.finish();
}

fn threshold_scan(c: &mut Criterion) {
    c.bench_function("minimal n for strict (2,2,3)", |b| {
        b.iter(|| {
            Solver::new()
                .minimal_enforcer_n(Bias::new(2, 2).unwrap(), 3, Rules::Strict, Side::Enforcer, 20)
                .unwrap()
        })
    });
}

fn fixed_strategy_search(c: &mut Criterion) {
    let pos = uniform_game(6, 2, Bias::new(1, 2).unwrap(), Rules::Strict, Side::Enforcer).unwrap();
    c.bench_function("strategy S vs optimal Avoider, strict 6x2 (1,2)", |b| {
        b.iter(|| Solver::new().best_response(black_box(&pos), Side::Enforcer, &StrategyS).unwrap().winner)
    });
}

criterion_group!(benches, cold_solve, threshold_scan, fixed_strategy_search);
criterion_main!(benches);
