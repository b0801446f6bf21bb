//! The solver against a plain minimax written from the rules alone: no
//! sorting, no pooling of safe boxes, no move pruning.

use std::collections::HashMap;

use mbox_core::{Bias, BoxState, Position, Rules, Side, Solver, StrategyS};
use proptest::prelude::*;

type Boxes = Vec<(u32, bool)>;

struct Oracle {
    p: u32,
    q: u32,
    rules: Rules,
    memo: HashMap<(Boxes, Side), Side>,
}

impl Oracle {
    fn new(p: u32, q: u32, rules: Rules) -> Oracle {
        Oracle {
            p,
            q,
            rules,
            memo: HashMap::new(),
        }
    }

    /// Every per-box claim vector with `lo..=hi` elements in total.
    fn moves(boxes: &Boxes, lo: u32, hi: u32) -> Vec<Vec<u32>> {
        fn rec(boxes: &Boxes, i: usize, left: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == boxes.len() {
                let total: u32 = cur.iter().sum();
                if total >= lo {
                    out.push(cur.clone());
                }
                return;
            }
            for c in 0..=boxes[i].0.min(left) {
                cur.push(c);
                rec(boxes, i + 1, left - c, lo, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(boxes, 0, hi, lo, &mut Vec::new(), &mut out);
        out
    }

    fn winner(&mut self, boxes: &Boxes, to_move: Side) -> Side {
        let left: u32 = boxes.iter().map(|b| b.0).sum();
        if left == 0 {
            return Side::Avoider;
        }
        if let Some(&w) = self.memo.get(&(boxes.clone(), to_move)) {
            return w;
        }
        let need = match to_move {
            Side::Avoider => self.p,
            Side::Enforcer => self.q,
        }
        .min(left);
        let hi = match self.rules {
            Rules::Strict => need,
            Rules::Monotone => left,
        };
        let mut result = to_move.other();
        for mv in Self::moves(boxes, need, hi) {
            let mut next = boxes.clone();
            let mut lost = false;
            for (b, &c) in next.iter_mut().zip(&mv) {
                if c == 0 {
                    continue;
                }
                b.0 -= c;
                match to_move {
                    Side::Enforcer => b.1 = true,
                    Side::Avoider => lost |= b.0 == 0 && !b.1,
                }
            }
            let w = if lost { Side::Enforcer } else { self.winner(&next, to_move.other()) };
            if w == to_move {
                result = to_move;
                break;
            }
        }
        self.memo.insert((boxes.clone(), to_move), result);
        result
    }
}

fn position(boxes: &Boxes, p: u32, q: u32, rules: Rules, to_move: Side) -> Position {
    let states = boxes
        .iter()
        .enumerate()
        .map(|(i, &(remaining, touched))| BoxState {
            id: i as u32,
            remaining,
            touched_by_enforcer: touched,
        })
        .collect();
    Position::from_boxes(states, Bias::new(p, q).unwrap(), rules, to_move)
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Avoider), Just(Side::Enforcer)]
}

fn rules() -> impl Strategy<Value = Rules> {
    prop_oneof![Just(Rules::Strict), Just(Rules::Monotone)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_agrees_with_plain_minimax(
        boxes in proptest::collection::vec((1u32..=3, any::<bool>()), 1..=4),
        p in 1u32..=3,
        q in 1u32..=3,
        rules in rules(),
        to_move in side(),
    ) {
        let pos = position(&boxes, p, q, rules, to_move);
        let expected = Oracle::new(p, q, rules).winner(&boxes, to_move);
        let got = Solver::new().solve(&pos).unwrap();
        prop_assert_eq!(got.winner, expected);
        if let Some(mv) = got.optimal_move {
            let after = pos.apply_move(&mv).unwrap();
            let w = after.winner().unwrap_or_else(|| Solver::new().solve(&after).unwrap().winner);
            prop_assert_eq!(w, expected, "optimal move {} does not keep the result", mv);
        }
    }

    #[test]
    fn best_response_never_beats_the_game_value(
        sizes in proptest::collection::vec(1u32..=4, 1..=4),
        p in 1u32..=2,
        q in 1u32..=2,
        first in side(),
    ) {
        // A fixed strategy can do no better than optimal play.
        let pos = mbox_core::new_game(&sizes, Bias::new(p, q).unwrap(), Rules::Strict, first).unwrap();
        let solver = Solver::new();
        let value = solver.solve(&pos).unwrap().winner;
        let with_s = solver.best_response(&pos, Side::Enforcer, &StrategyS).unwrap().winner;
        if with_s == Side::Enforcer {
            prop_assert_eq!(value, Side::Enforcer);
        }
    }
}

#[test]
fn warm_cache_agrees_with_cold_solver() {
    let warm = Solver::new();
    let mut checked = Vec::new();
    for p in 1..=2 {
        for q in 1..=2 {
            for k in 1..=3 {
                for n in 1..=5 {
                    for first in [Side::Avoider, Side::Enforcer] {
                        for rules in [Rules::Strict, Rules::Monotone] {
                            let pos = mbox_core::uniform_game(n, k, Bias::new(p, q).unwrap(), rules, first).unwrap();
                            checked.push((pos.clone(), warm.solve(&pos).unwrap().winner));
                        }
                    }
                }
            }
        }
    }
    let mut file = Vec::new();
    warm.save_cache(&mut file).unwrap();
    let reloaded = Solver::new();
    let records = reloaded.load_cache(file.as_slice()).unwrap();
    assert_eq!(records, warm.memo_len());

    let mut again = Vec::new();
    reloaded.save_cache(&mut again).unwrap();
    assert_eq!(file, again, "cache files are byte-stable");

    for (pos, winner) in checked {
        assert_eq!(Solver::new().solve(&pos).unwrap().winner, winner, "{pos}");
        let hit = reloaded.solve(&pos).unwrap();
        assert_eq!(hit.winner, winner, "{pos}");
    }
}

#[test]
fn corrupt_caches_are_rejected() {
    let s = Solver::new();
    assert!(s.load_cache("mboxcache v0\n".as_bytes()).is_err());
    assert!(s.load_cache("mboxcache v1\nstrict/1/1/A/2d X\n".as_bytes()).is_err());
    assert!(s.load_cache("mboxcache v1\nnot a key A\n".as_bytes()).is_err());
}

#[test]
fn tiny_budget_reports_unsolved() {
    let pos = mbox_core::uniform_game(8, 3, Bias::new(1, 2).unwrap(), Rules::Monotone, Side::Avoider).unwrap();
    assert!(Solver::with_budget(10).solve(&pos).is_err());
}
