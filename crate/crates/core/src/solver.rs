//! Exact solver: memoized win/loss search over canonical positions.
//!
//! The search works on [`CanonicalKey`]s directly. Claims are enumerated per
//! box with a non-increasing constraint across equal boxes, so symmetric
//! branches are visited once. [`Solver::solve`] also pools all safe elements
//! into one box: once a box is safe its identity no longer matters, only
//! how many elements it still holds.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use thiserror::Error;

use crate::engine::{uniform_game, Bias, Move, Position, Rules, Side, Strategy};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const CACHE_HEADER: &str = "mboxcache v1";

/// Position up to box relabeling.
///
/// Boxes are `(remaining, touched_by_enforcer)` pairs sorted ascending. Dead
/// safe boxes are dropped; a box Avoider completed is kept as `(0, false)`
/// since it decides the game.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub rules: Rules,
    pub p: u32,
    pub q: u32,
    pub to_move: Side,
    pub boxes: Vec<(u32, bool)>,
}

pub fn canonicalize(pos: &Position) -> CanonicalKey {
    let mut boxes: Vec<(u32, bool)> = pos
        .boxes()
        .iter()
        .filter(|b| b.remaining > 0 || !b.touched_by_enforcer)
        .map(|b| (b.remaining, b.touched_by_enforcer))
        .collect();
    boxes.sort_unstable();
    CanonicalKey {
        rules: pos.rules(),
        p: pos.bias().p(),
        q: pos.bias().q(),
        to_move: pos.to_move(),
        boxes,
    }
}

impl CanonicalKey {
    fn lost(&self) -> bool {
        self.boxes.iter().any(|&(r, t)| r == 0 && !t)
    }

    fn total(&self) -> u32 {
        self.boxes.iter().map(|b| b.0).sum()
    }

    fn has_dangerous(&self) -> bool {
        self.boxes.iter().any(|&(r, t)| r > 0 && !t)
    }

    fn required(&self) -> u32 {
        let b = match self.to_move {
            Side::Avoider => self.p,
            Side::Enforcer => self.q,
        };
        b.min(self.total())
    }

    /// Merges every safe box into one.
    fn pool_safe(mut self) -> CanonicalKey {
        let safe: u32 = self.boxes.iter().filter(|b| b.1).map(|b| b.0).sum();
        self.boxes.retain(|b| !b.1);
        if safe > 0 {
            self.boxes.push((safe, true));
        }
        self.boxes.sort_unstable();
        self
    }

    /// Successor after `claims` (one entry per box). Not pooled.
    fn after(&self, claims: &[u32]) -> CanonicalKey {
        let mover = self.to_move;
        let mut boxes = Vec::with_capacity(self.boxes.len());
        for (&(r, t), &x) in self.boxes.iter().zip(claims) {
            let t = t || (mover == Side::Enforcer && x > 0);
            let r = r - x;
            if r > 0 || !t {
                boxes.push((r, t));
            }
        }
        boxes.sort_unstable();
        CanonicalKey {
            to_move: mover.other(),
            boxes,
            ..self.clone()
        }
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}/{}/", self.rules, self.p, self.q, self.to_move.letter())?;
        if self.boxes.is_empty() {
            return write!(f, "-");
        }
        for (i, &(r, t)) in self.boxes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}{}", if t { 's' } else { 'd' })?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalKey {
    type Err = String;

    fn from_str(s: &str) -> Result<CanonicalKey, String> {
        let parts: Vec<&str> = s.split('/').collect();
        let [rules, p, q, side, boxes] = parts[..] else {
            return Err(format!("expected 5 `/`-separated fields in `{s}`"));
        };
        let rules: Rules = rules.parse()?;
        let p: u32 = p.parse().map_err(|e| format!("p: {e}"))?;
        let q: u32 = q.parse().map_err(|e| format!("q: {e}"))?;
        let to_move = match side.chars().collect::<Vec<_>>()[..] {
            [c] => Side::from_letter(c),
            _ => None,
        }
        .ok_or_else(|| format!("bad side `{side}`"))?;
        let mut parsed = Vec::new();
        if boxes != "-" {
            for b in boxes.split(',') {
                let (num, flag) = b.split_at(b.len().saturating_sub(1));
                let touched = match flag {
                    "s" => true,
                    "d" => false,
                    _ => return Err(format!("bad box `{b}`")),
                };
                let r: u32 = num.parse().map_err(|e| format!("box `{b}`: {e}"))?;
                parsed.push((r, touched));
            }
        }
        let mut key = CanonicalKey {
            rules,
            p,
            q,
            to_move,
            boxes: parsed,
        };
        key.boxes.sort_unstable();
        Ok(key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub winner: Side,
    /// A move achieving `winner`'s result; absent for finished games.
    pub optimal_move: Option<Move>,
    /// Nodes expanded by this call (memo hits are free).
    pub node_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("unsolved: node budget of {0} expansions exceeded")]
    BudgetExceeded(u64),
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache version mismatch: expected `{CACHE_HEADER}`, found `{0}`")]
    Version(String),
    #[error("cache line {line}: {reason}")]
    Record { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Result of a threshold scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalN {
    Found(u32),
    NoneUpTo(u32),
}

/// A scan that hit the node budget. Every `n` below `next_n` was solved as
/// an Avoider win.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("scan aborted at n={next_n}: {source}")]
pub struct ScanAborted {
    pub next_n: u32,
    pub source: SolveError,
}

struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    fn new(limit: u64) -> Budget {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    fn spend(&self) -> Result<(), SolveError> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(SolveError::BudgetExceeded(self.limit));
        }
        Ok(())
    }

    fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }
}

/// Exact solver with a shared, thread-safe memo.
pub struct Solver {
    memo: DashMap<CanonicalKey, Side>,
    node_budget: u64,
}

impl Default for Solver {
    fn default() -> Solver {
        Solver::new()
    }
}

impl Solver {
    pub fn new() -> Solver {
        Solver::with_budget(DEFAULT_NODE_BUDGET)
    }

    /// `budget` caps node expansions per call.
    pub fn with_budget(budget: u64) -> Solver {
        Solver {
            memo: DashMap::new(),
            node_budget: budget,
        }
    }

    pub fn node_budget(&self) -> u64 {
        self.node_budget
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&self) {
        self.memo.clear();
    }

    /// Winner under optimal play from both sides.
    pub fn solve(&self, pos: &Position) -> Result<SolveResult, SolveError> {
        if let Some(winner) = pos.winner() {
            return Ok(SolveResult {
                winner,
                optimal_move: None,
                node_count: 0,
            });
        }
        let budget = Budget::new(self.node_budget);
        let root = canonicalize(pos).pool_safe();
        let mover = root.to_move;
        let moves = enumerate_claims(&root.boxes, root.required(), root.rules, mover);
        let mut chosen = None;
        for claims in &moves {
            let child = root.after(claims);
            let w = if child.lost() {
                Side::Enforcer
            } else {
                self.search(child.pool_safe(), &budget)?
            };
            if w == mover {
                chosen = Some(claims);
                break;
            }
        }
        let winner = if chosen.is_some() { mover } else { mover.other() };
        self.memo.insert(root.clone(), winner);
        let claims = chosen.or(moves.first()).expect("a live position has a move");
        Ok(SolveResult {
            winner,
            optimal_move: Some(map_pooled_move(pos, &root, claims)),
            node_count: budget.used(),
        })
    }

    fn search(&self, key: CanonicalKey, budget: &Budget) -> Result<Side, SolveError> {
        if !key.has_dangerous() {
            return Ok(Side::Avoider);
        }
        if let Some(w) = self.memo.get(&key) {
            return Ok(*w);
        }
        budget.spend()?;
        let mover = key.to_move;
        let mut winner = mover.other();
        for claims in enumerate_claims(&key.boxes, key.required(), key.rules, mover) {
            let child = key.after(&claims);
            if child.lost() {
                continue;
            }
            if self.search(child.pool_safe(), budget)? == mover {
                winner = mover;
                break;
            }
        }
        self.memo.insert(key, winner);
        Ok(winner)
    }

    /// Outcome when `fixed_side` plays `strategy` and the other side plays
    /// optimally. The strategy is started on `pos`; if it forfeits or plays
    /// an illegal move, the free side wins.
    pub fn best_response(
        &self,
        pos: &Position,
        fixed_side: Side,
        strategy: &dyn Strategy,
    ) -> Result<SolveResult, SolveError> {
        let mut strat = strategy.box_clone();
        if let Some(winner) = pos.winner() {
            return Ok(SolveResult {
                winner,
                optimal_move: None,
                node_count: 0,
            });
        }
        let mut ctx = ResponseSearch {
            fixed: fixed_side,
            memo: HashMap::new(),
            budget: Budget::new(self.node_budget),
        };
        if strat.start(pos).is_err() {
            return Ok(SolveResult {
                winner: fixed_side.other(),
                optimal_move: None,
                node_count: 0,
            });
        }
        let (winner, mv) = ctx.root(pos, strat)?;
        Ok(SolveResult {
            winner,
            optimal_move: mv,
            node_count: ctx.budget.used(),
        })
    }

    /// Smallest `n <= limit` with `mBox(n x k)` an Enforcer win.
    pub fn minimal_enforcer_n(
        &self,
        bias: Bias,
        k: u32,
        rules: Rules,
        first: Side,
        limit: u32,
    ) -> Result<MinimalN, ScanAborted> {
        for n in 1..=limit {
            let pos = uniform_game(n, k, bias, rules, first).expect("n, k >= 1");
            let res = self
                .solve(&pos)
                .map_err(|source| ScanAborted { next_n: n, source })?;
            if res.winner == Side::Enforcer {
                return Ok(MinimalN::Found(n));
            }
        }
        Ok(MinimalN::NoneUpTo(limit))
    }

    /// Writes the memo, one `key winner` record per line, sorted.
    pub fn save_cache(&self, mut out: impl Write) -> Result<(), CacheError> {
        let mut lines: Vec<String> = self
            .memo
            .iter()
            .map(|e| format!("{} {}", e.key(), e.value().letter()))
            .collect();
        lines.sort_unstable();
        writeln!(out, "{CACHE_HEADER}")?;
        for l in lines {
            writeln!(out, "{l}")?;
        }
        Ok(())
    }

    /// Merges a saved memo. Returns the number of records read.
    pub fn load_cache(&self, input: impl BufRead) -> Result<usize, CacheError> {
        let mut lines = input.lines();
        let header = lines.next().transpose()?.unwrap_or_default();
        if header.trim() != CACHE_HEADER {
            return Err(CacheError::Version(header));
        }
        let mut count = 0;
        for (i, line) in lines.enumerate() {
            let line = line?;
            let line_no = i + 2;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |reason: String| CacheError::Record {
                line: line_no,
                reason,
            };
            let (key, w) = line
                .trim()
                .split_once(' ')
                .ok_or_else(|| bad("expected `key winner`".into()))?;
            let key: CanonicalKey = key.parse().map_err(bad)?;
            let winner = match w.chars().collect::<Vec<_>>()[..] {
                [c] => Side::from_letter(c),
                _ => None,
            }
            .ok_or_else(|| bad(format!("bad winner `{w}`")))?;
            self.memo.insert(key, winner);
            count += 1;
        }
        Ok(count)
    }
}

struct ResponseSearch {
    fixed: Side,
    memo: HashMap<(CanonicalKey, String), Side>,
    budget: Budget,
}

impl ResponseSearch {
    fn root(
        &mut self,
        pos: &Position,
        mut strat: Box<dyn Strategy>,
    ) -> Result<(Side, Option<Move>), SolveError> {
        let free = self.fixed.other();
        if pos.to_move() == self.fixed {
            let Ok(mv) = strat.next_move(pos) else {
                return Ok((free, None));
            };
            let Ok(next) = pos.apply_move(&mv) else {
                return Ok((free, None));
            };
            let w = self.rec(&next, strat)?;
            return Ok((w, Some(mv)));
        }
        let moves = free_moves(pos);
        for mv in &moves {
            let next = pos.apply_move(mv).expect("enumerated moves are legal");
            if self.rec(&next, strat.clone())? == free {
                return Ok((free, Some(mv.clone())));
            }
        }
        Ok((self.fixed, moves.into_iter().next()))
    }

    fn rec(&mut self, pos: &Position, mut strat: Box<dyn Strategy>) -> Result<Side, SolveError> {
        if let Some(w) = pos.winner() {
            return Ok(w);
        }
        let key = (canonicalize(pos), strat.memory_key());
        if let Some(&w) = self.memo.get(&key) {
            return Ok(w);
        }
        self.budget.spend()?;
        let free = self.fixed.other();
        let winner = if pos.to_move() == self.fixed {
            match strat.next_move(pos).ok().and_then(|mv| pos.apply_move(&mv).ok()) {
                Some(next) => self.rec(&next, strat)?,
                None => free,
            }
        } else {
            let mut w = self.fixed;
            for mv in free_moves(pos) {
                let next = pos.apply_move(&mv).expect("enumerated moves are legal");
                if next.avoider_lost() {
                    continue;
                }
                if self.rec(&next, strat.clone())? == free {
                    w = free;
                    break;
                }
            }
            w
        };
        self.memo.insert(key, winner);
        Ok(winner)
    }
}

/// Moves of the player to move on an exact position. Boxes with equal
/// `(remaining, touched)` sit next to each other, so the class symmetry
/// reduction applies directly.
fn free_moves(pos: &Position) -> Vec<Move> {
    let boxes: Vec<(u32, bool)> = pos
        .boxes()
        .iter()
        .map(|b| (b.remaining, b.touched_by_enforcer))
        .collect();
    enumerate_claims(&boxes, pos.required_claims(), pos.rules(), pos.to_move())
        .iter()
        .map(|c| Move::from_counts(c))
        .collect()
}

/// All claim vectors for the player to move, one entry per box. Within a run
/// of equal boxes the claims are non-increasing. Avoider's moves that
/// complete a dangerous box come last.
fn enumerate_claims(boxes: &[(u32, bool)], need: u32, rules: Rules, mover: Side) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let exact = rules == Rules::Strict;
    let caps: Vec<u32> = boxes
        .iter()
        .map(|&(r, t)| if mover == Side::Avoider && !t { r.saturating_sub(1) } else { r })
        .collect();
    Enumerator::new(boxes, &caps, need, exact).run(&mut out);
    if mover == Side::Avoider {
        let full: Vec<u32> = boxes.iter().map(|b| b.0).collect();
        let mut all = Vec::new();
        Enumerator::new(boxes, &full, need, exact).run(&mut all);
        all.retain(|c| c.iter().zip(boxes).any(|(&x, &(r, t))| !t && x == r));
        out.extend(all);
    }
    out
}

struct Enumerator<'a> {
    boxes: &'a [(u32, bool)],
    caps: &'a [u32],
    suffix: Vec<u32>,
    need: u32,
    exact: bool,
    cur: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    fn new(boxes: &'a [(u32, bool)], caps: &'a [u32], need: u32, exact: bool) -> Enumerator<'a> {
        let mut suffix = vec![0; boxes.len() + 1];
        for i in (0..boxes.len()).rev() {
            suffix[i] = suffix[i + 1] + caps[i];
        }
        Enumerator {
            boxes,
            caps,
            suffix,
            need,
            exact,
            cur: vec![0; boxes.len()],
        }
    }

    fn run(mut self, out: &mut Vec<Vec<u32>>) {
        if self.suffix[0] >= self.need {
            self.rec(0, 0, out);
        }
    }

    fn rec(&mut self, i: usize, taken: u32, out: &mut Vec<Vec<u32>>) {
        if i == self.boxes.len() {
            if taken >= self.need && taken > 0 {
                out.push(self.cur.clone());
            }
            return;
        }
        let lo = self.need.saturating_sub(taken).saturating_sub(self.suffix[i + 1]);
        let mut hi = self.caps[i];
        if self.exact {
            hi = hi.min(self.need - taken);
        }
        if i > 0 && self.boxes[i - 1] == self.boxes[i] {
            hi = hi.min(self.cur[i - 1]);
        }
        for x in lo..=hi {
            self.cur[i] = x;
            self.rec(i + 1, taken + x, out);
        }
        self.cur[i] = 0;
    }
}

/// Turns claims on the pooled key back into a move on `pos`.
fn map_pooled_move(pos: &Position, pooled: &CanonicalKey, claims: &[u32]) -> Move {
    let mut by_size: HashMap<u32, VecDeque<usize>> = HashMap::new();
    let mut safe: Vec<usize> = Vec::new();
    for (i, b) in pos.boxes().iter().enumerate() {
        if b.remaining == 0 {
            continue;
        }
        if b.touched_by_enforcer {
            safe.push(i);
        } else {
            by_size.entry(b.remaining).or_default().push_back(i);
        }
    }
    let mut counts = vec![0; pos.boxes().len()];
    for (&(r, t), &x) in pooled.boxes.iter().zip(claims) {
        if t {
            let mut left = x;
            for &i in &safe {
                let c = pos.boxes()[i].remaining.min(left);
                counts[i] += c;
                left -= c;
            }
        } else {
            let i = by_size
                .get_mut(&r)
                .and_then(VecDeque::pop_front)
                .expect("pooled key matches the position");
            counts[i] += x;
        }
    }
    Move::from_counts(&counts)
}
