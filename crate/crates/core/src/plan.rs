//! Step-by-step move construction on a scratch copy of the boxes.

use crate::engine::{Move, Position, Side};

pub(crate) struct MovePlan {
    remaining: Vec<u32>,
    touched: Vec<bool>,
    counts: Vec<u32>,
    mover: Side,
}

impl MovePlan {
    pub(crate) fn new(pos: &Position) -> MovePlan {
        let boxes = pos.boxes();
        MovePlan {
            remaining: boxes.iter().map(|b| b.remaining).collect(),
            touched: boxes.iter().map(|b| b.touched_by_enforcer).collect(),
            counts: vec![0; boxes.len()],
            mover: pos.to_move(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.remaining.len()
    }

    pub(crate) fn remaining(&self, i: usize) -> u32 {
        self.remaining[i]
    }

    /// Dangerous with respect to the scratch state: Enforcer claims made
    /// earlier in this move already count as touches.
    pub(crate) fn is_dangerous(&self, i: usize) -> bool {
        !self.touched[i] && self.remaining[i] > 0
    }

    pub(crate) fn is_safe(&self, i: usize) -> bool {
        self.touched[i] && self.remaining[i] > 0
    }

    pub(crate) fn safe_elements(&self) -> u32 {
        (0..self.len())
            .filter(|&i| self.touched[i])
            .map(|i| self.remaining[i])
            .sum()
    }

    pub(crate) fn claimed(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub(crate) fn dangerous(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_dangerous(i))
    }

    pub(crate) fn claim(&mut self, i: usize, n: u32) {
        debug_assert!(n <= self.remaining[i]);
        self.remaining[i] -= n;
        self.counts[i] += n;
        if self.mover == Side::Enforcer && n > 0 {
            self.touched[i] = true;
        }
    }

    /// Claims up to `n` safe elements, lowest index first. Returns how many
    /// were claimed.
    pub(crate) fn claim_safe(&mut self, mut n: u32) -> u32 {
        let mut got = 0;
        for i in 0..self.len() {
            if n == 0 {
                break;
            }
            if self.is_safe(i) {
                let c = self.remaining[i].min(n);
                self.claim(i, c);
                n -= c;
                got += c;
            }
        }
        got
    }

    /// Index of a largest box (any status), lowest index on ties.
    pub(crate) fn largest(&self) -> Option<usize> {
        self.largest_where(|_| true)
    }

    pub(crate) fn largest_where(&self, pred: impl Fn(usize) -> bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..self.len() {
            if self.remaining[i] == 0 || !pred(i) {
                continue;
            }
            if best.is_none_or(|b| self.remaining[i] > self.remaining[b]) {
                best = Some(i);
            }
        }
        best
    }

    pub(crate) fn into_move(self) -> Move {
        Move::from_counts(&self.counts)
    }
}
