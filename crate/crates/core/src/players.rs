//! Generic players: solver-optimal and seeded random.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{Forfeit, Move, Position, Rules, Strategy};
use crate::solver::Solver;

/// Plays the solver's optimal move. Forfeits if the search runs out of budget.
#[derive(Clone)]
pub struct OptimalStrategy {
    solver: Arc<Solver>,
}

impl OptimalStrategy {
    pub fn new(solver: Arc<Solver>) -> OptimalStrategy {
        OptimalStrategy { solver }
    }
}

impl Strategy for OptimalStrategy {
    fn name(&self) -> &str {
        "optimal"
    }

    fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit> {
        let res = self
            .solver
            .solve(pos)
            .map_err(|e| Forfeit::new(e.to_string()))?;
        res.optimal_move
            .ok_or_else(|| Forfeit::new("game already over"))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Uniformly random legal-total move: draws a total, then spreads it one
/// element at a time over random unclaimed elements.
#[derive(Clone)]
pub struct RandomStrategy {
    rng: ChaCha8Rng,
}

impl RandomStrategy {
    pub fn new(seed: u64) -> RandomStrategy {
        RandomStrategy {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomStrategy {
    fn name(&self) -> &str {
        "random"
    }

    fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit> {
        let total = pos.total_remaining();
        let need = pos.required_claims();
        let take = match pos.rules() {
            Rules::Strict => need,
            Rules::Monotone => self.rng.gen_range(need..=need.max(total.min(need * 2))),
        };
        let mut elements: Vec<usize> = pos
            .boxes()
            .iter()
            .enumerate()
            .flat_map(|(i, b)| std::iter::repeat_n(i, b.remaining as usize))
            .collect();
        elements.shuffle(&mut self.rng);
        let mut counts = vec![0; pos.boxes().len()];
        for &i in elements.iter().take(take as usize) {
            counts[i] += 1;
        }
        Ok(Move::from_counts(&counts))
    }

    fn memory_key(&self) -> String {
        format!("w{}", self.rng.get_word_pos())
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
