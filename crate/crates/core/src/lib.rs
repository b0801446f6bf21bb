//! Misère box games: strict and monotone (p, q) Avoider-Enforcer games on
//! disjoint boxes, their strategies and thresholds, an exact solver, and
//! reductions from general hypergraph games.

pub mod criteria;
pub mod engine;
pub mod game_file;
pub mod hypergames;
pub mod monotone;
pub mod players;
mod plan;
pub mod solver;
pub mod strict;

pub use engine::{
    new_game, play_match, uniform_game, Bias, BoxState, EngineError, Forfeit, Move, Position,
    Rules, Side, Strategy, Verdict, Violation,
};
pub use game_file::{GameDescription, GameFileError};
pub use monotone::{LargestBoxEnforcer, MonoAvoider, MonoEnforcer};
pub use players::{OptimalStrategy, RandomStrategy};
pub use solver::{canonicalize, CanonicalKey, MinimalN, SolveError, SolveResult, Solver};
pub use strict::{StrategyS, StrictAvoider};
