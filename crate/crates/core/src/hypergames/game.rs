//! Element-level Avoider-Enforcer games on a general board.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{GraphSpec, Hypergraph};
use crate::engine::{Bias, Forfeit, Rules, Side};
use crate::solver::{SolveError, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Owner {
    Free,
    Avoider,
    Enforcer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Objective {
    /// Avoider loses by owning every element of some edge.
    AvoidTargets(Hypergraph),
    /// The board is the edge set of the graph. Avoider wins iff some vertex
    /// ends up with no Avoider edge.
    IsolateVertex(GraphSpec),
}

#[derive(Debug)]
struct Board {
    objective: Objective,
    ground: usize,
    /// Hyperedges, or stars of every vertex.
    groups: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperViolation {
    #[error("game is already decided")]
    GameOver,
    #[error("element {0} is not free")]
    Taken(usize),
    #[error("element {0} listed twice")]
    Repeated(usize),
    #[error("{rules} move must claim {expected} elements, got {got}")]
    WrongCount {
        rules: Rules,
        expected: String,
        got: usize,
    },
}

/// Immutable game state; moves return new values.
#[derive(Debug, Clone)]
pub struct HyperState {
    board: Arc<Board>,
    owners: Vec<Owner>,
    bias: Bias,
    rules: Rules,
    to_move: Side,
}

impl HyperState {
    pub fn new(objective: Objective, bias: Bias, rules: Rules, first: Side) -> HyperState {
        let (ground, groups) = match &objective {
            Objective::AvoidTargets(h) => (h.ground_size(), h.edges().to_vec()),
            Objective::IsolateVertex(g) => (g.edges().len(), g.stars()),
        };
        HyperState {
            board: Arc::new(Board {
                objective,
                ground,
                groups,
            }),
            owners: vec![Owner::Free; ground],
            bias,
            rules,
            to_move: first,
        }
    }

    pub fn objective(&self) -> &Objective {
        &self.board.objective
    }

    pub fn owners(&self) -> &[Owner] {
        &self.owners
    }

    pub fn owner(&self, element: usize) -> Owner {
        self.owners[element]
    }

    pub fn bias(&self) -> Bias {
        self.bias
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn to_move(&self) -> Side {
        self.to_move
    }

    pub fn free_elements(&self) -> Vec<usize> {
        (0..self.board.ground)
            .filter(|&e| self.owners[e] == Owner::Free)
            .collect()
    }

    pub fn required_claims(&self) -> usize {
        let free = self.owners.iter().filter(|&&o| o == Owner::Free).count();
        (self.bias.of(self.to_move) as usize).min(free)
    }

    /// Winner once the game is decided. Decided games may still have free
    /// elements: further play cannot change the result.
    pub fn outcome(&self) -> Option<Side> {
        let all = |g: &Vec<usize>, o: Owner| g.iter().all(|&e| self.owners[e] == o);
        let any = |g: &Vec<usize>, o: Owner| g.iter().any(|&e| self.owners[e] == o);
        match self.board.objective {
            Objective::AvoidTargets(_) => {
                if self.board.groups.iter().any(|g| all(g, Owner::Avoider)) {
                    Some(Side::Enforcer)
                } else if self.board.groups.iter().all(|g| any(g, Owner::Enforcer))
                    || !self.owners.contains(&Owner::Free)
                {
                    Some(Side::Avoider)
                } else {
                    None
                }
            }
            Objective::IsolateVertex(_) => {
                if self.board.groups.iter().any(|g| all(g, Owner::Enforcer)) {
                    Some(Side::Avoider)
                } else if self.board.groups.iter().all(|g| any(g, Owner::Avoider)) {
                    Some(Side::Enforcer)
                } else {
                    None
                }
            }
        }
    }

    pub fn validate(&self, claim: &[usize]) -> Result<(), HyperViolation> {
        if self.outcome().is_some() {
            return Err(HyperViolation::GameOver);
        }
        let mut seen = vec![false; self.board.ground];
        for &e in claim {
            if e >= self.board.ground || self.owners[e] != Owner::Free {
                return Err(HyperViolation::Taken(e));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(HyperViolation::Repeated(e));
            }
        }
        let need = self.required_claims();
        let ok = match self.rules {
            Rules::Strict => claim.len() == need,
            Rules::Monotone => claim.len() >= need.max(1),
        };
        if !ok {
            let expected = match self.rules {
                Rules::Strict => format!("exactly {need}"),
                Rules::Monotone => format!("at least {need}"),
            };
            return Err(HyperViolation::WrongCount {
                rules: self.rules,
                expected,
                got: claim.len(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, claim: &[usize]) -> Result<HyperState, HyperViolation> {
        self.validate(claim)?;
        let owner = match self.to_move {
            Side::Avoider => Owner::Avoider,
            Side::Enforcer => Owner::Enforcer,
        };
        let mut next = self.clone();
        for &e in claim {
            next.owners[e] = owner;
        }
        next.to_move = self.to_move.other();
        Ok(next)
    }

    fn key(&self) -> (Vec<u8>, Side) {
        let owners = self
            .owners
            .iter()
            .map(|o| match o {
                Owner::Free => 0,
                Owner::Avoider => 1,
                Owner::Enforcer => 2,
            })
            .collect();
        (owners, self.to_move)
    }
}

/// A deterministic player of a general game. Same contract as
/// [`crate::engine::Strategy`], with moves given as element ids.
pub trait HyperStrategy: Send {
    fn name(&self) -> &str;

    fn start(&mut self, _initial: &HyperState) -> Result<(), Forfeit> {
        Ok(())
    }

    fn next_move(&mut self, state: &HyperState) -> Result<Vec<usize>, Forfeit>;

    fn memory_key(&self) -> String {
        String::new()
    }

    fn box_clone(&self) -> Box<dyn HyperStrategy>;
}

impl Clone for Box<dyn HyperStrategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperVerdict {
    pub winner: Side,
    pub forfeit: Option<(Side, String)>,
    pub transcript: Vec<(Side, Vec<usize>)>,
    pub final_state_owners: Vec<Owner>,
}

/// Plays until the game is decided. Forfeits and illegal moves lose.
pub fn play_hyper_match(
    state: &HyperState,
    avoider: &mut dyn HyperStrategy,
    enforcer: &mut dyn HyperStrategy,
) -> HyperVerdict {
    let mut transcript = Vec::new();
    let mut current = state.clone();
    let lose = |side: Side, reason: String, transcript, cur: &HyperState| HyperVerdict {
        winner: side.other(),
        forfeit: Some((side, reason)),
        transcript,
        final_state_owners: cur.owners.clone(),
    };
    if let Err(f) = avoider.start(state) {
        return lose(Side::Avoider, f.0, transcript, &current);
    }
    if let Err(f) = enforcer.start(state) {
        return lose(Side::Enforcer, f.0, transcript, &current);
    }
    loop {
        if let Some(winner) = current.outcome() {
            return HyperVerdict {
                winner,
                forfeit: None,
                transcript,
                final_state_owners: current.owners,
            };
        }
        let side = current.to_move;
        let s: &mut dyn HyperStrategy = match side {
            Side::Avoider => &mut *avoider,
            Side::Enforcer => &mut *enforcer,
        };
        let claim = match s.next_move(&current) {
            Ok(c) => c,
            Err(f) => return lose(side, f.0, transcript, &current),
        };
        match current.apply(&claim) {
            Ok(next) => {
                transcript.push((side, claim));
                current = next;
            }
            Err(v) => return lose(side, format!("illegal move: {v}"), transcript, &current),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperOutcome {
    pub winner: Side,
    pub node_count: u64,
}

/// Outcome when `fixed_side` plays `strategy` and the other side searches
/// every legal move sequence. Strict moves are all `need`-subsets of the
/// free elements; monotone moves are all larger subsets too.
pub fn hyper_best_response(
    state: &HyperState,
    fixed_side: Side,
    strategy: &dyn HyperStrategy,
    budget: Option<u64>,
) -> Result<HyperOutcome, SolveError> {
    let mut strat = strategy.box_clone();
    if strat.start(state).is_err() {
        return Ok(HyperOutcome {
            winner: fixed_side.other(),
            node_count: 0,
        });
    }
    let mut search = Exhaustive {
        fixed: fixed_side,
        memo: HashMap::new(),
        nodes: 0,
        budget: budget.unwrap_or(DEFAULT_NODE_BUDGET),
    };
    let winner = search.rec(state, strat)?;
    Ok(HyperOutcome {
        winner,
        node_count: search.nodes,
    })
}

type ExhaustiveKey = ((Vec<u8>, Side), String);

struct Exhaustive {
    fixed: Side,
    memo: HashMap<ExhaustiveKey, Side>,
    nodes: u64,
    budget: u64,
}

impl Exhaustive {
    fn rec(&mut self, state: &HyperState, mut strat: Box<dyn HyperStrategy>) -> Result<Side, SolveError> {
        if let Some(w) = state.outcome() {
            return Ok(w);
        }
        let key = (state.key(), strat.memory_key());
        if let Some(&w) = self.memo.get(&key) {
            return Ok(w);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolveError::BudgetExceeded(self.budget));
        }
        let free = self.fixed.other();
        let winner = if state.to_move == self.fixed {
            match strat.next_move(state).ok().and_then(|c| state.apply(&c).ok()) {
                Some(next) => self.rec(&next, strat)?,
                None => free,
            }
        } else {
            let mut w = self.fixed;
            for claim in all_claims(state) {
                let next = state.apply(&claim).expect("enumerated claims are legal");
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

fn all_claims(state: &HyperState) -> Vec<Vec<usize>> {
    let free = state.free_elements();
    let need = state.required_claims();
    let sizes: Vec<usize> = match state.rules {
        Rules::Strict => vec![need],
        Rules::Monotone => (need.max(1)..=free.len()).collect(),
    };
    let mut out = Vec::new();
    for size in sizes {
        let mut cur = Vec::with_capacity(size);
        combinations(&free, size, 0, &mut cur, &mut out);
    }
    out
}

fn combinations(items: &[usize], size: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for i in from..items.len() {
        if items.len() - i < size - cur.len() {
            break;
        }
        cur.push(items[i]);
        combinations(items, size, i + 1, cur, out);
        cur.pop();
    }
}

/// Seeded random player. Under monotone rules it sometimes claims a couple
/// of extra elements.
#[derive(Clone)]
pub struct RandomHyperPlayer {
    rng: ChaCha8Rng,
}

impl RandomHyperPlayer {
    pub fn new(seed: u64) -> RandomHyperPlayer {
        RandomHyperPlayer {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl HyperStrategy for RandomHyperPlayer {
    fn name(&self) -> &str {
        "random"
    }

    fn next_move(&mut self, state: &HyperState) -> Result<Vec<usize>, Forfeit> {
        let mut free = state.free_elements();
        let need = state.required_claims();
        let take = match state.rules {
            Rules::Strict => need,
            Rules::Monotone => self.rng.gen_range(need.max(1)..=free.len().min(need + 2).max(1)),
        };
        free.shuffle(&mut self.rng);
        free.truncate(take);
        free.sort_unstable();
        Ok(free)
    }

    fn memory_key(&self) -> String {
        format!("w{}", self.rng.get_word_pos())
    }

    fn box_clone(&self) -> Box<dyn HyperStrategy> {
        Box::new(self.clone())
    }
}

/// Scripted Enforcer for the isolation game: claims the minimum, always
/// choosing an edge whose endpoints already carry Avoider edges, then the
/// edge whose endpoints have the most free edges left. It tries never to
/// finish off a star.
#[derive(Debug, Clone, Copy, Default)]
pub struct SpreadEnforcer;

impl HyperStrategy for SpreadEnforcer {
    fn name(&self) -> &str {
        "spread"
    }

    fn next_move(&mut self, state: &HyperState) -> Result<Vec<usize>, Forfeit> {
        let Objective::IsolateVertex(g) = state.objective() else {
            return Err(Forfeit::new("spread enforcer plays isolation games only"));
        };
        let stars = &state.board.groups;
        let mut owners = state.owners.clone();
        let mut claim = Vec::new();
        for _ in 0..state.required_claims() {
            let covered = |v: usize, owners: &[Owner]| stars[v].iter().any(|&e| owners[e] == Owner::Avoider);
            let free_deg = |v: usize, owners: &[Owner]| stars[v].iter().filter(|&&e| owners[e] == Owner::Free).count();
            let best = (0..owners.len())
                .filter(|&e| owners[e] == Owner::Free)
                .max_by_key(|&e| {
                    let (u, v) = g.edges()[e];
                    let both = covered(u, &owners) && covered(v, &owners);
                    let slack = free_deg(u, &owners).min(free_deg(v, &owners));
                    (both, slack, std::cmp::Reverse(e))
                })
                .expect("a free element exists while claims are required");
            owners[best] = Owner::Enforcer;
            claim.push(best);
        }
        claim.sort_unstable();
        Ok(claim)
    }

    fn box_clone(&self) -> Box<dyn HyperStrategy> {
        Box::new(*self)
    }
}
