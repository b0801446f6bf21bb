//! Constructive strategies for the strict rules.
//!
//! * [`strict_avoider_move`]: Avoider's two-stage strategy, which wins
//!   whenever some `k <= b_1` has `gcd(p+q, k) > p`.
//! * [`strict_enforcer_move`]: Enforcer's strategy S. Each step claims a safe
//!   element if there is one, otherwise an element of a largest box.

use crate::criteria::gcd_avoider_witness;
use crate::engine::{Forfeit, Move, Position, Rules, Side, Strategy};
use crate::plan::MovePlan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AvoiderStage {
    /// Shrink oversized dangerous boxes to `k`, otherwise eat safe elements.
    StageOne,
    /// Keep every move safe; when impossible, top up from one dangerous box.
    StageTwo,
}

/// Persistent memory of the strict Avoider strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AvoiderStrictMemory {
    pub witness_k: u32,
    pub stage: AvoiderStage,
    /// Elements taken from a dangerous box by the most recent dangerous claim
    /// (the `r` of the current sub-game). Zero during stage one.
    pub deficit: u32,
}

impl AvoiderStrictMemory {
    /// Picks the largest admissible `k` for the initial position.
    pub fn for_game(initial: &Position) -> Result<AvoiderStrictMemory, Forfeit> {
        let b1 = initial
            .boxes()
            .iter()
            .map(|b| b.remaining)
            .min()
            .ok_or_else(|| Forfeit::new("empty board"))?;
        let bias = initial.bias();
        let witness_k = gcd_avoider_witness(bias.p(), bias.q(), b1).ok_or_else(|| {
            Forfeit::new(format!(
                "no k <= {b1} with gcd(p+q, k) > p for bias {bias}"
            ))
        })?;
        Ok(AvoiderStrictMemory {
            witness_k,
            stage: AvoiderStage::StageOne,
            deficit: 0,
        })
    }

    fn key(&self) -> String {
        let stage = match self.stage {
            AvoiderStage::StageOne => 1,
            AvoiderStage::StageTwo => 2,
        };
        format!("k{}s{}r{}", self.witness_k, stage, self.deficit)
    }
}

fn check_turn(pos: &Position, side: Side, rules: Rules) -> Result<(), Forfeit> {
    if pos.rules() != rules {
        return Err(Forfeit::new(format!("strategy needs {rules} rules")));
    }
    if pos.to_move() != side {
        return Err(Forfeit::new(format!("not {side}'s turn")));
    }
    Ok(())
}

/// One move of the strict Avoider strategy.
pub fn strict_avoider_move(
    pos: &Position,
    mem: &AvoiderStrictMemory,
) -> Result<(Move, AvoiderStrictMemory), Forfeit> {
    check_turn(pos, Side::Avoider, Rules::Strict)?;
    let p = pos.bias().p();
    let k = mem.witness_k;
    let steps = pos.required_claims();
    let mut plan = MovePlan::new(pos);
    let mut mem = mem.clone();

    if mem.stage == AvoiderStage::StageOne {
        let mut left = steps;
        while left > 0 {
            let oversized = plan.dangerous().find(|&i| plan.remaining(i) > k);
            if oversized.is_none() && plan.safe_elements() == 0 {
                // Every surviving box is dangerous and of size exactly k.
                let b = plan
                    .dangerous()
                    .find(|&i| plan.remaining(i) == k)
                    .ok_or_else(|| Forfeit::new("stage two needs a dangerous box of size k"))?;
                if plan.remaining(b) <= left {
                    return Err(Forfeit::new("stage two would complete a dangerous box"));
                }
                plan.claim(b, left);
                mem.stage = AvoiderStage::StageTwo;
                mem.deficit = left;
                break;
            }
            match oversized {
                Some(i) => plan.claim(i, 1),
                None => {
                    plan.claim_safe(1);
                }
            }
            left -= 1;
        }
        return Ok((plan.into_move(), mem));
    }

    let safe = plan.safe_elements();
    if safe >= steps {
        plan.claim_safe(steps);
    } else {
        plan.claim_safe(safe);
        let need = steps - safe;
        if steps < p {
            // Fewer than p elements left: the rules force claiming all of them.
            let idx: Vec<usize> = plan.dangerous().collect();
            for i in idx {
                let r = plan.remaining(i);
                plan.claim(i, r);
            }
        } else {
            let b = plan
                .dangerous()
                .find(|&i| plan.remaining(i) > need)
                .ok_or_else(|| {
                    Forfeit::new(format!("no dangerous box can absorb {need} more claims"))
                })?;
            plan.claim(b, need);
            mem.deficit = need;
        }
    }
    Ok((plan.into_move(), mem))
}

/// The first `steps` steps of strategy S (fewer if the board runs out).
pub fn strategy_s_steps(pos: &Position, steps: u32) -> Move {
    let mut plan = MovePlan::new(pos);
    for _ in 0..steps {
        if plan.safe_elements() > 0 {
            plan.claim_safe(1);
        } else if let Some(i) = plan.largest() {
            plan.claim(i, 1);
        } else {
            break;
        }
    }
    plan.into_move()
}

/// One full move of strategy S. Stateless.
pub fn strict_enforcer_move(pos: &Position) -> Move {
    strategy_s_steps(pos, pos.required_claims())
}

/// [`Strategy`] adapter for the strict Avoider strategy.
#[derive(Debug, Clone, Default)]
pub struct StrictAvoider {
    mem: Option<AvoiderStrictMemory>,
}

impl StrictAvoider {
    pub fn new() -> StrictAvoider {
        StrictAvoider::default()
    }

    pub fn memory(&self) -> Option<&AvoiderStrictMemory> {
        self.mem.as_ref()
    }
}

impl Strategy for StrictAvoider {
    fn name(&self) -> &str {
        "strict-avoider"
    }

    fn start(&mut self, initial: &Position) -> Result<(), Forfeit> {
        self.mem = Some(AvoiderStrictMemory::for_game(initial)?);
        Ok(())
    }

    fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit> {
        let mem = match self.mem.take() {
            Some(m) => m,
            None => AvoiderStrictMemory::for_game(pos)?,
        };
        let (mv, mem) = strict_avoider_move(pos, &mem)?;
        self.mem = Some(mem);
        Ok(mv)
    }

    fn memory_key(&self) -> String {
        self.mem.as_ref().map_or_else(String::new, AvoiderStrictMemory::key)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// [`Strategy`] adapter for strategy S.
#[derive(Debug, Clone, Copy, Default)]
pub struct StrategyS;

impl Strategy for StrategyS {
    fn name(&self) -> &str {
        "strategy-s"
    }

    fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit> {
        check_turn(pos, Side::Enforcer, Rules::Strict)?;
        Ok(strict_enforcer_move(pos))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(*self)
    }
}
