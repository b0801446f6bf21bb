//! Strategies for the monotone rules, where a move claims at least `p`
//! (Avoider) or `q` (Enforcer) elements.

use crate::criteria::n_mono_enforcer;
use crate::engine::{Forfeit, Move, Position, Rules, Side, Strategy};
use crate::plan::MovePlan;

/// Persistent memory of the monotone Avoider strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AvoiderMonoMemory {
    /// Box size every dangerous box is normalized to on the first move.
    pub target_k: u32,
    pub first_move_done: bool,
    /// Sizes of the dangerous boxes right after Avoider's previous move,
    /// ascending. Needed to tell which boxes Enforcer has since claimed.
    pub prev_dangerous: Vec<u32>,
}

impl AvoiderMonoMemory {
    /// `target_k` is the smallest box size of the initial position.
    pub fn for_game(initial: &Position) -> Result<AvoiderMonoMemory, Forfeit> {
        let k = initial
            .boxes()
            .iter()
            .map(|b| b.remaining)
            .min()
            .ok_or_else(|| Forfeit::new("empty board"))?;
        if k <= initial.bias().p() {
            return Err(Forfeit::new(format!(
                "monotone Avoider strategy needs b_1 > p (b_1={k}, p={})",
                initial.bias().p()
            )));
        }
        Ok(AvoiderMonoMemory {
            target_k: k,
            first_move_done: false,
            prev_dangerous: Vec::new(),
        })
    }

    fn key(&self) -> String {
        let prev: Vec<String> = self.prev_dangerous.iter().map(u32::to_string).collect();
        format!(
            "k{}f{}p{}",
            self.target_k,
            u8::from(self.first_move_done),
            prev.join(".")
        )
    }
}

fn check_turn(pos: &Position, side: Side) -> Result<(), Forfeit> {
    if pos.rules() != Rules::Monotone {
        return Err(Forfeit::new("strategy needs monotone rules"));
    }
    if pos.to_move() != side {
        return Err(Forfeit::new(format!("not {side}'s turn")));
    }
    Ok(())
}

/// One move of the monotone Avoider strategy.
///
/// The physical move is the concatenation of:
/// (a) every safe element on the board;
/// (b) on the first move only, trimming every dangerous box down to `target_k`;
/// (c) equalization, so that the boxes Enforcer claimed since the last move
///     look like the largest ones;
/// (d) the core rule: with at most `q` dangerous boxes left, all but one
///     element of each; otherwise one element from each of `p` maximal boxes,
///     or, with only `r < p` maximal boxes, one from each of those followed by
///     one from each of the `p` currently largest boxes.
pub fn mono_avoider_move(
    pos: &Position,
    mem: &AvoiderMonoMemory,
) -> Result<(Move, AvoiderMonoMemory), Forfeit> {
    check_turn(pos, Side::Avoider)?;
    let (p, q) = (pos.bias().p(), pos.bias().q());
    let k = mem.target_k;
    let mut plan = MovePlan::new(pos);

    let safe = plan.safe_elements();
    plan.claim_safe(safe);

    if !mem.first_move_done {
        let big: Vec<usize> = plan.dangerous().filter(|&i| plan.remaining(i) > k).collect();
        for i in big {
            let excess = plan.remaining(i) - k;
            plan.claim(i, excess);
        }
    } else {
        let mut current: Vec<usize> = plan.dangerous().collect();
        current.sort_by(|&a, &b| plan.remaining(b).cmp(&plan.remaining(a)).then(a.cmp(&b)));
        let mut prev = mem.prev_dangerous.clone();
        prev.sort_unstable_by(|a, b| b.cmp(a));
        if current.len() > prev.len() {
            return Err(Forfeit::new("more dangerous boxes than after the previous move"));
        }
        let claimed_by_enforcer = prev.len() - current.len();
        for (&i, &target) in current.iter().zip(&prev[claimed_by_enforcer..]) {
            let size = plan.remaining(i);
            if size < target {
                return Err(Forfeit::new("dangerous box shrank between Avoider moves"));
            }
            plan.claim(i, size - target);
        }
    }

    let dangerous: Vec<usize> = plan.dangerous().collect();
    if dangerous.len() as u64 <= u64::from(q) {
        for i in dangerous {
            let r = plan.remaining(i);
            plan.claim(i, r - 1);
        }
    } else {
        let max = dangerous.iter().map(|&i| plan.remaining(i)).max().unwrap_or(0);
        let maximal: Vec<usize> = dangerous
            .iter()
            .copied()
            .filter(|&i| plan.remaining(i) == max)
            .collect();
        if maximal.len() as u64 >= u64::from(p) {
            for &i in maximal.iter().take(p as usize) {
                plan.claim(i, 1);
            }
        } else {
            for &i in &maximal {
                plan.claim(i, 1);
            }
            let mut order: Vec<usize> = plan.dangerous().collect();
            order.sort_by(|&a, &b| plan.remaining(b).cmp(&plan.remaining(a)).then(a.cmp(&b)));
            for &i in order.iter().take(p as usize) {
                plan.claim(i, 1);
            }
        }
    }

    if plan.claimed() < pos.required_claims() {
        return Err(Forfeit::new(format!(
            "move claims {} elements, fewer than the required {}",
            plan.claimed(),
            pos.required_claims()
        )));
    }

    let mut after: Vec<u32> = plan.dangerous().map(|i| plan.remaining(i)).collect();
    after.sort_unstable();
    let mem = AvoiderMonoMemory {
        target_k: k,
        first_move_done: true,
        prev_dangerous: after,
    };
    Ok((plan.into_move(), mem))
}

/// One move of the monotone Enforcer strategy.
///
/// (i) If the smallest dangerous box has at most `p` elements and the rest
/// of the board holds at least `q`, claim everything but that box.
/// (ii) Otherwise, for the least `l` such that at least `N(l)` boxes are
/// dangerous and the `N(l)` smallest average at most `l`, claim every other
/// dangerous box outright, then continue with (iii) as a fresh move.
/// (iii) Fully claim the fewest largest dangerous boxes holding `q` elements.
///
/// When (i) applies but is illegal, the move goes straight to (iii).
pub fn mono_enforcer_move(pos: &Position) -> Move {
    let (p, q) = (pos.bias().p(), pos.bias().q());
    let total = pos.total_remaining();
    let mut plan = MovePlan::new(pos);
    let dangerous: Vec<usize> = plan.dangerous().collect();
    if dangerous.is_empty() {
        plan.claim_safe(q.min(total));
        return plan.into_move();
    }

    let b1 = plan.remaining(dangerous[0]);
    if b1 <= p {
        if total - b1 >= q {
            for i in 0..plan.len() {
                if i != dangerous[0] {
                    let r = plan.remaining(i);
                    plan.claim(i, r);
                }
            }
            return plan.into_move();
        }
    } else {
        trim_to_threshold(&mut plan, &dangerous, p, q);
    }

    claim_largest_boxes(&mut plan, q);
    plan.into_move()
}

fn trim_to_threshold(plan: &mut MovePlan, dangerous: &[usize], p: u32, q: u32) {
    let max = dangerous.iter().map(|&i| plan.remaining(i)).max().unwrap_or(0);
    for l in 1..=max {
        let Ok(n) = n_mono_enforcer(p, q, l) else {
            return;
        };
        if n > dangerous.len() as u64 {
            continue;
        }
        let n = n as usize;
        let sum: u64 = dangerous[..n].iter().map(|&i| u64::from(plan.remaining(i))).sum();
        if sum <= u64::from(l) * n as u64 {
            for &i in &dangerous[n..] {
                let r = plan.remaining(i);
                plan.claim(i, r);
            }
            return;
        }
    }
}

/// Claims whole dangerous boxes, largest first, until `q` elements are
/// taken; tops up with safe elements if the dangerous boxes run out.
fn claim_largest_boxes(plan: &mut MovePlan, q: u32) {
    let mut order: Vec<usize> = plan.dangerous().collect();
    order.sort_by(|&a, &b| plan.remaining(b).cmp(&plan.remaining(a)).then(a.cmp(&b)));
    let mut got = 0;
    for i in order {
        if got >= q {
            break;
        }
        let r = plan.remaining(i);
        plan.claim(i, r);
        got += r;
    }
    if got < q {
        plan.claim_safe(q - got);
    }
}

/// Fully claims one largest dangerous box. With `q = 1` this is always a
/// legal monotone move.
pub fn largest_box_enforcer_move(pos: &Position) -> Move {
    let q = pos.bias().q();
    let need = q.min(pos.total_remaining());
    let mut plan = MovePlan::new(pos);
    while plan.claimed() < need {
        match plan.largest_where(|i| plan.is_dangerous(i)) {
            Some(i) => {
                let r = plan.remaining(i);
                plan.claim(i, r);
            }
            None => {
                let short = need - plan.claimed();
                plan.claim_safe(short);
                break;
            }
        }
    }
    plan.into_move()
}

/// [`Strategy`] adapter for the monotone Avoider strategy.
#[derive(Debug, Clone, Default)]
pub struct MonoAvoider {
    mem: Option<AvoiderMonoMemory>,
}

impl MonoAvoider {
    pub fn new() -> MonoAvoider {
        MonoAvoider::default()
    }
}

impl Strategy for MonoAvoider {
    fn name(&self) -> &str {
        "mono-avoider"
    }

    fn start(&mut self, initial: &Position) -> Result<(), Forfeit> {
        self.mem = Some(AvoiderMonoMemory::for_game(initial)?);
        Ok(())
    }

    fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit> {
        let mem = match self.mem.take() {
            Some(m) => m,
            None => AvoiderMonoMemory::for_game(pos)?,
        };
        let (mv, mem) = mono_avoider_move(pos, &mem)?;
        self.mem = Some(mem);
        Ok(mv)
    }

    fn memory_key(&self) -> String {
        self.mem.as_ref().map_or_else(String::new, AvoiderMonoMemory::key)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// [`Strategy`] adapter for the monotone Enforcer strategy.
#[derive(Debug, Clone, Copy, Default)]
pub struct MonoEnforcer;

impl Strategy for MonoEnforcer {
    fn name(&self) -> &str {
        "mono-enforcer"
    }

    fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit> {
        check_turn(pos, Side::Enforcer)?;
        Ok(mono_enforcer_move(pos))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(*self)
    }
}

/// [`Strategy`] adapter for [`largest_box_enforcer_move`].
#[derive(Debug, Clone, Copy, Default)]
pub struct LargestBoxEnforcer;

impl Strategy for LargestBoxEnforcer {
    fn name(&self) -> &str {
        "largest-box"
    }

    fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit> {
        check_turn(pos, Side::Enforcer)?;
        Ok(largest_box_enforcer_move(pos))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{new_game, Bias, BoxState};

    fn shape(pos: &Position) -> Vec<(u32, bool)> {
        pos.boxes()
            .iter()
            .map(|b| (b.remaining, b.touched_by_enforcer))
            .collect()
    }

    fn mono(sizes: &[u32], p: u32, q: u32, first: Side) -> Position {
        new_game(sizes, Bias::new(p, q).unwrap(), Rules::Monotone, first).unwrap()
    }

    fn mem(k: u32, prev: &[u32]) -> AvoiderMonoMemory {
        AvoiderMonoMemory {
            target_k: k,
            first_move_done: true,
            prev_dangerous: prev.to_vec(),
        }
    }

    #[test]
    fn avoider_clause_one_leaves_one_element_per_box() {
        let pos = mono(&[3, 2], 1, 2, Side::Avoider);
        let (mv, _) = mono_avoider_move(&pos, &mem(2, &[2, 3])).unwrap();
        let next = pos.apply_move(&mv).unwrap();
        assert_eq!(shape(&next), vec![(1, false), (1, false)]);
    }

    #[test]
    fn avoider_clause_two_touches_p_maximal_boxes() {
        let pos = mono(&[3, 3, 3, 3], 2, 2, Side::Avoider);
        let (mv, _) = mono_avoider_move(&pos, &mem(3, &[3, 3, 3, 3])).unwrap();
        let next = pos.apply_move(&mv).unwrap();
        assert_eq!(
            shape(&next),
            vec![(2, false), (2, false), (3, false), (3, false)]
        );
    }

    #[test]
    fn avoider_clause_three_spreads_over_further_boxes() {
        let pos = mono(&[3, 2, 2], 2, 1, Side::Avoider);
        let (mv, _) = mono_avoider_move(&pos, &mem(2, &[2, 2, 3])).unwrap();
        assert_eq!(mv.total(), 3);
        let next = pos.apply_move(&mv).unwrap();
        assert_eq!(shape(&next), vec![(1, false), (1, false), (2, false)]);
    }

    #[test]
    fn avoider_first_move_normalizes_box_sizes() {
        let pos = mono(&[3, 5, 4], 1, 3, Side::Avoider);
        let m = AvoiderMonoMemory::for_game(&pos).unwrap();
        assert_eq!(m.target_k, 3);
        let (mv, m) = mono_avoider_move(&pos, &m).unwrap();
        // Trim to [3,3,3], then clause (i): three boxes <= q.
        let next = pos.apply_move(&mv).unwrap();
        assert_eq!(shape(&next), vec![(1, false), (1, false), (1, false)]);
        assert_eq!(m.prev_dangerous, vec![1, 1, 1]);
    }

    #[test]
    fn avoider_claims_safe_leftovers_and_equalizes() {
        // After Avoider's move the dangerous boxes were [2,3,3]. Enforcer then
        // touched the size-2 box, leaving one element in it.
        let boxes = vec![
            BoxState { id: 0, remaining: 1, touched_by_enforcer: true },
            BoxState { id: 1, remaining: 3, touched_by_enforcer: false },
            BoxState { id: 2, remaining: 3, touched_by_enforcer: false },
        ];
        let pos = Position::from_boxes(boxes, Bias::new(1, 1).unwrap(), Rules::Monotone, Side::Avoider);
        let (mv, m) = mono_avoider_move(&pos, &mem(3, &[2, 3, 3])).unwrap();
        // Safe element, equalize one 3 down to 2, then core on [2,3]: q=1 < 2
        // boxes, one maximal box (3) and p=1, so one element from it.
        assert_eq!(mv.total(), 3);
        let next = pos.apply_move(&mv).unwrap();
        assert_eq!(shape(&next), vec![(2, false), (2, false)]);
        assert_eq!(m.prev_dangerous, vec![2, 2]);
    }

    #[test]
    fn avoider_strategy_requires_k_above_p() {
        let pos = mono(&[2, 2], 2, 4, Side::Avoider);
        assert!(AvoiderMonoMemory::for_game(&pos).is_err());
    }

    #[test]
    fn enforcer_clause_two_then_three() {
        let pos = mono(&[2, 2, 2, 2], 1, 2, Side::Enforcer);
        let next = pos.apply_move(&mono_enforcer_move(&pos)).unwrap();
        assert_eq!(shape(&next), vec![(2, false), (2, false), (2, false)]);
    }

    #[test]
    fn enforcer_clause_one_isolates_the_smallest_box() {
        let pos = mono(&[1, 5, 5], 2, 3, Side::Enforcer);
        let next = pos.apply_move(&mono_enforcer_move(&pos)).unwrap();
        assert_eq!(shape(&next), vec![(1, false)]);
    }

    #[test]
    fn enforcer_clause_three_claims_fewest_largest_boxes() {
        let pos = mono(&[3, 2, 2], 3, 4, Side::Enforcer);
        let next = pos.apply_move(&mono_enforcer_move(&pos)).unwrap();
        assert_eq!(shape(&next), vec![(2, false)]);
    }

    #[test]
    fn enforcer_clause_one_illegal_falls_through() {
        // b_1 = 1 <= p but only 2 elements outside it while q = 3.
        let pos = mono(&[1, 2], 1, 3, Side::Enforcer);
        let mv = mono_enforcer_move(&pos);
        assert!(pos.validate_move(&mv).is_ok());
        assert_eq!(mv.total(), 3);
    }

    #[test]
    fn enforcer_trims_beyond_the_threshold() {
        // p=1,q=1: N(1) = 2, so two size-1 boxes trigger (ii) at l=1... but
        // b_1 = 1 <= p triggers (i) first. Use sizes >= 2: N(2) = 3.
        let pos = mono(&[2, 2, 2, 3, 3], 1, 1, Side::Enforcer);
        let next = pos.apply_move(&mono_enforcer_move(&pos)).unwrap();
        // Trim both size-3 boxes, then (iii) claims one size-2 box.
        assert_eq!(shape(&next), vec![(2, false), (2, false)]);
    }

    #[test]
    fn largest_box_examples() {
        let pos = mono(&[2, 4], 1, 1, Side::Enforcer);
        let next = pos.apply_move(&largest_box_enforcer_move(&pos)).unwrap();
        assert_eq!(shape(&next), vec![(2, false)]);

        let pos = mono(&[5], 1, 1, Side::Enforcer);
        let next = pos.apply_move(&largest_box_enforcer_move(&pos)).unwrap();
        assert!(next.boxes().is_empty());

        let pos = mono(&[3, 3], 1, 1, Side::Enforcer);
        let mv = largest_box_enforcer_move(&pos);
        assert_eq!(mv.claims, vec![(0, 3)]);
    }
}
