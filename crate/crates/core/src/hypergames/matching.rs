//! Enforcer on a general hypergraph via a matching of small edges.
//!
//! Enforcer first exhausts the elements outside the matching, then plays the
//! box game on the matching edges. Under strict rules the move that crosses
//! the boundary spends its leftover steps as the first steps of strategy S,
//! which S tolerates.

use super::game::{HyperState, HyperStrategy, Objective, Owner};
use super::Hypergraph;
use crate::engine::{BoxState, Forfeit, Move, Position, Rules};
use crate::monotone::mono_enforcer_move;
use crate::strict::strategy_s_steps;

/// Up to `want` pairwise disjoint edges of size at most `max_size`, as edge
/// indices. Tries greedy smallest-first, then exhaustive backtracking when
/// there are at most 64 candidate edges.
pub fn find_matching(h: &Hypergraph, max_size: usize, want: usize) -> Option<Vec<usize>> {
    let mut cand: Vec<usize> = (0..h.edges().len())
        .filter(|&i| h.edges()[i].len() <= max_size)
        .collect();
    cand.sort_by_key(|&i| (h.edges()[i].len(), i));
    if want == 0 {
        return Some(Vec::new());
    }

    let mut used = vec![false; h.ground_size()];
    let mut greedy = Vec::new();
    for &i in &cand {
        if h.edges()[i].iter().all(|&e| !used[e]) {
            h.edges()[i].iter().for_each(|&e| used[e] = true);
            greedy.push(i);
            if greedy.len() == want {
                return Some(greedy);
            }
        }
    }
    if cand.len() > 64 {
        return None;
    }
    let mut used = vec![false; h.ground_size()];
    let mut cur = Vec::new();
    backtrack(h, &cand, 0, want, &mut used, &mut cur).then_some(cur)
}

fn backtrack(
    h: &Hypergraph,
    cand: &[usize],
    from: usize,
    want: usize,
    used: &mut [bool],
    cur: &mut Vec<usize>,
) -> bool {
    if cur.len() == want {
        return true;
    }
    for j in from..cand.len() {
        if cand.len() - j < want - cur.len() {
            return false;
        }
        let edge = &h.edges()[cand[j]];
        if edge.iter().any(|&e| used[e]) {
            continue;
        }
        edge.iter().for_each(|&e| used[e] = true);
        cur.push(cand[j]);
        if backtrack(h, cand, j + 1, want, used, cur) {
            return true;
        }
        cur.pop();
        edge.iter().for_each(|&e| used[e] = false);
    }
    false
}

/// Enforcer strategy for `AvoidTargets` games built on a fixed matching.
#[derive(Debug, Clone)]
pub struct MatchingEnforcer {
    matching: Vec<usize>,
}

impl MatchingEnforcer {
    pub fn new(matching: Vec<usize>) -> MatchingEnforcer {
        MatchingEnforcer { matching }
    }

    pub fn matching(&self) -> &[usize] {
        &self.matching
    }

    fn edges<'a>(&'a self, h: &'a Hypergraph) -> impl Iterator<Item = &'a Vec<usize>> + 'a {
        self.matching.iter().map(move |&i| &h.edges()[i])
    }

    /// The matching edges seen as boxes: free elements count as remaining,
    /// and a box is safe once Enforcer owns one of its elements.
    fn box_position(&self, state: &HyperState, h: &Hypergraph) -> Position {
        let boxes = self
            .edges(h)
            .enumerate()
            .map(|(j, edge)| BoxState {
                id: j as u32,
                remaining: edge.iter().filter(|&&e| state.owner(e) == Owner::Free).count() as u32,
                touched_by_enforcer: edge.iter().any(|&e| state.owner(e) == Owner::Enforcer),
            })
            .collect();
        Position::from_boxes(boxes, state.bias(), state.rules(), state.to_move())
    }

    fn translate(&self, state: &HyperState, h: &Hypergraph, pos: &Position, mv: &Move) -> Vec<usize> {
        let mut out = Vec::new();
        for &(i, c) in &mv.claims {
            let edge = &h.edges()[self.matching[pos.boxes()[i].id as usize]];
            out.extend(
                edge.iter()
                    .copied()
                    .filter(|&e| state.owner(e) == Owner::Free)
                    .take(c as usize),
            );
        }
        out
    }
}

impl HyperStrategy for MatchingEnforcer {
    fn name(&self) -> &str {
        "matching-enforcer"
    }

    fn start(&mut self, initial: &HyperState) -> Result<(), Forfeit> {
        let Objective::AvoidTargets(h) = initial.objective() else {
            return Err(Forfeit::new("matching enforcer needs a target hypergraph"));
        };
        if self.matching.is_empty() {
            return Err(Forfeit::new("empty matching"));
        }
        let mut used = vec![false; h.ground_size()];
        for &i in &self.matching {
            let edge = h
                .edges()
                .get(i)
                .ok_or_else(|| Forfeit::new(format!("matching names missing edge {i}")))?;
            for &e in edge {
                if std::mem::replace(&mut used[e], true) {
                    return Err(Forfeit::new("matching edges are not disjoint"));
                }
            }
        }
        Ok(())
    }

    fn next_move(&mut self, state: &HyperState) -> Result<Vec<usize>, Forfeit> {
        let Objective::AvoidTargets(h) = state.objective() else {
            return Err(Forfeit::new("matching enforcer needs a target hypergraph"));
        };
        let mut in_matching = vec![false; h.ground_size()];
        self.edges(h).flatten().for_each(|&e| in_matching[e] = true);
        let off: Vec<usize> = state
            .free_elements()
            .into_iter()
            .filter(|&e| !in_matching[e])
            .collect();
        let need = state.required_claims();
        let pos = self.box_position(state, h);

        match state.rules() {
            Rules::Strict => {
                if off.len() >= need {
                    return Ok(off[..need].to_vec());
                }
                let mv = strategy_s_steps(&pos, (need - off.len()) as u32);
                let mut claim = off;
                claim.extend(self.translate(state, h, &pos, &mv));
                Ok(claim)
            }
            Rules::Monotone => {
                if off.is_empty() {
                    let mv = mono_enforcer_move(&pos);
                    return Ok(self.translate(state, h, &pos, &mv));
                }
                let mut claim = off;
                let mut short = need.saturating_sub(claim.len()) as u32;
                let mut counts = vec![0u32; pos.boxes().len()];
                while short > 0 {
                    let i = (0..pos.boxes().len())
                        .filter(|&i| pos.boxes()[i].remaining > counts[i])
                        .max_by_key(|&i| (pos.boxes()[i].remaining - counts[i], std::cmp::Reverse(i)))
                        .ok_or_else(|| Forfeit::new("board exhausted"))?;
                    counts[i] += 1;
                    short -= 1;
                }
                claim.extend(self.translate(state, h, &pos, &Move::from_counts(&counts)));
                Ok(claim)
            }
        }
    }

    fn box_clone(&self) -> Box<dyn HyperStrategy> {
        Box::new(self.clone())
    }
}
