//! Avoider isolating a vertex in the monotone (1, q) game on a graph.
//!
//! Avoider takes every edge that misses an independent set S, then plays
//! BoxEnforcer in the monotone box game with bias (q, 1) whose boxes are the
//! stars of S. The real Enforcer is BoxAvoider: when he fills a star, its
//! centre is isolated in Avoider's graph.

use rand::Rng;

use super::game::{HyperState, HyperStrategy, Objective, Owner};
use super::GraphSpec;
use crate::engine::{Bias, BoxState, Forfeit, Position, Rules, Side};
use crate::monotone::mono_enforcer_move;

/// Takes the lowest remaining vertex, drops it and its neighbours, repeats.
pub fn greedy_independent_set(g: &GraphSpec) -> Vec<usize> {
    let adj = g.adjacency();
    let mut alive = vec![true; g.vertex_count()];
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        if !alive[v] {
            continue;
        }
        out.push(v);
        for (u, &a) in adj[v].iter().enumerate() {
            if a {
                alive[u] = false;
            }
        }
    }
    out
}

/// `d < n/2 - 1` and `q >= d / ln(n / (2d + 2))`.
pub fn isolation_hypothesis(n: usize, d: usize, q: u32) -> bool {
    if 2 * d + 2 >= n {
        return false;
    }
    let ln = (n as f64 / (2 * d + 2) as f64).ln();
    f64::from(q) * ln >= d as f64
}

/// Random graph on `n` vertices with maximum degree at most `d`: random
/// vertex pairs are tried `attempts` times and kept while both endpoints
/// have spare degree.
pub fn random_bounded_degree_graph(n: usize, d: usize, attempts: usize, rng: &mut impl Rng) -> GraphSpec {
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    if n >= 2 {
        for _ in 0..attempts {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let (a, b) = (u.min(v), u.max(v));
            if a == b || deg[a] >= d || deg[b] >= d || !seen.insert((a, b)) {
                continue;
            }
            deg[a] += 1;
            deg[b] += 1;
            edges.push((a, b));
        }
    }
    GraphSpec::new(n, edges).expect("generated edges are simple")
}

/// Avoider strategy for `IsolateVertex` games under monotone rules.
#[derive(Debug, Clone, Default)]
pub struct IsolateVertexAvoider {
    independent: Vec<usize>,
}

impl IsolateVertexAvoider {
    pub fn new() -> IsolateVertexAvoider {
        IsolateVertexAvoider::default()
    }

    pub fn independent_set(&self) -> &[usize] {
        &self.independent
    }
}

impl HyperStrategy for IsolateVertexAvoider {
    fn name(&self) -> &str {
        "isolate-vertex"
    }

    fn start(&mut self, initial: &HyperState) -> Result<(), Forfeit> {
        let Objective::IsolateVertex(g) = initial.objective() else {
            return Err(Forfeit::new("isolate-vertex needs a graph game"));
        };
        if initial.rules() != Rules::Monotone {
            return Err(Forfeit::new("isolate-vertex needs monotone rules"));
        }
        self.independent = greedy_independent_set(g);
        Ok(())
    }

    fn next_move(&mut self, state: &HyperState) -> Result<Vec<usize>, Forfeit> {
        let Objective::IsolateVertex(g) = state.objective() else {
            return Err(Forfeit::new("isolate-vertex needs a graph game"));
        };
        if self.independent.is_empty() {
            self.independent = greedy_independent_set(g);
        }
        let mut in_s = vec![false; g.vertex_count()];
        self.independent.iter().for_each(|&v| in_s[v] = true);
        let free = state.free_elements();
        let outside: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&e| {
                let (u, v) = g.edges()[e];
                !in_s[u] && !in_s[v]
            })
            .collect();
        if !outside.is_empty() {
            return Ok(outside);
        }

        let stars = g.stars();
        let boxes: Vec<BoxState> = self
            .independent
            .iter()
            .enumerate()
            .map(|(j, &v)| BoxState {
                id: j as u32,
                remaining: stars[v].iter().filter(|&&e| state.owner(e) == Owner::Free).count() as u32,
                touched_by_enforcer: stars[v].iter().any(|&e| state.owner(e) == Owner::Avoider),
            })
            .collect();
        let q = state.bias().q();
        let bias = Bias::new(q, 1).expect("q >= 1");
        let pos = Position::from_boxes(boxes, bias, Rules::Monotone, Side::Enforcer);
        if pos.avoider_lost() {
            // Some star already belongs to Enforcer: the game is won.
            return Ok(free.into_iter().take(1).collect());
        }
        if pos.dangerous_count() == 0 {
            return Err(Forfeit::new("every star already holds an Avoider edge"));
        }
        let mv = mono_enforcer_move(&pos);
        let mut claim = Vec::new();
        for &(i, c) in &mv.claims {
            let v = self.independent[pos.boxes()[i].id as usize];
            claim.extend(
                stars[v]
                    .iter()
                    .copied()
                    .filter(|&e| state.owner(e) == Owner::Free)
                    .take(c as usize),
            );
        }
        Ok(claim)
    }

    fn box_clone(&self) -> Box<dyn HyperStrategy> {
        Box::new(self.clone())
    }
}
