//! Board of the H-game: one target per copy of H in G.

use std::collections::{BTreeSet, HashMap};

use super::{GraphSpec, Hypergraph};

/// Ground set is `E(g)` (edge indices); one hyperedge per distinct edge set
/// of a subgraph of `g` isomorphic to `h`. Copies are found by enumerating
/// injective vertex maps that send edges to edges.
pub fn h_game_board(g: &GraphSpec, h: &GraphSpec) -> Hypergraph {
    let adj = g.adjacency();
    let mut edge_id = HashMap::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        edge_id.insert((u, v), i);
    }
    let h_adj = h.adjacency();
    let mut copies = BTreeSet::new();
    let mut map = Vec::with_capacity(h.vertex_count());
    let mut used = vec![false; g.vertex_count()];
    if h.vertex_count() <= g.vertex_count() {
        extend(&adj, &h_adj, &mut map, &mut used, &mut |map| {
            let mut set: Vec<usize> = h
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let (u, v) = (map[a].min(map[b]), map[a].max(map[b]));
                    edge_id[&(u, v)]
                })
                .collect();
            set.sort_unstable();
            copies.insert(set);
        });
    }
    let edges: Vec<Vec<usize>> = copies.into_iter().filter(|c| !c.is_empty()).collect();
    Hypergraph::new(g.edges().len(), edges).expect("copies use valid edge ids")
}

fn extend(
    adj: &[Vec<bool>],
    h_adj: &[Vec<bool>],
    map: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut dyn FnMut(&[usize]),
) {
    let a = map.len();
    if a == h_adj.len() {
        found(map);
        return;
    }
    for v in 0..adj.len() {
        if used[v] || !(0..a).all(|b| !h_adj[a][b] || adj[v][map[b]]) {
            continue;
        }
        used[v] = true;
        map.push(v);
        extend(adj, h_adj, map, used, found);
        map.pop();
        used[v] = false;
    }
}
