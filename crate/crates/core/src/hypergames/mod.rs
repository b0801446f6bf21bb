//! General hypergraph games and their reductions to box games.
//!
//! * [`matching`]: Enforcer wins on any hypergraph with a large enough
//!   matching of small edges, by playing the box game on the matching.
//! * [`hgame`]: the board of the H-game on a graph G.
//! * [`isolate`]: Avoider isolates a vertex by playing BoxEnforcer on the
//!   stars of an independent set.
//! * [`game`]: an element-level referee and an exhaustive checker.

pub mod game;
pub mod hgame;
pub mod isolate;
pub mod matching;

use std::fmt;

use thiserror::Error;

pub use game::{
    hyper_best_response, play_hyper_match, HyperOutcome, HyperState, HyperStrategy, HyperVerdict,
    HyperViolation, Objective, Owner, RandomHyperPlayer, SpreadEnforcer,
};
pub use hgame::h_game_board;
pub use isolate::{
    greedy_independent_set, isolation_hypothesis, random_bounded_degree_graph,
    IsolateVertexAvoider,
};
pub use matching::{find_matching, MatchingEnforcer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("element {element} of edge {edge} is outside 0..{ground}")]
    OutOfRange {
        edge: usize,
        element: usize,
        ground: usize,
    },
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
}

/// Ground set `0..ground_size` with a family of target sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    ground_size: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Edges are stored sorted and without repeated elements.
    pub fn new(ground_size: usize, edges: Vec<Vec<usize>>) -> Result<Hypergraph, BoardError> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(BoardError::EmptyEdge(i));
            }
            e.sort_unstable();
            e.dedup();
            if let Some(&bad) = e.iter().find(|&&x| x >= ground_size) {
                return Err(BoardError::OutOfRange {
                    edge: i,
                    element: bad,
                    ground: ground_size,
                });
            }
            out.push(e);
        }
        Ok(Hypergraph {
            ground_size,
            edges: out,
        })
    }

    /// Disjoint boxes of the given sizes, numbered consecutively.
    pub fn from_boxes(sizes: &[u32]) -> Hypergraph {
        let mut next = 0;
        let edges = sizes
            .iter()
            .map(|&s| {
                let e: Vec<usize> = (next..next + s as usize).collect();
                next += s as usize;
                e
            })
            .collect();
        Hypergraph {
            ground_size: next,
            edges,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `m <ground_size>` followed by one line of element ids per edge.
    pub fn parse(text: &str) -> Result<Hypergraph, BoardError> {
        let mut lines = content_lines(text);
        let (line, header) = lines.next().ok_or(BoardError::Parse {
            line: 1,
            reason: "missing `m <ground_size>` header".into(),
        })?;
        let ground = parse_header(line, header, "m")?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let e = l
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| BoardError::Parse {
                    line,
                    reason: e.to_string(),
                })?;
            edges.push(e);
        }
        Hypergraph::new(ground, edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m {}", self.ground_size)?;
        for e in &self.edges {
            let ids: Vec<String> = e.iter().map(usize::to_string).collect();
            writeln!(f, "{}", ids.join(" "))?;
        }
        Ok(())
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    /// Edges are normalized to `(min, max)`; order is preserved.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<GraphSpec, BoardError> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (i, (u, v)) in edges.into_iter().enumerate() {
            if u == v {
                return Err(BoardError::Loop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if b >= n {
                return Err(BoardError::OutOfRange {
                    edge: i,
                    element: b,
                    ground: n,
                });
            }
            if !seen.insert((a, b)) {
                return Err(BoardError::DuplicateEdge(a, b));
            }
            out.push((a, b));
        }
        Ok(GraphSpec { n, edges: out })
    }

    pub fn complete(n: usize) -> GraphSpec {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        GraphSpec { n, edges }
    }

    pub fn cycle(n: usize) -> GraphSpec {
        let edges = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        GraphSpec::new(n, edges).expect("cycle on n >= 3 vertices")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// Edge indices incident to each vertex.
    pub fn stars(&self) -> Vec<Vec<usize>> {
        let mut stars = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            stars[u].push(i);
            stars[v].push(i);
        }
        stars
    }

    pub fn max_degree(&self) -> usize {
        self.stars().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `n <vertices>` followed by one `u v` pair per line.
    pub fn parse(text: &str) -> Result<GraphSpec, BoardError> {
        let mut lines = content_lines(text);
        let (line, header) = lines.next().ok_or(BoardError::Parse {
            line: 1,
            reason: "missing `n <vertices>` header".into(),
        })?;
        let n = parse_header(line, header, "n")?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let ids = l
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| BoardError::Parse {
                    line,
                    reason: e.to_string(),
                })?;
            let [u, v] = ids[..] else {
                return Err(BoardError::Parse {
                    line,
                    reason: format!("expected `u v`, got `{l}`"),
                });
            };
            edges.push((u, v));
        }
        GraphSpec::new(n, edges)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, text: &str, tag: &str) -> Result<usize, BoardError> {
    let bad = || BoardError::Parse {
        line,
        reason: format!("expected `{tag} <count>`, got `{text}`"),
    };
    match text.split_whitespace().collect::<Vec<_>>()[..] {
        [t, v] if t == tag => v.parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypergraph_file_round_trip() {
        let h = Hypergraph::parse("m 6\n# comment\n1 2\n3 2\n4 5\n").unwrap();
        assert_eq!(h.edges(), &[vec![1, 2], vec![2, 3], vec![4, 5]]);
        assert_eq!(Hypergraph::parse(&h.to_string()).unwrap(), h);
        assert!(matches!(
            Hypergraph::parse("m 3\n0 3\n"),
            Err(BoardError::OutOfRange { .. })
        ));
        assert!(Hypergraph::parse("x 3\n").is_err());
    }

    #[test]
    fn graph_file_round_trip() {
        let g = GraphSpec::parse("n 3\n0 1\n2 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(GraphSpec::parse(&g.to_string()).unwrap(), g);
        assert_eq!(GraphSpec::parse("n 3\n1 1\n"), Err(BoardError::Loop(1)));
        assert_eq!(
            GraphSpec::parse("n 3\n0 1\n1 0\n"),
            Err(BoardError::DuplicateEdge(0, 1))
        );
        assert!(GraphSpec::parse("n 3\n0 1 2\n").is_err());
    }

    #[test]
    fn graph_helpers() {
        assert_eq!(GraphSpec::complete(4).edges().len(), 6);
        assert_eq!(GraphSpec::cycle(5).max_degree(), 2);
        let boxes = Hypergraph::from_boxes(&[2, 3]);
        assert_eq!(boxes.ground_size(), 5);
        assert_eq!(boxes.edges()[1], vec![2, 3, 4]);
    }
}
