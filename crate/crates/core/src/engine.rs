//! Referee for strict and monotone `(p, q)` Avoider-Enforcer games played on
//! disjoint boxes.
//!
//! A [`Position`] is an immutable value. Boxes are kept sorted by
//! `(remaining, touched_by_enforcer, id)` after every move, so two positions
//! that differ only by a relabelling of boxes list the same
//! `(remaining, touched)` sequence. Strategies address boxes by their index in
//! that order and never look at ids, which is what lets the solver memoize
//! stateful strategies on the canonical key.

use std::fmt;

use thiserror::Error;

/// One of the two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Avoider,
    Enforcer,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Avoider => Side::Enforcer,
            Side::Enforcer => Side::Avoider,
        }
    }

    /// Single-letter tag used by the cache and key serializations.
    pub fn letter(self) -> char {
        match self {
            Side::Avoider => 'A',
            Side::Enforcer => 'E',
        }
    }

    pub fn from_letter(c: char) -> Option<Side> {
        match c {
            'A' => Some(Side::Avoider),
            'E' => Some(Side::Enforcer),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Avoider => "Avoider",
            Side::Enforcer => "Enforcer",
        })
    }
}

/// Claim counts per move: Avoider claims `p`, Enforcer claims `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bias {
    p: u32,
    q: u32,
}

impl Bias {
    pub fn new(p: u32, q: u32) -> Result<Bias, EngineError> {
        if p == 0 || q == 0 {
            return Err(EngineError::InvalidBias { p, q });
        }
        Ok(Bias { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Per-move claim count for `side`.
    pub fn of(&self, side: Side) -> u32 {
        match side {
            Side::Avoider => self.p,
            Side::Enforcer => self.q,
        }
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Strict rules fix the move size; monotone rules only bound it from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rules {
    Strict,
    Monotone,
}

impl fmt::Display for Rules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rules::Strict => "strict",
            Rules::Monotone => "monotone",
        })
    }
}

impl std::str::FromStr for Rules {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Rules::Strict),
            "monotone" => Ok(Rules::Monotone),
            other => Err(format!("unknown rule set `{other}`")),
        }
    }
}

/// A surviving box.
///
/// A box with `remaining == 0` that Enforcer never touched has been fully
/// claimed by Avoider and witnesses his loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxState {
    /// Label of the box in the initial position. Only used for reporting.
    pub id: u32,
    pub remaining: u32,
    pub touched_by_enforcer: bool,
}

impl BoxState {
    pub fn is_dangerous(&self) -> bool {
        !self.touched_by_enforcer && self.remaining > 0
    }

    pub fn is_safe(&self) -> bool {
        self.touched_by_enforcer && self.remaining > 0
    }

    fn sort_key(&self) -> (u32, bool, u32) {
        (self.remaining, self.touched_by_enforcer, self.id)
    }
}

/// A claim plan for one physical move: `(box index, count)` pairs, where the
/// index refers to the position the move is played in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Move {
    pub claims: Vec<(usize, u32)>,
}

impl Move {
    pub fn new(claims: Vec<(usize, u32)>) -> Move {
        Move { claims }
    }

    /// Builds a move from a dense per-box count vector, skipping zeros.
    pub fn from_counts(counts: &[u32]) -> Move {
        Move {
            claims: counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        }
    }

    pub fn total(&self) -> u32 {
        self.claims.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.claims.is_empty()
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .claims
            .iter()
            .map(|(i, c)| format!("{c}@{i}"))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("a game needs at least one box")]
    NoBoxes,
    #[error("box sizes must be positive")]
    ZeroSizedBox,
    #[error("bias components must be positive, got p={p}, q={q}")]
    InvalidBias { p: u32, q: u32 },
}

/// Why a move was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("the game is already over")]
    GameOver,
    #[error("box index {index} is out of range")]
    BoxOutOfRange { index: usize },
    #[error("box {index} has no unclaimed elements")]
    DeadBox { index: usize },
    #[error("claim on box {index} is zero")]
    ZeroClaim { index: usize },
    #[error("claim of {requested} on box {index} exceeds its {remaining} remaining elements")]
    Overclaim {
        index: usize,
        requested: u32,
        remaining: u32,
    },
    #[error("box {index} appears more than once in the move")]
    DuplicateBox { index: usize },
    #[error("{rules} move must claim {expected} elements, claimed {got}")]
    WrongTotal {
        rules: Rules,
        expected: String,
        got: u32,
    },
}

/// Full game state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    boxes: Vec<BoxState>,
    bias: Bias,
    rules: Rules,
    to_move: Side,
    avoider_lost: bool,
}

/// Creates the initial position of `mBox(sizes, bias)` under `rules`.
pub fn new_game(
    sizes: &[u32],
    bias: Bias,
    rules: Rules,
    first: Side,
) -> Result<Position, EngineError> {
    if sizes.is_empty() {
        return Err(EngineError::NoBoxes);
    }
    if sizes.contains(&0) {
        return Err(EngineError::ZeroSizedBox);
    }
    let boxes = sizes
        .iter()
        .enumerate()
        .map(|(i, &remaining)| BoxState {
            id: i as u32,
            remaining,
            touched_by_enforcer: false,
        })
        .collect();
    Ok(Position::from_boxes(boxes, bias, rules, first))
}

/// The uniform game `mBox(n × k, bias)`.
pub fn uniform_game(
    n: u32,
    k: u32,
    bias: Bias,
    rules: Rules,
    first: Side,
) -> Result<Position, EngineError> {
    new_game(&vec![k; n as usize], bias, rules, first)
}

impl Position {
    /// Assembles a position from explicit box states, e.g. a box game derived
    /// from a general hypergraph game. Dead safe boxes are dropped and the
    /// loss flag is derived from the boxes.
    pub fn from_boxes(boxes: Vec<BoxState>, bias: Bias, rules: Rules, to_move: Side) -> Position {
        let mut pos = Position {
            boxes,
            bias,
            rules,
            to_move,
            avoider_lost: false,
        };
        pos.normalize();
        pos
    }

    fn normalize(&mut self) {
        self.boxes
            .retain(|b| b.remaining > 0 || !b.touched_by_enforcer);
        self.boxes.sort_by_key(BoxState::sort_key);
        self.avoider_lost = self
            .boxes
            .iter()
            .any(|b| b.remaining == 0 && !b.touched_by_enforcer);
    }

    pub fn boxes(&self) -> &[BoxState] {
        &self.boxes
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

    pub fn avoider_lost(&self) -> bool {
        self.avoider_lost
    }

    /// Id of the lowest-labelled box Avoider has fully claimed, if any.
    pub fn losing_box(&self) -> Option<u32> {
        self.boxes
            .iter()
            .filter(|b| b.remaining == 0 && !b.touched_by_enforcer)
            .map(|b| b.id)
            .min()
    }

    pub fn total_remaining(&self) -> u32 {
        self.boxes.iter().map(|b| b.remaining).sum()
    }

    pub fn safe_elements(&self) -> u32 {
        self.boxes
            .iter()
            .filter(|b| b.touched_by_enforcer)
            .map(|b| b.remaining)
            .sum()
    }

    pub fn dangerous_count(&self) -> usize {
        self.boxes.iter().filter(|b| b.is_dangerous()).count()
    }

    pub fn largest_box(&self) -> u32 {
        self.boxes.iter().map(|b| b.remaining).max().unwrap_or(0)
    }

    pub fn is_over(&self) -> bool {
        self.avoider_lost || self.total_remaining() == 0
    }

    /// Winner of a finished game.
    pub fn winner(&self) -> Option<Side> {
        if self.avoider_lost {
            Some(Side::Enforcer)
        } else if self.total_remaining() == 0 {
            Some(Side::Avoider)
        } else {
            None
        }
    }

    /// Minimum number of elements the player to move must claim.
    pub fn required_claims(&self) -> u32 {
        self.bias.of(self.to_move).min(self.total_remaining())
    }

    /// Same position with a different player to move.
    pub fn with_to_move(&self, side: Side) -> Position {
        Position {
            to_move: side,
            ..self.clone()
        }
    }

    pub fn validate_move(&self, mv: &Move) -> Result<(), Violation> {
        if self.is_over() {
            return Err(Violation::GameOver);
        }
        self.check_claims(mv)?;
        let total = mv.total();
        let required = self.required_claims();
        let ok = match self.rules {
            Rules::Strict => total == required,
            Rules::Monotone => total >= required,
        };
        if !ok {
            let expected = match self.rules {
                Rules::Strict => format!("exactly {required}"),
                Rules::Monotone => format!("at least {required}"),
            };
            return Err(Violation::WrongTotal {
                rules: self.rules,
                expected,
                got: total,
            });
        }
        Ok(())
    }

    fn check_claims(&self, mv: &Move) -> Result<(), Violation> {
        let mut seen = vec![false; self.boxes.len()];
        for &(index, count) in &mv.claims {
            let b = self
                .boxes
                .get(index)
                .ok_or(Violation::BoxOutOfRange { index })?;
            if seen[index] {
                return Err(Violation::DuplicateBox { index });
            }
            seen[index] = true;
            if b.remaining == 0 {
                return Err(Violation::DeadBox { index });
            }
            if count == 0 {
                return Err(Violation::ZeroClaim { index });
            }
            if count > b.remaining {
                return Err(Violation::Overclaim {
                    index,
                    requested: count,
                    remaining: b.remaining,
                });
            }
        }
        Ok(())
    }

    pub fn apply_move(&self, mv: &Move) -> Result<Position, Violation> {
        self.validate_move(mv)?;
        Ok(self.apply_unchecked(mv))
    }

    /// Applies per-box claims without checking the move total. Used for the
    /// truncated first moves that robustness arguments allow Enforcer.
    pub fn apply_partial(&self, mv: &Move) -> Result<Position, Violation> {
        if self.is_over() {
            return Err(Violation::GameOver);
        }
        self.check_claims(mv)?;
        Ok(self.apply_unchecked(mv))
    }

    fn apply_unchecked(&self, mv: &Move) -> Position {
        let mover = self.to_move;
        let mut boxes = self.boxes.clone();
        for &(index, count) in &mv.claims {
            let b = &mut boxes[index];
            b.remaining -= count;
            if mover == Side::Enforcer {
                b.touched_by_enforcer = true;
            }
        }
        Position::from_boxes(boxes, self.bias, self.rules, mover.other())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let boxes: Vec<String> = self
            .boxes
            .iter()
            .map(|b| format!("{}{}", b.remaining, if b.touched_by_enforcer { 's' } else { 'd' }))
            .collect();
        write!(
            f,
            "{} {} {} to move: [{}]",
            self.rules,
            self.bias,
            self.to_move,
            boxes.join(" ")
        )
    }
}

/// Signal raised by a strategy that cannot follow its own prescription.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("forfeit: {0}")]
pub struct Forfeit(pub String);

impl Forfeit {
    pub fn new(reason: impl Into<String>) -> Forfeit {
        Forfeit(reason.into())
    }
}

/// A deterministic player.
///
/// Implementations carry their own persistent memory. `memory_key` must
/// serialize every piece of that memory that can influence future moves: the
/// solver appends it to the position key when searching against a fixed
/// strategy.
pub trait Strategy: Send {
    fn name(&self) -> &str;

    /// Called once with the initial position before any move is made.
    fn start(&mut self, _initial: &Position) -> Result<(), Forfeit> {
        Ok(())
    }

    fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit>;

    fn memory_key(&self) -> String {
        String::new()
    }

    fn box_clone(&self) -> Box<dyn Strategy>;
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// Outcome of a refereed match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub winner: Side,
    /// Id of the box Avoider completed, present iff he lost on the board.
    pub losing_box: Option<u32>,
    /// Player who forfeited and why, if the match ended that way.
    pub forfeit: Option<(Side, String)>,
    pub transcript: Vec<(Side, Move)>,
    /// Position before each move, plus the final position.
    pub positions: Vec<Position>,
}

/// Plays `pos` out between two strategies. A strategy that forfeits or
/// returns an illegal move loses the match.
pub fn play_match(
    pos: &Position,
    avoider: &mut dyn Strategy,
    enforcer: &mut dyn Strategy,
) -> Verdict {
    let mut positions = vec![pos.clone()];
    let mut transcript = Vec::new();
    let forfeit_verdict = |side: Side, reason: String, transcript, positions| Verdict {
        winner: side.other(),
        losing_box: None,
        forfeit: Some((side, reason)),
        transcript,
        positions,
    };
    if let Err(f) = avoider.start(pos) {
        return forfeit_verdict(Side::Avoider, f.0, transcript, positions);
    }
    if let Err(f) = enforcer.start(pos) {
        return forfeit_verdict(Side::Enforcer, f.0, transcript, positions);
    }
    let mut current = pos.clone();
    while !current.is_over() {
        let side = current.to_move();
        let strategy: &mut dyn Strategy = match side {
            Side::Avoider => &mut *avoider,
            Side::Enforcer => &mut *enforcer,
        };
        let mv = match strategy.next_move(&current) {
            Ok(mv) => mv,
            Err(f) => return forfeit_verdict(side, f.0, transcript, positions),
        };
        match current.apply_move(&mv) {
            Ok(next) => {
                transcript.push((side, mv));
                positions.push(next.clone());
                current = next;
            }
            Err(v) => {
                return forfeit_verdict(side, format!("illegal move {mv}: {v}"), transcript, positions)
            }
        }
    }
    Verdict {
        winner: current.winner().expect("finished game has a winner"),
        losing_box: current.losing_box(),
        forfeit: None,
        transcript,
        positions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bias(p: u32, q: u32) -> Bias {
        Bias::new(p, q).unwrap()
    }

    fn sizes(pos: &Position) -> Vec<(u32, bool)> {
        pos.boxes()
            .iter()
            .map(|b| (b.remaining, b.touched_by_enforcer))
            .collect()
    }

    #[test]
    fn new_game_sorts_and_marks_dangerous() {
        let pos = new_game(&[3, 1, 2], bias(1, 1), Rules::Strict, Side::Avoider).unwrap();
        assert_eq!(sizes(&pos), vec![(1, false), (2, false), (3, false)]);
        assert_eq!(pos.to_move(), Side::Avoider);
        assert!(!pos.avoider_lost());
        let ids: Vec<u32> = pos.boxes().iter().map(|b| b.id).collect();
        assert_eq!(ids, vec![1, 2, 0]);

        let pos = new_game(&[2, 2], bias(1, 1), Rules::Strict, Side::Avoider).unwrap();
        assert_eq!(sizes(&pos), vec![(2, false), (2, false)]);
        let pos = new_game(&[1], bias(1, 1), Rules::Strict, Side::Avoider).unwrap();
        assert_eq!(sizes(&pos), vec![(1, false)]);
    }

    #[test]
    fn new_game_rejects_bad_input() {
        assert_eq!(
            new_game(&[], bias(1, 1), Rules::Strict, Side::Avoider),
            Err(EngineError::NoBoxes)
        );
        assert_eq!(
            new_game(&[2, 0], bias(1, 1), Rules::Strict, Side::Avoider),
            Err(EngineError::ZeroSizedBox)
        );
        assert!(Bias::new(0, 1).is_err());
        assert!(Bias::new(1, 0).is_err());
    }

    #[test]
    fn strict_last_move_rule() {
        let pos = new_game(&[1], bias(2, 1), Rules::Strict, Side::Avoider).unwrap();
        assert_eq!(pos.validate_move(&Move::new(vec![(0, 1)])), Ok(()));

        let pos = new_game(&[2, 2], bias(1, 1), Rules::Strict, Side::Avoider).unwrap();
        assert!(matches!(
            pos.validate_move(&Move::new(vec![(0, 1), (1, 1)])),
            Err(Violation::WrongTotal { got: 2, .. })
        ));
    }

    #[test]
    fn monotone_allows_larger_moves() {
        let pos = new_game(&[2, 2, 3], bias(1, 2), Rules::Monotone, Side::Enforcer).unwrap();
        assert_eq!(
            pos.validate_move(&Move::new(vec![(0, 2), (1, 1), (2, 2)])),
            Ok(())
        );
        assert!(pos.validate_move(&Move::new(vec![(0, 1)])).is_err());
    }

    #[test]
    fn claim_errors() {
        let pos = new_game(&[2, 2], bias(2, 2), Rules::Strict, Side::Avoider).unwrap();
        assert_eq!(
            pos.validate_move(&Move::new(vec![(0, 1), (0, 1)])),
            Err(Violation::DuplicateBox { index: 0 })
        );
        assert_eq!(
            pos.validate_move(&Move::new(vec![(5, 2)])),
            Err(Violation::BoxOutOfRange { index: 5 })
        );
        assert!(matches!(
            pos.validate_move(&Move::new(vec![(0, 3)])),
            Err(Violation::Overclaim { .. })
        ));
        assert_eq!(
            pos.validate_move(&Move::new(vec![(0, 0), (1, 2)])),
            Err(Violation::ZeroClaim { index: 0 })
        );
    }

    #[test]
    fn avoider_completing_a_dangerous_box_loses() {
        let pos = new_game(&[2, 2], bias(2, 1), Rules::Strict, Side::Avoider).unwrap();
        let next = pos.apply_move(&Move::new(vec![(0, 2)])).unwrap();
        assert!(next.avoider_lost());
        assert_eq!(next.losing_box(), Some(0));
        assert_eq!(next.winner(), Some(Side::Enforcer));
        assert_eq!(
            next.validate_move(&Move::new(vec![(1, 1)])),
            Err(Violation::GameOver)
        );
    }

    #[test]
    fn enforcer_touch_makes_box_safe() {
        let pos = new_game(&[2], bias(1, 1), Rules::Strict, Side::Enforcer).unwrap();
        let next = pos.apply_move(&Move::new(vec![(0, 1)])).unwrap();
        assert_eq!(sizes(&next), vec![(1, true)]);
        assert_eq!(next.to_move(), Side::Avoider);
    }

    #[test]
    fn avoider_emptying_a_safe_box_is_harmless() {
        let boxes = vec![
            BoxState { id: 0, remaining: 1, touched_by_enforcer: false },
            BoxState { id: 1, remaining: 1, touched_by_enforcer: true },
        ];
        let pos = Position::from_boxes(boxes, bias(1, 1), Rules::Strict, Side::Avoider);
        assert_eq!(sizes(&pos), vec![(1, false), (1, true)]);
        let next = pos.apply_move(&Move::new(vec![(1, 1)])).unwrap();
        assert!(!next.avoider_lost());
        assert_eq!(sizes(&next), vec![(1, false)]);
    }

    #[test]
    fn partial_moves_skip_the_total_check() {
        let pos = new_game(&[2, 2], bias(1, 2), Rules::Strict, Side::Enforcer).unwrap();
        let next = pos.apply_partial(&Move::default()).unwrap();
        assert_eq!(next.to_move(), Side::Avoider);
        assert!(pos.apply_move(&Move::default()).is_err());
    }

    #[derive(Clone)]
    struct FirstBox;

    impl Strategy for FirstBox {
        fn name(&self) -> &str {
            "first-box"
        }
        fn next_move(&mut self, pos: &Position) -> Result<Move, Forfeit> {
            let mut need = pos.required_claims();
            let mut claims = Vec::new();
            for (i, b) in pos.boxes().iter().enumerate() {
                if need == 0 {
                    break;
                }
                let c = b.remaining.min(need);
                if c > 0 {
                    claims.push((i, c));
                    need -= c;
                }
            }
            Ok(Move::new(claims))
        }
        fn box_clone(&self) -> Box<dyn Strategy> {
            Box::new(self.clone())
        }
    }

    #[derive(Clone)]
    struct Cheater;

    impl Strategy for Cheater {
        fn name(&self) -> &str {
            "cheater"
        }
        fn next_move(&mut self, _pos: &Position) -> Result<Move, Forfeit> {
            Ok(Move::new(vec![(0, 100)]))
        }
        fn box_clone(&self) -> Box<dyn Strategy> {
            Box::new(self.clone())
        }
    }

    #[test]
    fn play_match_records_transcript_and_loss() {
        let pos = new_game(&[1, 3], bias(1, 1), Rules::Strict, Side::Avoider).unwrap();
        let v = play_match(&pos, &mut FirstBox, &mut FirstBox);
        assert_eq!(v.winner, Side::Enforcer);
        assert_eq!(v.losing_box, Some(0));
        assert_eq!(v.transcript.len(), 1);
        assert_eq!(v.positions.len(), 2);
    }

    #[test]
    fn illegal_move_is_a_forfeit() {
        let pos = new_game(&[2, 2], bias(1, 1), Rules::Strict, Side::Avoider).unwrap();
        let v = play_match(&pos, &mut Cheater, &mut FirstBox);
        assert_eq!(v.winner, Side::Enforcer);
        assert_eq!(v.forfeit.as_ref().map(|f| f.0), Some(Side::Avoider));
        let v = play_match(&pos, &mut FirstBox, &mut Cheater);
        assert_eq!(v.winner, Side::Avoider);
    }
}
