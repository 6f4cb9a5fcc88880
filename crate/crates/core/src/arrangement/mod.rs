//! Arrangements of pieces on a 2-sphere.
//!
//! A piece is a compact planar surface; each boundary circle bounds a disk on
//! the far side from its piece. The sphere picture is stored as a rooted tree:
//! the root piece lists all of its boundary circles, every other piece lists
//! only its inner circles (its outer circle faces its parent), and each circle
//! holds the multiset of pieces lying directly inside it.
//!
//! Text form: root piece `{ C* }`, non-root piece `( C* )`, circle
//! `[ piece* ]`. Whitespace is ignored.

mod canonical;
mod config;
mod deconstruct;
mod enumerate;
mod extremal;
mod moves;
mod parse;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Rational;

pub use canonical::{canonical_form, rooted_form};
pub use config::{
    absorb, parity_check, random_configuration, Absorbed, ConfigCircle, ConfigError, ConfigPiece, ParityViolation,
    PieceConfiguration, Side,
};
pub use deconstruct::deconstruct;
pub use enumerate::{enumerate, successors, Enumeration, DEFAULT_MAX_SET};
pub use extremal::{extremal_arrangement, extremal_formula, extremal_sequence, extremal_trace};
pub use moves::{random_build, Move, MoveTrace};
pub use parse::{parse_arrangement, parse_configuration};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Piece {
    pub circles: Vec<Circle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Circle {
    pub children: Vec<Piece>,
}

impl Piece {
    pub fn disk() -> Self {
        Piece::default()
    }

    /// A non-root piece with `inner` circles, each holding one disk.
    pub fn with_disks(inner: usize) -> Self {
        Piece {
            circles: (0..inner).map(|_| Circle::with(alloc::vec![Piece::disk()])).collect(),
        }
    }

    pub fn boundary_count(&self, is_root: bool) -> usize {
        self.circles.len() + usize::from(!is_root)
    }

    fn count(&self) -> usize {
        1 + self
            .circles
            .iter()
            .flat_map(|c| &c.children)
            .map(Piece::count)
            .sum::<usize>()
    }
}

impl Circle {
    pub fn with(children: Vec<Piece>) -> Self {
        Circle { children }
    }
}

/// Location of a piece: `(circle, child)` steps from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PiecePath(pub Vec<(usize, usize)>);

impl PiecePath {
    pub fn root() -> Self {
        PiecePath(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, circle: usize, child: usize) -> Self {
        let mut steps = self.0.clone();
        steps.push((circle, child));
        PiecePath(steps)
    }

    pub fn circle(&self, circle: usize) -> CirclePath {
        CirclePath {
            piece: self.clone(),
            circle,
        }
    }
}

impl fmt::Display for PiecePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for (c, p) in &self.0 {
            write!(f, "/{c}:{p}")?;
        }
        Ok(())
    }
}

/// A boundary circle: the `circle`-th listed circle of a piece.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePath {
    pub piece: PiecePath,
    pub circle: usize,
}

impl fmt::Display for CirclePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.piece, self.circle)
    }
}

/// The odd threshold `a` of the generalized boundary condition: every piece
/// has at most `a` or at least `a + 2` boundary circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Threshold(u32);

impl Threshold {
    pub const ONE: Threshold = Threshold(1);

    pub fn new(a: u32) -> Result<Self, ArrangementError> {
        if a % 2 == 1 {
            Ok(Threshold(a))
        } else {
            Err(ArrangementError::Threshold(a))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Boundary counts allowed for a piece: at least 1 and not `a + 1`.
    pub fn admits(self, boundaries: usize) -> bool {
        boundaries >= 1 && boundaries != self.get() + 1
    }

    /// `a / (a + 1)`.
    pub fn bound(self) -> Rational {
        Rational::new(self.0 as i64, self.0 as i64 + 1)
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold::ONE
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Boundary count is neither `<= a` nor `>= a + 2` (or is zero).
    BoundaryCount,
    /// A circle whose disk holds no piece.
    EmptyCircle,
    /// An innermost circle without a disk piece inside.
    InnermostDisk,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub threshold: Threshold,
    pub piece: PiecePath,
    pub circle: Option<usize>,
    pub boundaries: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.condition {
            Condition::BoundaryCount => {
                let label = if self.threshold == Threshold::ONE { "(1)" } else { "(1)'" };
                write!(
                    f,
                    "condition {label}: piece {} has {} boundary circles (a={})",
                    self.piece, self.boundaries, self.threshold
                )
            }
            Condition::EmptyCircle => write!(
                f,
                "condition (2)(i): circle {}@{} contains no piece",
                self.piece,
                self.circle.unwrap_or(0)
            ),
            Condition::InnermostDisk => write!(
                f,
                "condition (2)(ii): innermost circle {}@{} contains no disk",
                self.piece,
                self.circle.unwrap_or(0)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    Syntax { offset: usize, message: String },
    Threshold(u32),
    Invalid(Vec<Violation>),
    NoSuchPiece(PiecePath),
    NoSuchCircle(CirclePath),
    NotADisk(PiecePath),
    /// Move-2 boundary count forbidden for the threshold (`0` or `a + 1`).
    Boundaries { boundaries: usize, threshold: Threshold },
    /// Reverse Move-1 would leave a circle empty.
    LastPiece(CirclePath),
    /// Reverse Move-2 needs exactly one disk in every removed circle.
    NotDeflatable(PiecePath),
    BoundaryMismatch { piece: PiecePath, expected: usize, found: usize },
    Budget { cap: usize },
    PieceBudget { pieces: usize },
    /// Deconstruction failed to make progress; an internal invariant broke.
    Stuck { steps: usize },
}

impl fmt::Display for ArrangementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementError::Syntax { offset, message } => {
                write!(f, "syntax error at offset {offset}: {message}")
            }
            ArrangementError::Threshold(a) => write!(f, "threshold a={a} must be odd and positive"),
            ArrangementError::Invalid(vs) => {
                write!(f, "not an arrangement:")?;
                for v in vs {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            ArrangementError::NoSuchPiece(p) => write!(f, "no piece at {p}"),
            ArrangementError::NoSuchCircle(c) => write!(f, "no circle at {c}"),
            ArrangementError::NotADisk(p) => write!(f, "piece {p} is not a disk"),
            ArrangementError::Boundaries {
                boundaries,
                threshold,
            } => write!(
                f,
                "move 2 with s={boundaries} is not allowed for a={threshold} (need 1 <= s != a+1)"
            ),
            ArrangementError::LastPiece(c) => {
                write!(f, "removing the disk would leave circle {c} empty")
            }
            ArrangementError::NotDeflatable(p) => write!(
                f,
                "piece {p} cannot be reversed: each removed circle must hold exactly one disk"
            ),
            ArrangementError::BoundaryMismatch {
                piece,
                expected,
                found,
            } => write!(f, "piece {piece} has {found} boundaries, move expects {expected}"),
            ArrangementError::Budget { cap } => {
                write!(f, "enumeration exceeded the set-size cap of {cap}")
            }
            ArrangementError::PieceBudget { pieces } => {
                write!(f, "piece budget must be at least 2, got {pieces}")
            }
            ArrangementError::Stuck { steps } => {
                write!(f, "deconstruction stalled after {steps} steps (internal invariant)")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ArrangementError {}

/// An arrangement candidate: a rooted tree of pieces and circles. Validity
/// is checked separately with [`Arrangement::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    root: Piece,
}

impl Arrangement {
    pub fn new(root: Piece) -> Self {
        Arrangement { root }
    }

    /// The root disk with one disk inside its circle.
    pub fn two_disks() -> Self {
        Arrangement {
            root: Piece {
                circles: alloc::vec![Circle::with(alloc::vec![Piece::disk()])],
            },
        }
    }

    pub fn root(&self) -> &Piece {
        &self.root
    }

    pub fn root_mut(&mut self) -> &mut Piece {
        &mut self.root
    }

    pub fn piece(&self, path: &PiecePath) -> Option<&Piece> {
        path.0.iter().try_fold(&self.root, |p, &(c, k)| p.circles.get(c)?.children.get(k))
    }

    pub(crate) fn piece_mut(&mut self, path: &PiecePath) -> Option<&mut Piece> {
        path.0
            .iter()
            .try_fold(&mut self.root, |p, &(c, k)| p.circles.get_mut(c)?.children.get_mut(k))
    }

    /// Every piece with its path and boundary count, in pre-order.
    pub fn pieces(&self) -> Vec<(PiecePath, usize)> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![(PiecePath::root(), &self.root)];
        while let Some((path, piece)) = stack.pop() {
            out.push((path.clone(), piece.boundary_count(path.is_root())));
            for (c, circle) in piece.circles.iter().enumerate().rev() {
                for (k, child) in circle.children.iter().enumerate().rev() {
                    stack.push((path.child(c, k), child));
                }
            }
        }
        out
    }

    pub fn circles(&self) -> Vec<CirclePath> {
        let mut out = Vec::new();
        for (path, _) in self.pieces() {
            let piece = self.piece(&path).expect("listed piece");
            out.extend((0..piece.circles.len()).map(|c| path.circle(c)));
        }
        out
    }

    pub fn piece_count(&self) -> usize {
        self.root.count()
    }

    /// Pieces with at most `a` boundary circles; for `a = 1` the disks.
    pub fn lambda_count(&self, a: Threshold) -> usize {
        self.boundary_counts().filter(|&s| s <= a.get()).count()
    }

    /// Boundary counts of all pieces, root first.
    pub fn boundary_counts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut stack = alloc::vec![(true, &self.root)];
        core::iter::from_fn(move || {
            let (is_root, piece) = stack.pop()?;
            stack.extend(piece.circles.iter().flat_map(|c| &c.children).map(|p| (false, p)));
            Some(piece.boundary_count(is_root))
        })
    }

    /// Checks the boundary-count condition for `a` and both disk conditions;
    /// returns every violation found.
    pub fn validate(&self, a: Threshold) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        let mut stack = alloc::vec![(PiecePath::root(), &self.root)];
        while let Some((path, piece)) = stack.pop() {
            let s = piece.boundary_count(path.is_root());
            if !a.admits(s) {
                violations.push(Violation {
                    condition: Condition::BoundaryCount,
                    threshold: a,
                    piece: path.clone(),
                    circle: None,
                    boundaries: s,
                });
            }
            for (c, circle) in piece.circles.iter().enumerate() {
                if circle.children.is_empty() {
                    violations.push(Violation {
                        condition: Condition::EmptyCircle,
                        threshold: a,
                        piece: path.clone(),
                        circle: Some(c),
                        boundaries: s,
                    });
                }
                // innermost: no other circle inside this one
                let innermost = circle.children.iter().all(|p| p.circles.is_empty());
                let has_disk = circle.children.iter().any(|p| p.boundary_count(false) == 1);
                if innermost && !has_disk {
                    violations.push(Violation {
                        condition: Condition::InnermostDisk,
                        threshold: a,
                        piece: path.clone(),
                        circle: Some(c),
                        boundaries: s,
                    });
                }
                for (k, child) in circle.children.iter().enumerate() {
                    stack.push((path.child(c, k), child));
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            violations.sort_by(|x, y| (&x.piece, x.circle, x.condition).cmp(&(&y.piece, y.circle, y.condition)));
            Err(violations)
        }
    }

    pub fn is_valid(&self, a: Threshold) -> bool {
        self.validate(a).is_ok()
    }

    pub fn check_lambda_bound(&self, a: Threshold) -> LambdaReport {
        LambdaReport::new(self.lambda_count(a), self.piece_count(), a)
    }

    /// The bracket text form, in stored order.
    pub fn to_bracket(&self) -> String {
        let mut out = String::new();
        write_piece(&mut out, &self.root, true);
        out
    }
}

fn write_piece(out: &mut String, piece: &Piece, is_root: bool) {
    out.push(if is_root { '{' } else { '(' });
    for circle in &piece.circles {
        out.push('[');
        for child in &circle.children {
            write_piece(out, child, false);
        }
        out.push(']');
    }
    out.push(if is_root { '}' } else { ')' });
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bracket())
    }
}

/// Exact comparison of `x / y` against `a / (a + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaReport {
    pub x: usize,
    pub y: usize,
    pub ratio: Rational,
    pub bound: Rational,
    pub pass: bool,
}

impl LambdaReport {
    pub fn new(x: usize, y: usize, a: Threshold) -> Self {
        let ratio = Rational::new(x as i64, y as i64);
        let bound = a.bound();
        LambdaReport {
            x,
            y,
            ratio,
            bound,
            pass: ratio > bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(s: &str) -> Arrangement {
        parse_arrangement(s).unwrap()
    }

    const FIVE: &str = "{ [ () ( [()] [()] ) ] }";

    #[test]
    fn counts() {
        let two = Arrangement::two_disks();
        assert_eq!(two.piece_count(), 2);
        assert_eq!(two.lambda_count(Threshold::ONE), 2);
        let five = arr(FIVE);
        assert_eq!(five.piece_count(), 5);
        assert_eq!(five.lambda_count(Threshold::ONE), 4);
        let mut counts: Vec<usize> = five.boundary_counts().collect();
        counts.sort();
        assert_eq!(counts, [1, 1, 1, 1, 3]);
    }

    #[test]
    fn validation() {
        assert!(Arrangement::two_disks().is_valid(Threshold::ONE));
        assert!(arr(FIVE).is_valid(Threshold::ONE));
        let two_boundary = arr("{ [ ( [()] ) ] }");
        let v = two_boundary.validate(Threshold::ONE).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].condition, Condition::BoundaryCount);
        assert_eq!(v[0].boundaries, 2);
        assert_eq!(v[0].piece, PiecePath(alloc::vec![(0, 0)]));
        // an annulus is fine once a = 3
        assert!(two_boundary.is_valid(Threshold::new(3).unwrap()));
    }

    #[test]
    fn empty_circle_fails_both_disk_conditions() {
        let v = arr("{ [ ] }").validate(Threshold::ONE).unwrap_err();
        let conds: Vec<Condition> = v.iter().map(|v| v.condition).collect();
        assert_eq!(conds, [Condition::EmptyCircle, Condition::InnermostDisk]);
    }

    #[test]
    fn sphere_with_no_boundary_is_rejected() {
        let v = arr("{}").validate(Threshold::ONE).unwrap_err();
        assert_eq!(v[0].condition, Condition::BoundaryCount);
        assert_eq!(v[0].boundaries, 0);
    }

    #[test]
    fn threshold_must_be_odd() {
        assert!(Threshold::new(2).is_err());
        assert!(Threshold::new(0).is_err());
        let a3 = Threshold::new(3).unwrap();
        assert!(a3.admits(2) && a3.admits(3) && !a3.admits(4) && a3.admits(5));
        assert!(!a3.admits(0));
        assert_eq!(a3.bound(), Rational::new(3, 4));
    }

    #[test]
    fn lambda_reports() {
        let r = Arrangement::two_disks().check_lambda_bound(Threshold::ONE);
        assert_eq!((r.ratio, r.pass), (Rational::from_integer(1), true));
        let r = arr(FIVE).check_lambda_bound(Threshold::ONE);
        assert_eq!((r.x, r.y, r.ratio, r.pass), (4, 5, Rational::new(4, 5), true));
        // equality is not a pass
        let eq = LambdaReport::new(1, 2, Threshold::ONE);
        assert!(!eq.pass);
    }

    #[test]
    fn paths() {
        let five = arr(FIVE);
        let p = PiecePath(alloc::vec![(0, 1)]);
        assert_eq!(five.piece(&p).unwrap().circles.len(), 2);
        assert_eq!(p.to_string(), "root/0:1");
        assert_eq!(p.circle(1).to_string(), "root/0:1@1");
        assert!(five.piece(&PiecePath(alloc::vec![(0, 2)])).is_none());
        assert_eq!(five.pieces().len(), 5);
        assert_eq!(five.circles().len(), 3);
        assert_eq!(five.to_bracket(), "{[()([()][()])]}");
    }
}
