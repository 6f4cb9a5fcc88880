//! The two moves that build every arrangement from two disks, their
//! reversals, and traces with the running counters `x` (pieces with at most
//! `a` boundaries) and `y` (all pieces).

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use super::{Arrangement, ArrangementError, Circle, CirclePath, Piece, PiecePath, Threshold};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// Move 1: insert a disk into `circle` at child index `slot`.
    AddDisk { circle: CirclePath, slot: usize },
    /// Move 2: turn the disk at `disk` into a piece with `boundaries`
    /// boundary circles, with one new disk inside each new circle.
    Inflate { disk: PiecePath, boundaries: usize },
    /// Reverse of Move 1: remove the disk at child index `slot`.
    RemoveDisk { circle: CirclePath, slot: usize },
    /// Reverse of Move 2: collapse a piece whose removable circles each hold
    /// exactly one disk. A non-root piece loses all inner circles; the root
    /// keeps its first circle.
    Deflate { piece: PiecePath, boundaries: usize },
}

impl Move {
    pub fn inverse(&self) -> Move {
        match self {
            Move::AddDisk { circle, slot } => Move::RemoveDisk {
                circle: circle.clone(),
                slot: *slot,
            },
            Move::RemoveDisk { circle, slot } => Move::AddDisk {
                circle: circle.clone(),
                slot: *slot,
            },
            Move::Inflate { disk, boundaries } => Move::Deflate {
                piece: disk.clone(),
                boundaries: *boundaries,
            },
            Move::Deflate { piece, boundaries } => Move::Inflate {
                disk: piece.clone(),
                boundaries: *boundaries,
            },
        }
    }

    pub fn is_reversal(&self) -> bool {
        matches!(self, Move::RemoveDisk { .. } | Move::Deflate { .. })
    }

    /// `(dx, dy)`: Move 1 gives `(1, 1)`; Move 2 with `s` boundaries gives
    /// `(s - 1, s - 1)` when `s <= a` and `(s - 2, s - 1)` otherwise.
    /// Reversals negate.
    pub fn delta(&self, a: Threshold) -> (i64, i64) {
        let forward = |s: usize| {
            let s = s as i64;
            if s <= a.get() as i64 {
                (s - 1, s - 1)
            } else {
                (s - 2, s - 1)
            }
        };
        match self {
            Move::AddDisk { .. } => (1, 1),
            Move::RemoveDisk { .. } => (-1, -1),
            Move::Inflate { boundaries, .. } => forward(*boundaries),
            Move::Deflate { boundaries, .. } => {
                let (dx, dy) = forward(*boundaries);
                (-dx, -dy)
            }
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::AddDisk { circle, slot } => write!(f, "add-disk {circle} slot {slot}"),
            Move::Inflate { disk, boundaries } => write!(f, "inflate {disk} s={boundaries}"),
            Move::RemoveDisk { circle, slot } => write!(f, "remove-disk {circle} slot {slot}"),
            Move::Deflate { piece, boundaries } => write!(f, "deflate {piece} s={boundaries}"),
        }
    }
}

impl Arrangement {
    /// Applies `m`, returning the new arrangement. Forward moves keep a valid
    /// arrangement valid, and so do reversals whose preconditions hold.
    pub fn apply_move(&self, m: &Move, a: Threshold) -> Result<Arrangement, ArrangementError> {
        let mut next = self.clone();
        next.apply_in_place(m, a)?;
        Ok(next)
    }

    pub(crate) fn apply_in_place(&mut self, m: &Move, a: Threshold) -> Result<(), ArrangementError> {
        match m {
            Move::AddDisk { circle, slot } => {
                let c = self.circle_mut(circle)?;
                if *slot > c.children.len() {
                    return Err(ArrangementError::NoSuchCircle(circle.clone()));
                }
                c.children.insert(*slot, Piece::disk());
            }
            Move::RemoveDisk { circle, slot } => {
                let c = self.circle_mut(circle)?;
                let Some(child) = c.children.get(*slot) else {
                    return Err(ArrangementError::NoSuchPiece(circle.piece.child(circle.circle, *slot)));
                };
                if !child.circles.is_empty() {
                    return Err(ArrangementError::NotADisk(circle.piece.child(circle.circle, *slot)));
                }
                if c.children.len() == 1 {
                    return Err(ArrangementError::LastPiece(circle.clone()));
                }
                c.children.remove(*slot);
            }
            Move::Inflate { disk, boundaries } => {
                let s = *boundaries;
                if !a.admits(s) {
                    return Err(ArrangementError::Boundaries {
                        boundaries: s,
                        threshold: a,
                    });
                }
                let is_root = disk.is_root();
                let piece = self
                    .piece_mut(disk)
                    .ok_or_else(|| ArrangementError::NoSuchPiece(disk.clone()))?;
                if piece.boundary_count(is_root) != 1 {
                    return Err(ArrangementError::NotADisk(disk.clone()));
                }
                piece
                    .circles
                    .extend((1..s).map(|_| Circle::with(alloc::vec![Piece::disk()])));
            }
            Move::Deflate { piece: path, boundaries } => {
                let is_root = path.is_root();
                let piece = self
                    .piece_mut(path)
                    .ok_or_else(|| ArrangementError::NoSuchPiece(path.clone()))?;
                let found = piece.boundary_count(is_root);
                if found != *boundaries {
                    return Err(ArrangementError::BoundaryMismatch {
                        piece: path.clone(),
                        expected: *boundaries,
                        found,
                    });
                }
                let keep = usize::from(is_root);
                let removable = piece.circles[keep.min(piece.circles.len())..]
                    .iter()
                    .all(|c| c.children.len() == 1 && c.children[0].circles.is_empty());
                if !removable || (is_root && piece.circles.is_empty()) {
                    return Err(ArrangementError::NotDeflatable(path.clone()));
                }
                piece.circles.truncate(keep);
            }
        }
        Ok(())
    }

    fn circle_mut(&mut self, path: &CirclePath) -> Result<&mut Circle, ArrangementError> {
        self.piece_mut(&path.piece)
            .and_then(|p| p.circles.get_mut(path.circle))
            .ok_or_else(|| ArrangementError::NoSuchCircle(path.clone()))
    }
}

/// A sequence of moves with the counters `(x, y)` before the first step and
/// after every step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTrace {
    pub threshold: Threshold,
    pub steps: Vec<Move>,
    /// `counters[t]` is `(x_t, y_t)`; one more entry than `steps`.
    pub counters: Vec<(usize, usize)>,
}

impl MoveTrace {
    pub fn start(arrangement: &Arrangement, a: Threshold) -> Self {
        MoveTrace {
            threshold: a,
            steps: Vec::new(),
            counters: alloc::vec![(arrangement.lambda_count(a), arrangement.piece_count())],
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub(crate) fn record(&mut self, m: Move, after: &Arrangement) {
        self.steps.push(m);
        self.counters
            .push((after.lambda_count(self.threshold), after.piece_count()));
    }

    /// Applies the steps in order starting from `start`.
    pub fn replay(&self, start: &Arrangement) -> Result<Arrangement, ArrangementError> {
        let mut arr = start.clone();
        for m in &self.steps {
            arr.apply_in_place(m, self.threshold)?;
        }
        Ok(arr)
    }

    /// The trace that undoes this one: inverse moves in reverse order, with
    /// recomputed counters.
    pub fn reversed(&self, end: &Arrangement) -> Result<MoveTrace, ArrangementError> {
        let mut arr = end.clone();
        let mut out = MoveTrace::start(&arr, self.threshold);
        for m in self.steps.iter().rev() {
            let inv = m.inverse();
            arr.apply_in_place(&inv, self.threshold)?;
            out.record(inv, &arr);
        }
        Ok(out)
    }

    /// Every step changes the counters by exactly [`Move::delta`].
    pub fn deltas_match(&self) -> bool {
        self.steps.iter().zip(self.counters.windows(2)).all(|(m, w)| {
            let (dx, dy) = m.delta(self.threshold);
            w[1].0 as i64 - w[0].0 as i64 == dx && w[1].1 as i64 - w[0].1 as i64 == dy
        })
    }
}

/// Builds a random arrangement with at most `max_pieces` pieces by random
/// forward moves from two disks.
pub fn random_build<R: Rng + ?Sized>(
    rng: &mut R,
    max_pieces: usize,
    a: Threshold,
) -> (Arrangement, MoveTrace) {
    let mut arr = Arrangement::two_disks();
    let mut trace = MoveTrace::start(&arr, a);
    let target = rng.gen_range(2..=max_pieces.max(2));
    while arr.piece_count() < target {
        let room = target - arr.piece_count();
        let inflate = room >= 1 && rng.gen_bool(0.5);
        let m = if inflate {
            let disks: Vec<PiecePath> = arr
                .pieces()
                .into_iter()
                .filter(|(_, s)| *s == 1)
                .map(|(p, _)| p)
                .collect();
            let choices: Vec<usize> = (2..=room + 1).filter(|&s| a.admits(s)).collect();
            if choices.is_empty() {
                continue;
            }
            Move::Inflate {
                disk: disks[rng.gen_range(0..disks.len())].clone(),
                boundaries: choices[rng.gen_range(0..choices.len())],
            }
        } else {
            let circles = arr.circles();
            let circle = circles[rng.gen_range(0..circles.len())].clone();
            let len = arr.piece(&circle.piece).expect("listed").circles[circle.circle]
                .children
                .len();
            Move::AddDisk {
                circle,
                slot: rng.gen_range(0..=len),
            }
        };
        arr.apply_in_place(&m, a).expect("random move preconditions hold");
        trace.record(m, &arr);
    }
    (arr, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{canonical_form, parse_arrangement};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn root_circle() -> CirclePath {
        PiecePath::root().circle(0)
    }

    fn child() -> PiecePath {
        PiecePath(alloc::vec![(0, 0)])
    }

    #[test]
    fn add_disk() {
        let two = Arrangement::two_disks();
        let m = Move::AddDisk {
            circle: root_circle(),
            slot: 1,
        };
        let three = two.apply_move(&m, Threshold::ONE).unwrap();
        assert_eq!(three.piece_count(), 3);
        assert_eq!(three.lambda_count(Threshold::ONE), 3);
        assert_eq!(three.apply_move(&m.inverse(), Threshold::ONE).unwrap(), two);
    }

    #[test]
    fn inflate_child_disk() {
        let two = Arrangement::two_disks();
        let m = Move::Inflate {
            disk: child(),
            boundaries: 3,
        };
        let four = two.apply_move(&m, Threshold::ONE).unwrap();
        assert_eq!(four.to_bracket(), "{[([()][()])]}");
        assert_eq!(four.piece_count(), 4);
        assert_eq!(four.lambda_count(Threshold::ONE), 3);
        assert!(four.is_valid(Threshold::ONE));
        assert_eq!(m.delta(Threshold::ONE), (1, 2));
        assert_eq!(four.apply_move(&m.inverse(), Threshold::ONE).unwrap(), two);
    }

    #[test]
    fn inflate_root_disk() {
        let two = Arrangement::two_disks();
        let m = Move::Inflate {
            disk: PiecePath::root(),
            boundaries: 3,
        };
        let four = two.apply_move(&m, Threshold::ONE).unwrap();
        assert_eq!(four.to_bracket(), "{[()][()][()]}");
        assert_eq!(
            canonical_form(&four),
            canonical_form(&parse_arrangement("{[([()][()])]}").unwrap())
        );
        assert_eq!(four.apply_move(&m.inverse(), Threshold::ONE).unwrap(), two);
    }

    #[test]
    fn forbidden_boundary_counts() {
        let two = Arrangement::two_disks();
        for s in [0, 2] {
            let m = Move::Inflate {
                disk: child(),
                boundaries: s,
            };
            assert!(matches!(
                two.apply_move(&m, Threshold::ONE),
                Err(ArrangementError::Boundaries { .. })
            ));
        }
        let a3 = Threshold::new(3).unwrap();
        let m2 = Move::Inflate { disk: child(), boundaries: 2 };
        assert!(two.apply_move(&m2, a3).unwrap().is_valid(a3));
        let m4 = Move::Inflate { disk: child(), boundaries: 4 };
        assert!(two.apply_move(&m4, a3).is_err());
    }

    #[test]
    fn inflate_one_is_identity() {
        let two = Arrangement::two_disks();
        let m = Move::Inflate {
            disk: child(),
            boundaries: 1,
        };
        assert_eq!(two.apply_move(&m, Threshold::ONE).unwrap(), two);
        assert_eq!(m.delta(Threshold::ONE), (0, 0));
    }

    #[test]
    fn reversal_preconditions() {
        let two = Arrangement::two_disks();
        assert!(matches!(
            two.apply_move(
                &Move::RemoveDisk {
                    circle: root_circle(),
                    slot: 0
                },
                Threshold::ONE
            ),
            Err(ArrangementError::LastPiece(_))
        ));
        let five = parse_arrangement("{ [ () ( [()()] [()] ) ] }").unwrap();
        let deflate = Move::Deflate {
            piece: PiecePath(alloc::vec![(0, 1)]),
            boundaries: 3,
        };
        assert!(matches!(
            five.apply_move(&deflate, Threshold::ONE),
            Err(ArrangementError::NotDeflatable(_))
        ));
        assert!(matches!(
            two.apply_move(
                &Move::Inflate {
                    disk: PiecePath(alloc::vec![(0, 3)]),
                    boundaries: 3
                },
                Threshold::ONE
            ),
            Err(ArrangementError::NoSuchPiece(_))
        ));
        let four = parse_arrangement("{[([()][()])]}").unwrap();
        assert!(matches!(
            four.apply_move(
                &Move::Inflate {
                    disk: child(),
                    boundaries: 3
                },
                Threshold::ONE
            ),
            Err(ArrangementError::NotADisk(_))
        ));
    }

    #[test]
    fn delta_table() {
        let a = Threshold::new(3).unwrap();
        let inflate = |s| Move::Inflate {
            disk: PiecePath::root(),
            boundaries: s,
        };
        assert_eq!(inflate(2).delta(a), (1, 1));
        assert_eq!(inflate(3).delta(a), (2, 2));
        assert_eq!(inflate(5).delta(a), (3, 4));
        assert_eq!(inflate(5).inverse().delta(a), (-3, -4));
    }

    #[test]
    fn random_builds_are_valid_and_replay() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for a in [1, 3] {
            let a = Threshold::new(a).unwrap();
            for _ in 0..50 {
                let (arr, trace) = random_build(&mut rng, 40, a);
                assert!(arr.piece_count() <= 40);
                assert!(arr.is_valid(a), "{arr}");
                assert_eq!(trace.counters[0], (2, 2));
                assert!(trace.deltas_match());
                assert_eq!(trace.replay(&Arrangement::two_disks()).unwrap(), arr);
                let back = trace.reversed(&arr).unwrap();
                assert_eq!(back.replay(&arr).unwrap(), Arrangement::two_disks());
                assert!(back.deltas_match());
            }
        }
    }
}
