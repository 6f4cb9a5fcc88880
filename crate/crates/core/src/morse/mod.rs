//! Knots in Morse position as bottom-to-top words of level events.
//!
//! A word is read from the bottom up. Strands at a regular level are indexed
//! `0..w` from left to right. A cup (local minimum) inserts two adjacent
//! strands, a cap (local maximum) joins two adjacent strands, and a crossing
//! swaps two adjacent strands. Cups and caps are the critical points of the
//! height function; crossings are projection artifacts and do not delimit
//! levels.

pub(crate) mod parse;
mod random;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::union_find::UnionFind;

pub use parse::parse_morse;
pub use random::random_knot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    Cup,
    Cap,
    /// The strand moving left to right passes over.
    CrossPos,
    /// The strand moving left to right passes under.
    CrossNeg,
}

impl EventKind {
    pub fn is_critical(self) -> bool {
        matches!(self, EventKind::Cup | EventKind::Cap)
    }

    pub fn is_crossing(self) -> bool {
        !self.is_critical()
    }

    pub fn keyword(self) -> &'static str {
        match self {
            EventKind::Cup => "cup",
            EventKind::Cap => "cap",
            EventKind::CrossPos => "x+",
            EventKind::CrossNeg => "x-",
        }
    }

    /// The same event with the crossing sign reversed; cups and caps are unchanged.
    pub fn flipped(self) -> Self {
        match self {
            EventKind::CrossPos => EventKind::CrossNeg,
            EventKind::CrossNeg => EventKind::CrossPos,
            k => k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorseEvent {
    pub kind: EventKind,
    pub position: usize,
}

impl MorseEvent {
    pub const fn new(kind: EventKind, position: usize) -> Self {
        MorseEvent { kind, position }
    }
    pub const fn cup(position: usize) -> Self {
        Self::new(EventKind::Cup, position)
    }
    pub const fn cap(position: usize) -> Self {
        Self::new(EventKind::Cap, position)
    }
    pub const fn cross_pos(position: usize) -> Self {
        Self::new(EventKind::CrossPos, position)
    }
    pub const fn cross_neg(position: usize) -> Self {
        Self::new(EventKind::CrossNeg, position)
    }

    /// Strand count after applying this event to `strands` strands, or
    /// `None` when the position is out of range.
    pub fn apply(&self, strands: usize) -> Option<usize> {
        match self.kind {
            EventKind::Cup if self.position <= strands => Some(strands + 2),
            EventKind::Cap if strands >= 2 && self.position <= strands - 2 => Some(strands - 2),
            EventKind::CrossPos | EventKind::CrossNeg
                if strands >= 2 && self.position <= strands - 2 =>
            {
                Some(strands)
            }
            _ => None,
        }
    }
}

impl fmt::Display for MorseEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.keyword(), self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorseError {
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// An event whose position does not fit the current strand count.
    StrandCount {
        event: usize,
        line: Option<usize>,
        kind: EventKind,
        position: usize,
        strands: usize,
    },
    /// The word does not end with zero strands.
    Unclosed { strands: usize },
    Empty,
    /// The diagram is a link, not a knot.
    Components { count: usize },
}

impl fmt::Display for MorseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorseError::Syntax {
                line,
                column,
                message,
            } => write!(f, "syntax error at line {line}, column {column}: {message}"),
            MorseError::StrandCount {
                event,
                line,
                kind,
                position,
                strands,
            } => {
                write!(
                    f,
                    "strand-count violation: `{} {}` with {} strands (event {})",
                    kind.keyword(),
                    position,
                    strands,
                    event
                )?;
                if let Some(line) = line {
                    write!(f, " at line {line}")?;
                }
                Ok(())
            }
            MorseError::Unclosed { strands } => {
                write!(f, "word ends with {strands} open strands, expected 0")
            }
            MorseError::Empty => f.write_str("empty presentation"),
            MorseError::Components { count } => {
                write!(f, "component count is {count}, expected 1 (not a knot)")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MorseError {}

/// Strand counts at the regular levels between consecutive cup/cap events.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelProfile(pub Vec<usize>);

impl LevelProfile {
    pub fn widths(&self) -> &[usize] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn trunk(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for LevelProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

/// A closed Morse diagram: strand counts are consistent and return to zero,
/// but it may have several components. Cables are diagrams of this kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorseDiagram {
    events: Vec<MorseEvent>,
}

impl MorseDiagram {
    pub fn new(events: Vec<MorseEvent>) -> Result<Self, MorseError> {
        if events.is_empty() {
            return Err(MorseError::Empty);
        }
        let strands = check_strands(&events, 0)?;
        if strands != 0 {
            return Err(MorseError::Unclosed { strands });
        }
        Ok(MorseDiagram { events })
    }

    pub fn events(&self) -> &[MorseEvent] {
        &self.events
    }

    pub fn into_events(self) -> Vec<MorseEvent> {
        self.events
    }

    /// Strand count after each event.
    pub fn strand_counts(&self) -> Vec<usize> {
        let mut w = 0;
        self.events
            .iter()
            .map(|e| {
                w = e.apply(w).expect("validated diagram");
                w
            })
            .collect()
    }

    /// Indices of the cup/cap events, bottom to top.
    pub fn critical_indices(&self) -> Vec<usize> {
        self.events
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind.is_critical())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn level_profile(&self) -> LevelProfile {
        let counts = self.strand_counts();
        let critical = self.critical_indices();
        let widths = critical[..critical.len().saturating_sub(1)]
            .iter()
            .map(|&i| counts[i])
            .collect();
        LevelProfile(widths)
    }

    pub fn width(&self) -> usize {
        self.level_profile().width()
    }

    pub fn trunk(&self) -> usize {
        self.level_profile().trunk()
    }

    /// Number of closed components, found by tracing cup arcs through
    /// crossings until they are closed off by caps.
    pub fn component_count(&self) -> usize {
        trace_components(&self.events)
    }

    /// Mirror image: every crossing sign reversed.
    pub fn mirrored(&self) -> Self {
        MorseDiagram {
            events: self
                .events
                .iter()
                .map(|e| MorseEvent::new(e.kind.flipped(), e.position))
                .collect(),
        }
    }

    /// The word in the `.morse` text format.
    pub fn to_dsl(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for e in &self.events {
            let _ = writeln!(out, "{e}");
        }
        out
    }
}

impl fmt::Display for MorseDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

/// A knot in Morse position: a closed diagram with exactly one component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorsePresentation {
    diagram: MorseDiagram,
}

impl MorsePresentation {
    pub fn new(events: Vec<MorseEvent>) -> Result<Self, MorseError> {
        MorseDiagram::new(events)?.into_knot()
    }

    /// The round unknot: `cup 0`, `cap 0`.
    pub fn unknot() -> Self {
        MorsePresentation {
            diagram: MorseDiagram {
                events: alloc::vec![MorseEvent::cup(0), MorseEvent::cap(0)],
            },
        }
    }

    /// Two-bridge trefoil with profile `[2, 4, 2]`.
    pub fn trefoil() -> Self {
        let events = alloc::vec![
            MorseEvent::cup(0),
            MorseEvent::cup(2),
            MorseEvent::cross_pos(1),
            MorseEvent::cross_pos(1),
            MorseEvent::cross_pos(1),
            MorseEvent::cap(1),
            MorseEvent::cap(0),
        ];
        MorsePresentation::new(events).expect("trefoil word is a knot")
    }

    pub fn diagram(&self) -> &MorseDiagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> MorseDiagram {
        self.diagram
    }

    pub fn mirrored(&self) -> Self {
        MorsePresentation {
            diagram: self.diagram.mirrored(),
        }
    }

    /// Connected sum spliced at the extremes: `other` loses its top cap,
    /// `self` loses its bottom cup, and the two open arcs are joined.
    ///
    /// Every valid presentation starts with `cup 0` and ends with `cap 0`, so
    /// no normalizing rotation is ever needed. The result has trunk
    /// `max(trunk(self), trunk(other))` and width `width(self) + width(other) - 2`.
    pub fn connected_sum(&self, other: &MorsePresentation) -> MorsePresentation {
        let lower = other.events();
        let upper = self.events();
        debug_assert_eq!(lower.last(), Some(&MorseEvent::cap(0)));
        debug_assert_eq!(upper.first(), Some(&MorseEvent::cup(0)));
        let mut events = Vec::with_capacity(lower.len() + upper.len() - 2);
        events.extend_from_slice(&lower[..lower.len() - 1]);
        events.extend_from_slice(&upper[1..]);
        MorsePresentation {
            diagram: MorseDiagram { events },
        }
    }

    /// Inserts a canceling cup/cap pair (a zigzag on `strand`) right after
    /// the `level`-th critical event. The knot type is unchanged; the level
    /// `w` is split into `w, w + 2, w`.
    pub fn insert_canceling_pair(&self, level: usize, strand: usize) -> Option<MorsePresentation> {
        let critical = self.critical_indices();
        if level + 1 >= critical.len() {
            return None;
        }
        let at = critical[level];
        let w = self.strand_counts()[at];
        if strand >= w {
            return None;
        }
        let mut events = self.events().to_vec();
        events.splice(
            at + 1..at + 1,
            [MorseEvent::cup(strand + 1), MorseEvent::cap(strand)],
        );
        Some(MorsePresentation {
            diagram: MorseDiagram { events },
        })
    }
}

impl Deref for MorsePresentation {
    type Target = MorseDiagram;
    fn deref(&self) -> &MorseDiagram {
        &self.diagram
    }
}

impl fmt::Display for MorsePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.diagram.fmt(f)
    }
}

impl MorseDiagram {
    pub fn into_knot(self) -> Result<MorsePresentation, MorseError> {
        match self.component_count() {
            1 => Ok(MorsePresentation { diagram: self }),
            count => Err(MorseError::Components { count }),
        }
    }
}

/// Walks `events` from `start` strands; returns the final strand count.
pub(crate) fn check_strands(events: &[MorseEvent], start: usize) -> Result<usize, MorseError> {
    events.iter().enumerate().try_fold(start, |w, (i, e)| {
        e.apply(w).ok_or(MorseError::StrandCount {
            event: i,
            line: None,
            kind: e.kind,
            position: e.position,
            strands: w,
        })
    })
}

fn trace_components(events: &[MorseEvent]) -> usize {
    let mut sets = UnionFind::default();
    let mut strands: Vec<usize> = Vec::new();
    let mut closed = 0;
    // open ends per set root; a set closes when its last two ends are capped
    let mut open: Vec<usize> = Vec::new();
    for e in events {
        let i = e.position;
        match e.kind {
            EventKind::Cup => {
                let id = sets.make_set();
                open.push(2);
                strands.splice(i..i, [id, id]);
            }
            EventKind::Cap => {
                let (a, b) = (sets.find(strands[i]), sets.find(strands[i + 1]));
                let root = sets.union(a, b);
                let ends = if a == b { open[a] } else { open[a] + open[b] };
                open[root] = ends - 2;
                if open[root] == 0 {
                    closed += 1;
                }
                strands.drain(i..i + 2);
            }
            EventKind::CrossPos | EventKind::CrossNeg => strands.swap(i, i + 1),
        }
    }
    debug_assert_eq!(open.len(), sets.len());
    closed
}
