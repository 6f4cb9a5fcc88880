//! Satellite patterns as tangles in a cylinder (a solid torus cut open along
//! a meridian disk), blackboard cabling, and satellite construction.

mod parse;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::morse::{check_strands, EventKind, LevelProfile, MorseDiagram, MorseError, MorseEvent, MorsePresentation};
use crate::union_find::UnionFind;

pub use parse::parse_tangle;

/// Cabled diagrams wider than this are rejected.
pub const MAX_CABLE_WIDTH: usize = 1 << 20;

/// Orientation of the pattern where it crosses the bottom disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A tangle endpoint on the bottom or top disk of the cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Bottom(usize),
    Top(usize),
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Bottom(i) => write!(f, "b{i}"),
            Endpoint::Top(i) => write!(f, "t{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    Morse(MorseError),
    NoThroughStrands,
    SignCount { through: usize, signs: usize },
    /// The tangle word does not end with `through` strands.
    Unbalanced { through: usize, strands: usize },
    /// An arc whose endpoint signs disagree with a consistent orientation.
    Orientation { arc: (Endpoint, Endpoint) },
    ZeroCable,
    TooWide { width: usize },
    LevelOutOfRange { level: usize, levels: usize },
    /// The spliced satellite is a link.
    Components { count: usize, arcs: String },
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::Morse(e) => e.fmt(f),
            PatternError::NoThroughStrands => f.write_str("a pattern needs at least one through strand"),
            PatternError::SignCount { through, signs } => {
                write!(f, "{signs} signs given for {through} through strands")
            }
            PatternError::Unbalanced { through, strands } => {
                write!(f, "tangle ends with {strands} strands, expected {through}")
            }
            PatternError::Orientation { arc } => {
                write!(f, "arc {}-{} cannot be oriented consistently with the signs", arc.0, arc.1)
            }
            PatternError::ZeroCable => f.write_str("cable multiplicity must be at least 1"),
            PatternError::TooWide { width } => {
                write!(f, "cabled width {width} exceeds the limit {MAX_CABLE_WIDTH}")
            }
            PatternError::LevelOutOfRange { level, levels } => {
                write!(f, "regular level {level} out of range (companion has {levels})")
            }
            PatternError::Components { count, arcs } => write!(
                f,
                "satellite has {count} components; the pattern closure is not a knot (endpoint arcs: {arcs})"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PatternError {}

impl From<MorseError> for PatternError {
    fn from(e: MorseError) -> Self {
        PatternError::Morse(e)
    }
}

/// A pattern drawn in a cylinder: `through` strands enter at the bottom
/// and leave at the top; the word in between may add turnbacks with cups and
/// caps and cross strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderTangle {
    through: usize,
    signs: Vec<Sign>,
    events: Vec<MorseEvent>,
    arcs: Vec<(Endpoint, Endpoint)>,
    loops: usize,
}

impl CylinderTangle {
    pub fn new(signs: Vec<Sign>, events: Vec<MorseEvent>) -> Result<Self, PatternError> {
        let through = signs.len();
        if through == 0 {
            return Err(PatternError::NoThroughStrands);
        }
        let end = check_strands(&events, through)?;
        if end != through {
            return Err(PatternError::Unbalanced {
                through,
                strands: end,
            });
        }
        let (arcs, loops) = trace_arcs(through, &events);
        let tangle = CylinderTangle {
            through,
            signs,
            events,
            arcs,
            loops,
        };
        tangle.check_orientation()?;
        Ok(tangle)
    }

    /// `n` parallel strands with the given signs and no events.
    pub fn trivial(signs: Vec<Sign>) -> Result<Self, PatternError> {
        Self::new(signs, Vec::new())
    }

    pub fn through(&self) -> usize {
        self.through
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn events(&self) -> &[MorseEvent] {
        &self.events
    }

    /// Arcs between boundary endpoints, each listed once with the smaller
    /// endpoint first; sorted.
    pub fn arcs(&self) -> &[(Endpoint, Endpoint)] {
        &self.arcs
    }

    /// Closed components lying entirely inside the cylinder.
    pub fn closed_loops(&self) -> usize {
        self.loops
    }

    /// Where each bottom endpoint's arc leaves the cylinder.
    pub fn endpoint_map(&self) -> BTreeMap<Endpoint, Endpoint> {
        let mut map = BTreeMap::new();
        for &(a, b) in &self.arcs {
            map.insert(a, b);
            map.insert(b, a);
        }
        map
    }

    /// `|sum of signs|`, the algebraic intersection with a meridian disk.
    pub fn winding_number(&self) -> u64 {
        self.signs.iter().map(|s| s.value()).sum::<i64>().unsigned_abs()
    }

    /// Geometric intersection with this presentation's meridian disk. This
    /// is an upper bound for the wrapping number, which minimizes over all
    /// meridian disks.
    pub fn presentation_wrapping(&self) -> usize {
        self.through
    }

    pub fn max_internal_width(&self) -> usize {
        let mut w = self.through;
        let mut max = w;
        for e in &self.events {
            w = e.apply(w).expect("validated tangle");
            max = max.max(w);
        }
        max
    }

    /// Components of the closure obtained by gluing top `j` to bottom `j`.
    pub fn closure_components(&self) -> usize {
        let mut sets = UnionFind::with_len(self.through);
        for &(a, b) in &self.arcs {
            let index = |e: Endpoint| match e {
                Endpoint::Bottom(j) | Endpoint::Top(j) => j,
            };
            sets.union(index(a), index(b));
        }
        let roots: alloc::collections::BTreeSet<usize> =
            (0..self.through).map(|j| sets.find(j)).collect();
        roots.len() + self.loops
    }

    pub fn arcs_description(&self) -> String {
        let mut s = String::new();
        for (i, (a, b)) in self.arcs.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&alloc::format!("{a}-{b}"));
        }
        s
    }

    /// The `.tangle` text format.
    pub fn to_dsl(&self) -> String {
        let mut s = alloc::format!("through {} signs ", self.through);
        s.extend(self.signs.iter().map(|sg| sg.symbol()));
        s.push('\n');
        for e in &self.events {
            s.push_str(&alloc::format!("{e}\n"));
        }
        s
    }

    /// Entry endpoints (where the oriented pattern enters the cylinder) are
    /// bottom `+` and top `-`; each arc must join one entry to one exit.
    fn check_orientation(&self) -> Result<(), PatternError> {
        let entering = |e: Endpoint| match e {
            Endpoint::Bottom(j) => self.signs[j] == Sign::Plus,
            Endpoint::Top(j) => self.signs[j] == Sign::Minus,
        };
        match self.arcs.iter().find(|&&(a, b)| entering(a) == entering(b)) {
            Some(&arc) => Err(PatternError::Orientation { arc }),
            None => Ok(()),
        }
    }
}

fn trace_arcs(through: usize, events: &[MorseEvent]) -> (Vec<(Endpoint, Endpoint)>, usize) {
    let mut sets = UnionFind::with_len(through);
    let mut strands: Vec<usize> = (0..through).collect();
    for e in events {
        let i = e.position;
        match e.kind {
            EventKind::Cup => {
                let id = sets.make_set();
                strands.splice(i..i, [id, id]);
            }
            EventKind::Cap => {
                sets.union(strands[i], strands[i + 1]);
                strands.drain(i..i + 2);
            }
            EventKind::CrossPos | EventKind::CrossNeg => strands.swap(i, i + 1),
        }
    }
    let mut ends: BTreeMap<usize, Vec<Endpoint>> = BTreeMap::new();
    for j in 0..through {
        let root = sets.find(j);
        ends.entry(root).or_default().push(Endpoint::Bottom(j));
    }
    for (k, &id) in strands.iter().enumerate() {
        let root = sets.find(id);
        ends.entry(root).or_default().push(Endpoint::Top(k));
    }
    let mut arcs: Vec<(Endpoint, Endpoint)> = ends
        .values()
        .map(|v| {
            debug_assert_eq!(v.len(), 2);
            (v[0].min(v[1]), v[0].max(v[1]))
        })
        .collect();
    arcs.sort();
    let all_roots: alloc::collections::BTreeSet<usize> = (0..sets.len()).map(|x| sets.find(x)).collect();
    let loops = all_roots.len() - ends.len();
    (arcs, loops)
}

/// A blackboard-framed `n`-cable: every strand of the companion replaced by
/// `n` parallel strands. Usually a link, so it is kept as a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cable {
    diagram: MorseDiagram,
    strands: usize,
    marks: Vec<usize>,
}

impl Cable {
    pub fn diagram(&self) -> &MorseDiagram {
        &self.diagram
    }

    pub fn multiplicity(&self) -> usize {
        self.strands
    }

    /// Index of the last event of each companion cup/cap block.
    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    /// Widths at the companion's regular levels: `n * w_i` for each companion
    /// level `w_i`. The nested cups and caps of one block lie at
    /// intermediate levels that this profile skips.
    pub fn companion_profile(&self) -> LevelProfile {
        profile_at(&self.diagram, &self.marks)
    }
}

fn profile_at(diagram: &MorseDiagram, marks: &[usize]) -> LevelProfile {
    let counts = diagram.strand_counts();
    LevelProfile(
        marks[..marks.len().saturating_sub(1)]
            .iter()
            .map(|&i| counts[i])
            .collect(),
    )
}

/// Cables a closed diagram with `n` parallel copies of each strand.
///
/// A cup at `i` becomes `n` nested cups starting at `n * i`, a cap becomes
/// `n` nested caps closed innermost first, and a crossing at `i` becomes an
/// `n x n` block of crossings with the same sign that swaps the two bundles.
pub fn cable(diagram: &MorseDiagram, n: usize) -> Result<Cable, PatternError> {
    if n == 0 {
        return Err(PatternError::ZeroCable);
    }
    let width = diagram
        .trunk()
        .checked_mul(n)
        .filter(|&w| w <= MAX_CABLE_WIDTH)
        .ok_or(PatternError::TooWide {
            width: diagram.trunk().saturating_mul(n),
        })?;
    debug_assert!(width <= MAX_CABLE_WIDTH);
    let mut events = Vec::new();
    let mut marks = Vec::new();
    for e in diagram.events() {
        let base = n * e.position;
        match e.kind {
            EventKind::Cup => {
                events.extend((0..n).map(|k| MorseEvent::cup(base + k)));
                marks.push(events.len() - 1);
            }
            EventKind::Cap => {
                events.extend((0..n).rev().map(|k| MorseEvent::cap(base + k)));
                marks.push(events.len() - 1);
            }
            kind => {
                // the right bundle moves left one strand at a time
                for c in 0..n {
                    for b in (0..n).rev() {
                        events.push(MorseEvent::new(kind, base + c + b));
                    }
                }
            }
        }
    }
    Ok(Cable {
        diagram: MorseDiagram::new(events)?,
        strands: n,
        marks,
    })
}

/// A satellite knot built by cabling a companion and splicing a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satellite {
    knot: MorsePresentation,
    marks: Vec<usize>,
    window: Range<usize>,
}

impl Satellite {
    pub fn knot(&self) -> &MorsePresentation {
        &self.knot
    }

    pub fn into_knot(self) -> MorsePresentation {
        self.knot
    }

    /// Index of the last event of each companion cup/cap block.
    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    /// Event indices of the spliced pattern word.
    pub fn window(&self) -> Range<usize> {
        self.window.clone()
    }

    /// Widths at the companion's regular levels outside the window.
    pub fn companion_profile(&self) -> LevelProfile {
        profile_at(&self.knot, &self.marks)
    }

    /// Widths of the regular levels strictly between consecutive critical
    /// events of the spliced pattern.
    pub fn window_profile(&self) -> LevelProfile {
        let counts = self.knot.strand_counts();
        let crit: Vec<usize> = self.window.clone().filter(|&i| self.knot.events()[i].kind.is_critical()).collect();
        LevelProfile(crit[..crit.len().saturating_sub(1)].iter().map(|&i| counts[i]).collect())
    }
}

/// Cables `companion` with `tangle.through()` strands and splices the
/// tangle into the leftmost bundle at companion regular level `level`.
///
/// Endpoint matching at the splice is positional; the result must be a knot.
pub fn satellite(
    companion: &MorsePresentation,
    tangle: &CylinderTangle,
    level: usize,
) -> Result<Satellite, PatternError> {
    let levels = companion.level_profile().len();
    if level >= levels {
        return Err(PatternError::LevelOutOfRange { level, levels });
    }
    let cabled = cable(companion, tangle.through())?;
    let at = cabled.marks[level] + 1;
    let mut events = cabled.diagram.into_events();
    let inserted = tangle.events().len();
    events.splice(at..at, tangle.events().iter().copied());
    let marks = cabled
        .marks
        .iter()
        .map(|&m| if m >= at { m + inserted } else { m })
        .collect();
    let diagram = MorseDiagram::new(events)?;
    let knot = diagram.into_knot().map_err(|e| match e {
        MorseError::Components { count } => PatternError::Components {
            count,
            arcs: tangle.arcs_description(),
        },
        other => PatternError::Morse(other),
    })?;
    Ok(Satellite {
        knot,
        marks,
        window: at..at + inserted,
    })
}

/// Two strands with opposite orientations, a bottom turnback clasped with a
/// top turnback: winding number 0, presentation wrapping 2, internal width 4.
pub fn whitehead_tangle() -> CylinderTangle {
    CylinderTangle::new(
        alloc::vec![Sign::Plus, Sign::Minus],
        alloc::vec![
            MorseEvent::cup(1),
            MorseEvent::cross_pos(0),
            MorseEvent::cross_pos(2),
            MorseEvent::cap(1),
        ],
    )
    .expect("whitehead tangle is valid")
}

/// `n` parallel positive strands cycled by one twist (`x+ 0 … x+ n-2`), so
/// that the positional closure is connected.
pub fn twist_tangle(n: usize) -> Result<CylinderTangle, PatternError> {
    CylinderTangle::new(
        alloc::vec![Sign::Plus; n],
        (0..n.saturating_sub(1)).map(MorseEvent::cross_pos).collect(),
    )
}
