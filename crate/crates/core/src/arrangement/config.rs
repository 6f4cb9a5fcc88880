//! Pieces cut out by a level sphere, flagged as relevant or not, with
//! boundary circles flagged essential or not; and the absorption of such a
//! configuration into an arrangement of its relevant pieces.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{random_build, Arrangement, Circle, Piece, PiecePath, Threshold, Violation};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigPiece {
    pub relevant: bool,
    /// Flag of the outer circle; always `false` on the root.
    pub outer_essential: bool,
    pub circles: Vec<ConfigCircle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigCircle {
    pub essential: bool,
    pub children: Vec<ConfigPiece>,
}

impl ConfigPiece {
    fn from_piece(piece: &Piece) -> Self {
        ConfigPiece {
            relevant: false,
            outer_essential: false,
            circles: piece
                .circles
                .iter()
                .map(|c| ConfigCircle {
                    essential: false,
                    children: c.children.iter().map(ConfigPiece::from_piece).collect(),
                })
                .collect(),
        }
    }

    /// Essential circles of this piece, counting the outer one.
    pub fn essential_count(&self) -> usize {
        usize::from(self.outer_essential) + self.circles.iter().filter(|c| c.essential).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceConfiguration {
    root: ConfigPiece,
}

impl PieceConfiguration {
    pub fn new(mut root: ConfigPiece) -> Self {
        root.outer_essential = false;
        PieceConfiguration { root }
    }

    /// Every piece irrelevant and every circle inessential, in the shape of
    /// `arrangement`.
    pub fn unflagged(arrangement: &Arrangement) -> Self {
        PieceConfiguration::new(ConfigPiece::from_piece(arrangement.root()))
    }

    pub fn root(&self) -> &ConfigPiece {
        &self.root
    }

    pub fn piece(&self, path: &PiecePath) -> Option<&ConfigPiece> {
        path.0.iter().try_fold(&self.root, |p, &(c, k)| p.circles.get(c)?.children.get(k))
    }

    pub fn piece_mut(&mut self, path: &PiecePath) -> Option<&mut ConfigPiece> {
        path.0
            .iter()
            .try_fold(&mut self.root, |p, &(c, k)| p.circles.get_mut(c)?.children.get_mut(k))
    }

    /// All pieces in pre-order.
    pub fn pieces(&self) -> Vec<(PiecePath, &ConfigPiece)> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![(PiecePath::root(), &self.root)];
        while let Some((path, piece)) = stack.pop() {
            for (c, circle) in piece.circles.iter().enumerate().rev() {
                for (k, child) in circle.children.iter().enumerate().rev() {
                    stack.push((path.child(c, k), child));
                }
            }
            out.push((path, piece));
        }
        out
    }

    /// The underlying arrangement candidate, flags dropped.
    pub fn shape(&self) -> Arrangement {
        fn strip(p: &ConfigPiece) -> Piece {
            Piece {
                circles: p
                    .circles
                    .iter()
                    .map(|c| Circle::with(c.children.iter().map(strip).collect()))
                    .collect(),
            }
        }
        Arrangement::new(strip(&self.root))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_piece(&mut out, &self.root, true);
        out
    }
}

fn write_piece(out: &mut String, piece: &ConfigPiece, is_root: bool) {
    if piece.relevant {
        out.push('*');
    }
    out.push(if is_root { '{' } else { '(' });
    for circle in &piece.circles {
        out.push('[');
        for child in &circle.children {
            write_piece(out, child, false);
        }
        out.push(']');
        if circle.essential {
            out.push('!');
        }
    }
    out.push(if is_root { '}' } else { ')' });
    if !is_root && piece.outer_essential {
        out.push('!');
    }
}

impl fmt::Display for PieceConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A relevant piece with an even number of essential circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityViolation {
    pub piece: PiecePath,
    pub essential: usize,
}

impl fmt::Display for ParityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relevant piece {} has {} essential circles (must be odd)",
            self.piece, self.essential
        )
    }
}

pub fn parity_check(c: &PieceConfiguration) -> Result<(), Vec<ParityViolation>> {
    let violations: Vec<ParityViolation> = c
        .pieces()
        .into_iter()
        .filter(|(_, p)| p.relevant && p.essential_count() % 2 == 0)
        .map(|(piece, p)| ParityViolation {
            piece,
            essential: p.essential_count(),
        })
        .collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A boundary circle named from its piece: `None` is the outer circle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Side {
    pub piece: PiecePath,
    pub circle: Option<usize>,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.circle {
            Some(c) => write!(f, "{}@{c}", self.piece),
            None => write!(f, "{}@outer", self.piece),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    Parity(Vec<ParityViolation>),
    /// Essential circles of relevant pieces whose far side holds no other
    /// relevant piece.
    EssentialWithoutRelevant(Vec<Side>),
    NoRelevant,
    /// The absorbed arrangement failed validation.
    Invalid(Vec<Violation>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parity(vs) => {
                f.write_str("parity check failed:")?;
                for v in vs {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            ConfigError::EssentialWithoutRelevant(sides) => {
                f.write_str("essential circle with no relevant piece beyond it:")?;
                for s in sides {
                    write!(f, " {s};")?;
                }
                Ok(())
            }
            ConfigError::NoRelevant => f.write_str("configuration has no relevant piece"),
            ConfigError::Invalid(vs) => {
                f.write_str("absorbed result is not an arrangement:")?;
                for v in vs {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConfigError {}

/// Result of [`absorb`]: the arrangement of the kept relevant pieces, the
/// path of each kept piece in the input and output, and the relevant
/// pieces that were absorbed into their neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Absorbed {
    pub arrangement: Arrangement,
    pub map: Vec<(PiecePath, PiecePath)>,
    pub excluded: Vec<PiecePath>,
}

struct GraphSide {
    region: usize,
    essential: bool,
    circle: Option<usize>,
}

/// The configuration as a tree of pieces and regions. Node ids follow
/// pre-order, so every parent id is smaller than its children's.
struct Graph {
    parent: Vec<Option<usize>>,
    /// `Some` for piece nodes.
    pieces: Vec<Option<(PiecePath, bool, Vec<GraphSide>)>>,
    /// Relevant pieces in the subtree of each node.
    below: Vec<usize>,
}

impl Graph {
    fn new(c: &PieceConfiguration) -> Self {
        let mut g = Graph {
            parent: Vec::new(),
            pieces: Vec::new(),
            below: Vec::new(),
        };
        g.add_piece(c.root(), PiecePath::root(), None);
        g.below = g.pieces.iter().map(|p| usize::from(matches!(p, Some((_, true, _))))).collect();
        for v in (1..g.parent.len()).rev() {
            let p = g.parent[v].expect("non-root node");
            g.below[p] += g.below[v];
        }
        g
    }

    fn add_piece(&mut self, piece: &ConfigPiece, path: PiecePath, parent: Option<usize>) {
        let id = self.parent.len();
        self.parent.push(parent);
        self.pieces.push(None);
        let mut sides = Vec::new();
        if let Some(r) = parent {
            sides.push(GraphSide {
                region: r,
                essential: piece.outer_essential,
                circle: None,
            });
        }
        for (c, circle) in piece.circles.iter().enumerate() {
            let r = self.parent.len();
            self.parent.push(Some(id));
            self.pieces.push(None);
            sides.push(GraphSide {
                region: r,
                essential: circle.essential,
                circle: Some(c),
            });
            for (k, child) in circle.children.iter().enumerate() {
                self.add_piece(child, path.child(c, k), Some(r));
            }
        }
        self.pieces[id] = Some((path, piece.relevant, sides));
    }

    fn relevant_total(&self) -> usize {
        self.below[0]
    }

    /// Whether the far side of `side` of piece `p` holds a relevant piece.
    fn leads_to_relevant(&self, p: usize, side: &GraphSide) -> bool {
        match side.circle {
            Some(_) => self.below[side.region] > 0,
            None => self.relevant_total() > self.below[p],
        }
    }

    fn piece_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.pieces.len()).filter(|&v| self.pieces[v].is_some())
    }

    fn sides(&self, p: usize) -> &[GraphSide] {
        &self.pieces[p].as_ref().expect("piece node").2
    }

    fn path(&self, p: usize) -> &PiecePath {
        &self.pieces[p].as_ref().expect("piece node").0
    }

    fn is_relevant(&self, p: usize) -> bool {
        self.pieces[p].as_ref().is_some_and(|x| x.1)
    }
}

/// Builds the arrangement of relevant pieces. Each relevant piece keeps the
/// circles whose far side still holds a kept relevant piece; the others are
/// capped off by gluing in the disks they bound. A relevant piece whose only
/// circles leading to other relevant pieces are one essential and one
/// inessential circle is an annulus in the result and is absorbed instead of
/// kept. Output pieces have one boundary only when the input piece had a
/// single essential circle.
pub fn absorb(c: &PieceConfiguration) -> Result<Absorbed, ConfigError> {
    parity_check(c).map_err(ConfigError::Parity)?;
    let g = Graph::new(c);
    if g.relevant_total() == 0 {
        return Err(ConfigError::NoRelevant);
    }
    let mut dead_ends = Vec::new();
    for p in g.piece_ids().filter(|&p| g.is_relevant(p)) {
        for side in g.sides(p) {
            if side.essential && !g.leads_to_relevant(p, side) {
                dead_ends.push(Side {
                    piece: g.path(p).clone(),
                    circle: side.circle,
                });
            }
        }
    }
    if !dead_ends.is_empty() {
        return Err(ConfigError::EssentialWithoutRelevant(dead_ends));
    }

    let mut kept = alloc::vec![false; g.parent.len()];
    let mut excluded = Vec::new();
    for p in g.piece_ids().filter(|&p| g.is_relevant(p)) {
        let essential = g.sides(p).iter().filter(|s| s.essential).count();
        let pseudo = g
            .sides(p)
            .iter()
            .filter(|s| !s.essential && g.leads_to_relevant(p, s))
            .count();
        if essential == 1 && pseudo == 1 {
            excluded.push(g.path(p).clone());
        } else {
            kept[p] = true;
        }
    }

    // regions of the result: components of the tree with kept pieces removed
    let mut uf = UnionFind::with_len(g.parent.len());
    for v in 0..g.parent.len() {
        if let Some(p) = g.parent[v] {
            if !kept[v] && !kept[p] {
                uf.union(p, v);
            }
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in g.piece_ids().filter(|&p| kept[p]) {
        for side in g.sides(p) {
            members.entry(uf.find(side.region)).or_default().push(p);
        }
    }

    let root = g.piece_ids().find(|&p| kept[p]).expect("a relevant piece is kept");
    let mut map = Vec::new();
    let out_root = grow(&g, &mut uf, &members, root, None, PiecePath::root(), &mut map);
    let arrangement = Arrangement::new(out_root);
    arrangement.validate(Threshold::ONE).map_err(ConfigError::Invalid)?;
    map.sort();
    Ok(Absorbed {
        arrangement,
        map,
        excluded,
    })
}

fn grow(
    g: &Graph,
    uf: &mut UnionFind,
    members: &BTreeMap<usize, Vec<usize>>,
    p: usize,
    from: Option<usize>,
    path: PiecePath,
    map: &mut Vec<(PiecePath, PiecePath)>,
) -> Piece {
    map.push((g.path(p).clone(), path.clone()));
    let mut circles = Vec::new();
    for side in g.sides(p) {
        let region = uf.find(side.region);
        if Some(region) == from {
            continue;
        }
        let others: Vec<usize> = members[&region].iter().copied().filter(|&q| q != p).collect();
        if others.is_empty() {
            continue;
        }
        let c = circles.len();
        let children = others
            .into_iter()
            .enumerate()
            .map(|(k, q)| grow(g, uf, members, q, Some(region), path.child(c, k), map))
            .collect();
        circles.push(Circle::with(children));
    }
    Piece { circles }
}

/// A random configuration that passes the preconditions of [`absorb`]: at
/// least two relevant pieces, and every relevant piece has an odd number of
/// essential circles, each leading to another relevant piece. Irrelevant
/// pieces get arbitrary flags.
pub fn random_configuration<R: Rng + ?Sized>(rng: &mut R, max_pieces: usize) -> PieceConfiguration {
    let (shape, _) = random_build(rng, max_pieces.max(2), Threshold::new(3).expect("odd"));
    let mut c = PieceConfiguration::unflagged(&shape);
    let paths: Vec<PiecePath> = c.pieces().into_iter().map(|(p, _)| p).collect();
    for path in &paths {
        let relevant = rng.gen_bool(0.5);
        let piece = c.piece_mut(path).expect("listed");
        piece.relevant = relevant;
        if !path.is_root() {
            piece.outer_essential = rng.gen_bool(0.5);
        }
        for circle in &mut piece.circles {
            circle.essential = rng.gen_bool(0.5);
        }
    }
    while c.pieces().iter().filter(|(_, p)| p.relevant).count() < 2 {
        let path = &paths[rng.gen_range(0..paths.len())];
        c.piece_mut(path).expect("listed").relevant = true;
    }
    let g = Graph::new(&c);
    for p in g.piece_ids().filter(|&p| g.is_relevant(p)) {
        let mut open: Vec<Option<usize>> = g
            .sides(p)
            .iter()
            .filter(|s| g.leads_to_relevant(p, s))
            .map(|s| s.circle)
            .collect();
        open.shuffle(rng);
        let k = 2 * rng.gen_range(0..open.len().div_ceil(2)) + 1;
        let piece = c.piece_mut(g.path(p)).expect("listed");
        piece.outer_essential = false;
        for circle in &mut piece.circles {
            circle.essential = false;
        }
        for side in &open[..k] {
            match side {
                None => piece.outer_essential = true,
                Some(i) => piece.circles[*i].essential = true,
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{canonical_form, parse_arrangement, parse_configuration};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(s: &str) -> PieceConfiguration {
        parse_configuration(s).unwrap()
    }

    #[test]
    fn parity() {
        assert!(parity_check(&cfg("*{ [ *()! ]! }")).is_ok());
        let v = parity_check(&cfg("*{ [ *()! ]! [ *()! ]! }")).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].piece, PiecePath::root());
        assert_eq!(v[0].essential, 2);
        assert!(parity_check(&cfg("{ [ ()! ]! [ () ]! }")).is_ok());
        assert!(matches!(absorb(&cfg("*{ [ *()! ]! [ *()! ]! }")), Err(ConfigError::Parity(_))));
    }

    #[test]
    fn text_round_trip() {
        let text = "*{[*()!]![*([()]!)]}";
        assert_eq!(cfg(text).to_text(), text);
    }

    #[test]
    fn arrangement_absorbs_to_itself() {
        for s in ["*{[*()!]!}", "*{[*()!*([*()!]![*()!]!)!]!}"] {
            let out = absorb(&cfg(s)).unwrap();
            assert_eq!(out.arrangement, cfg(s).shape());
            assert!(out.excluded.is_empty());
            assert_eq!(out.map.len(), out.arrangement.piece_count());
        }
    }

    #[test]
    fn pseudo_essential_circles_survive() {
        let out = absorb(&cfg("*{ [ *()! ]! [ *()! ] [ *()! ] }")).unwrap();
        assert_eq!(out.arrangement.to_bracket(), "{[()][()][()]}");
        assert_eq!(out.arrangement.root().boundary_count(true), 3);
    }

    #[test]
    fn irrelevant_pieces_are_glued_away() {
        // the middle piece is irrelevant; its region merges with its circles
        let out = absorb(&cfg("*{ [ ( [ *()! ] [ *()! ] [ () ] ) ]! }")).unwrap();
        assert_eq!(
            canonical_form(&out.arrangement),
            canonical_form(&parse_arrangement("{[()()]}").unwrap())
        );
        // a relevant piece's inessential empty circle is capped off
        let out = absorb(&cfg("*{ [ *( [ () ] )! ]! }")).unwrap();
        assert_eq!(out.arrangement, Arrangement::two_disks());
    }

    #[test]
    fn annular_relevant_piece_is_excluded() {
        let c = cfg("*{ [ *( [ *()! ] )! ]! }");
        let out = absorb(&c).unwrap();
        assert_eq!(out.excluded, [PiecePath::root().child(0, 0)]);
        assert_eq!(out.arrangement, Arrangement::two_disks());
        assert_eq!(out.map.len(), 2);
    }

    #[test]
    fn precondition_errors() {
        assert_eq!(absorb(&cfg("{ [ () ] }")), Err(ConfigError::NoRelevant));
        match absorb(&cfg("*{ [ ()! ]! }")) {
            Err(ConfigError::EssentialWithoutRelevant(sides)) => {
                assert_eq!(sides[0].to_string(), "root@0");
            }
            other => panic!("{other:?}"),
        }
    }

    /// A circle of a kept piece survives exactly when it is essential or a
    /// kept piece lies beyond it.
    fn surviving_circles(c: &PieceConfiguration, out: &Absorbed, input: &PiecePath) -> usize {
        let g = Graph::new(c);
        let kept: Vec<&PiecePath> = out.map.iter().map(|(i, _)| i).collect();
        let p = g.piece_ids().find(|&p| g.path(p) == input).unwrap();
        g.sides(p)
            .iter()
            .filter(|s| {
                s.essential
                    || g
                        .piece_ids()
                        .filter(|&q| q != p && kept.contains(&g.path(q)))
                        .any(|q| side_contains(&g, p, s, q))
            })
            .count()
    }

    fn side_contains(g: &Graph, p: usize, side: &GraphSide, q: usize) -> bool {
        let mut v = q;
        while let Some(u) = g.parent[v] {
            if u == p {
                return side.circle.is_some() && side.region == v;
            }
            v = u;
        }
        side.circle.is_none()
    }

    #[test]
    fn random_configurations_absorb() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let c = random_configuration(&mut rng, 30);
            let out = absorb(&c).unwrap();
            assert!(out.arrangement.is_valid(Threshold::ONE), "{c}");
            for (input, output) in &out.map {
                let piece = c.piece(input).unwrap();
                assert!(piece.relevant);
                let s = out.arrangement.piece(output).unwrap().boundary_count(output.is_root());
                assert_eq!(s, surviving_circles(&c, &out, input), "{c} {input}");
                if s == 1 {
                    assert_eq!(piece.essential_count(), 1, "{c} {input}");
                }
            }
        }
    }
}
