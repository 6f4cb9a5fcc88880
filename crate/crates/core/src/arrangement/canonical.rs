//! Canonical strings for arrangements up to homeomorphism of the sphere.
//!
//! The rooted tree is unrooted into a bipartite tree of pieces and
//! complementary regions. Each candidate root is encoded with sorted child
//! labels (rooted AHU encoding written in the bracket grammar), and the
//! smallest encoding wins. Candidates are the pieces of minimum eccentricity,
//! a set that depends only on the isomorphism class.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Arrangement, Piece};

/// Canonical bracket string: equal strings if and only if the arrangements
/// are isomorphic on the sphere. The string parses back to a representative.
pub fn canonical_form(arrangement: &Arrangement) -> String {
    let tree = SphereTree::from_arrangement(arrangement);
    let ecc = tree.eccentricities();
    let best = tree
        .pieces()
        .map(|p| ecc[p])
        .min()
        .expect("an arrangement has a root piece");
    tree.pieces()
        .filter(|&p| ecc[p] == best)
        .map(|p| tree.encode_root(p))
        .min()
        .expect("at least one candidate root")
}

/// The rooted canonical string for the stored root (no re-rooting).
pub fn rooted_form(arrangement: &Arrangement) -> String {
    SphereTree::from_arrangement(arrangement).encode_root(0)
}

/// Pieces and regions of the sphere; node 0 is the stored root piece.
pub(crate) struct SphereTree {
    is_piece: Vec<bool>,
    adj: Vec<Vec<usize>>,
}

impl SphereTree {
    pub(crate) fn from_arrangement(arrangement: &Arrangement) -> Self {
        let mut tree = SphereTree {
            is_piece: Vec::new(),
            adj: Vec::new(),
        };
        let root = tree.add(true);
        let mut stack: Vec<(usize, &Piece)> = vec![(root, arrangement.root())];
        while let Some((node, piece)) = stack.pop() {
            for circle in &piece.circles {
                let region = tree.add(false);
                tree.link(node, region);
                for child in &circle.children {
                    let c = tree.add(true);
                    tree.link(region, c);
                    stack.push((c, child));
                }
            }
        }
        tree
    }

    fn add(&mut self, is_piece: bool) -> usize {
        self.is_piece.push(is_piece);
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn pieces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(|&v| self.is_piece[v])
    }

    fn distances(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// In a tree the eccentricity of `v` is its distance to the farther end
    /// of any diameter.
    fn eccentricities(&self) -> Vec<usize> {
        let far = |d: &[usize]| (0..d.len()).max_by_key(|&v| (d[v], core::cmp::Reverse(v))).unwrap();
        let u = far(&self.distances(0));
        let du = self.distances(u);
        let v = far(&du);
        let dv = self.distances(v);
        du.iter().zip(&dv).map(|(&a, &b)| a.max(b)).collect()
    }

    fn encode_root(&self, root: usize) -> String {
        let mut parts: Vec<String> = self.adj[root].iter().map(|&r| self.encode_region(r, root)).collect();
        parts.sort_unstable();
        let mut s = String::from("{");
        s.extend(parts);
        s.push('}');
        s
    }

    fn encode_region(&self, region: usize, from: usize) -> String {
        let mut parts: Vec<String> = self.adj[region]
            .iter()
            .filter(|&&p| p != from)
            .map(|&p| self.encode_piece(p, region))
            .collect();
        parts.sort_unstable();
        let mut s = String::from("[");
        s.extend(parts);
        s.push(']');
        s
    }

    fn encode_piece(&self, piece: usize, from: usize) -> String {
        let mut parts: Vec<String> = self.adj[piece]
            .iter()
            .filter(|&&r| r != from)
            .map(|&r| self.encode_region(r, piece))
            .collect();
        parts.sort_unstable();
        let mut s = String::from("(");
        s.extend(parts);
        s.push(')');
        s
    }
}
