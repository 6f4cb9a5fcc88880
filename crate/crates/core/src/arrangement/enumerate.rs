use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{canonical_form, Arrangement, ArrangementError, LambdaReport, Move, PiecePath, Threshold};

/// Default cap on the number of distinct arrangements kept during
/// enumeration.
pub const DEFAULT_MAX_SET: usize = 1_000_000;

/// All arrangements up to a piece budget, keyed and ordered by canonical
/// form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub threshold: Threshold,
    pub max_pieces: usize,
    forms: BTreeMap<String, Arrangement>,
}

impl Enumeration {
    pub fn from_forms(threshold: Threshold, max_pieces: usize, forms: BTreeMap<String, Arrangement>) -> Self {
        Enumeration {
            threshold,
            max_pieces,
            forms,
        }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &BTreeMap<String, Arrangement> {
        &self.forms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Arrangement)> {
        self.forms.iter()
    }

    /// `(piece count, number of classes)` for each piece count present.
    pub fn by_piece_count(&self) -> Vec<(usize, usize)> {
        let mut counts = BTreeMap::new();
        for arr in self.forms.values() {
            *counts.entry(arr.piece_count()).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    /// Members failing `x / y > a / (a + 1)`.
    pub fn lambda_violations(&self) -> Vec<(&String, LambdaReport)> {
        self.forms
            .iter()
            .map(|(k, arr)| (k, arr.check_lambda_bound(self.threshold)))
            .filter(|(_, r)| !r.pass)
            .collect()
    }
}

/// Every forward move from `arr` that stays within `max_pieces`: one disk
/// added to each circle and every admissible inflation of every disk.
pub fn successors(arr: &Arrangement, a: Threshold, max_pieces: usize) -> Vec<(Move, Arrangement)> {
    let y = arr.piece_count();
    if y >= max_pieces {
        return Vec::new();
    }
    let mut moves = Vec::new();
    for circle in arr.circles() {
        let slot = arr.piece(&circle.piece).expect("listed").circles[circle.circle]
            .children
            .len();
        moves.push(Move::AddDisk { circle, slot });
    }
    let disks: Vec<PiecePath> = arr
        .pieces()
        .into_iter()
        .filter(|(_, s)| *s == 1)
        .map(|(p, _)| p)
        .collect();
    for disk in disks {
        for s in (2..=max_pieces - y + 1).filter(|&s| a.admits(s)) {
            moves.push(Move::Inflate {
                disk: disk.clone(),
                boundaries: s,
            });
        }
    }
    moves
        .into_iter()
        .map(|m| {
            let next = arr.apply_move(&m, a).expect("generated moves are admissible");
            (m, next)
        })
        .collect()
}

/// Breadth-first closure of the two-disk arrangement under both moves,
/// deduplicated by canonical form.
pub fn enumerate(max_pieces: usize, a: Threshold, cap: usize) -> Result<Enumeration, ArrangementError> {
    if max_pieces < 2 {
        return Err(ArrangementError::PieceBudget { pieces: max_pieces });
    }
    let start = Arrangement::two_disks();
    let mut forms = BTreeMap::new();
    forms.insert(canonical_form(&start), start.clone());
    let mut frontier = alloc::vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for arr in &frontier {
            for (_, succ) in successors(arr, a, max_pieces) {
                let key = canonical_form(&succ);
                if forms.contains_key(&key) {
                    continue;
                }
                if forms.len() >= cap {
                    return Err(ArrangementError::Budget { cap });
                }
                forms.insert(key, succ.clone());
                next.push(succ);
            }
        }
        frontier = next;
    }
    Ok(Enumeration::from_forms(a, max_pieces, forms))
}
