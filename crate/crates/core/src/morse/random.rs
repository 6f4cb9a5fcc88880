use alloc::vec::Vec;

use rand::Rng;

use super::{MorseEvent, MorsePresentation};
use crate::union_find::UnionFind;

/// A random knot: `steps` random events with at most `max_strands` strands,
/// then caps down to nothing. A cap never closes a component early, so the
/// word always traces a single component.
pub fn random_knot<R: Rng + ?Sized>(rng: &mut R, steps: usize, max_strands: usize) -> MorsePresentation {
    let max_strands = max_strands.max(2);
    let mut events = alloc::vec![MorseEvent::cup(0)];
    let mut sets = UnionFind::default();
    let mut open = alloc::vec![2usize];
    let first = sets.make_set();
    let mut strands: Vec<usize> = alloc::vec![first, first];

    let allowed_caps = |sets: &mut UnionFind, open: &[usize], strands: &[usize]| -> Vec<usize> {
        let w = strands.len();
        (0..w - 1)
            .filter(|&i| {
                let (a, b) = (sets.find(strands[i]), sets.find(strands[i + 1]));
                a != b || open[a] > 2 || w == 2
            })
            .collect()
    };

    let cap = |sets: &mut UnionFind, open: &mut [usize], strands: &mut Vec<usize>, i: usize| {
        let (a, b) = (sets.find(strands[i]), sets.find(strands[i + 1]));
        let ends = if a == b { open[a] } else { open[a] + open[b] };
        let root = sets.union(a, b);
        open[root] = ends - 2;
        strands.drain(i..i + 2);
    };

    for _ in 0..steps {
        let w = strands.len();
        match rng.gen_range(0..3) {
            0 if w + 2 <= max_strands => {
                let i = rng.gen_range(0..=w);
                let id = sets.make_set();
                open.push(2);
                strands.splice(i..i, [id, id]);
                events.push(MorseEvent::cup(i));
            }
            1 if w >= 4 => {
                let choices = allowed_caps(&mut sets, &open, &strands);
                let i = choices[rng.gen_range(0..choices.len())];
                cap(&mut sets, &mut open, &mut strands, i);
                events.push(MorseEvent::cap(i));
            }
            _ => {
                let i = rng.gen_range(0..w - 1);
                strands.swap(i, i + 1);
                events.push(if rng.gen_bool(0.5) {
                    MorseEvent::cross_pos(i)
                } else {
                    MorseEvent::cross_neg(i)
                });
            }
        }
    }
    while !strands.is_empty() {
        let choices = allowed_caps(&mut sets, &open, &strands);
        let i = choices[rng.gen_range(0..choices.len())];
        cap(&mut sets, &mut open, &mut strands, i);
        events.push(MorseEvent::cap(i));
    }
    MorsePresentation::new(events).expect("caps never close a component early")
}
