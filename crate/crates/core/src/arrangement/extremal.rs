use alloc::vec::Vec;

use super::{Arrangement, Move, MoveTrace, PiecePath, Threshold};
use crate::Rational;

/// Two disks followed by `t` inflations with `a + 2` boundaries, each applied
/// to the newest disk. Every step adds `a` pieces counted by `x` and `a + 1`
/// pieces in total, the slowest growth of `x / y` the moves allow.
pub fn extremal_arrangement(a: Threshold, t: usize) -> Arrangement {
    extremal_trace(a, t).0
}

pub fn extremal_trace(a: Threshold, t: usize) -> (Arrangement, MoveTrace) {
    let s = a.get() + 2;
    let mut arr = Arrangement::two_disks();
    let mut trace = MoveTrace::start(&arr, a);
    let mut disk = PiecePath::root().child(0, 0);
    for _ in 0..t {
        let m = Move::Inflate {
            disk: disk.clone(),
            boundaries: s,
        };
        arr.apply_in_place(&m, a).expect("a + 2 is always admissible");
        trace.record(m, &arr);
        disk = disk.child(s - 2, 0);
    }
    (arr, trace)
}

/// `(2 + t a) / (2 + t (a + 1))`.
pub fn extremal_formula(a: Threshold, t: usize) -> Rational {
    let (a, t) = (a.get() as i64, t as i64);
    Rational::new(2 + t * a, 2 + t * (a + 1))
}

/// `x_t / y_t` for `t = 0..=t_max`, read off the built arrangements.
pub fn extremal_sequence(a: Threshold, t_max: usize) -> Vec<Rational> {
    let (_, trace) = extremal_trace(a, t_max);
    trace
        .counters
        .iter()
        .map(|&(x, y)| Rational::new(x as i64, y as i64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_formula() {
        let a1 = Threshold::ONE;
        let six = extremal_arrangement(a1, 2);
        assert_eq!((six.lambda_count(a1), six.piece_count()), (4, 6));
        assert!(six.is_valid(a1));
        let seq = extremal_sequence(a1, 3);
        let expect = [(1, 1), (3, 4), (2, 3), (5, 8)].map(|(n, d)| Rational::new(n, d));
        assert_eq!(seq, expect);
        let a3 = Threshold::new(3).unwrap();
        assert_eq!(extremal_sequence(a3, 2), [(1, 1), (5, 6), (4, 5)].map(|(n, d)| Rational::new(n, d)));
    }

    #[test]
    fn approaches_bound_from_above() {
        for a in [1, 3, 5] {
            let a = Threshold::new(a).unwrap();
            let seq = extremal_sequence(a, 30);
            for (t, v) in seq.iter().enumerate() {
                assert_eq!(*v, extremal_formula(a, t));
                assert!(*v > a.bound());
            }
            assert!(seq.windows(2).all(|w| w[1] < w[0]));
        }
    }
}
