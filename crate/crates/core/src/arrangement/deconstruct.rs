use alloc::vec::Vec;

use super::{Arrangement, ArrangementError, Move, MoveTrace, PiecePath, Threshold};

/// Reduces a valid arrangement to two disks by alternating two procedures:
/// remove surplus disks until no circle holds more than one disk, then
/// reverse-inflate an innermost multi-boundary piece.
///
/// The returned trace starts at `arrangement` and consists of reversals
/// only; [`MoveTrace::reversed`] turns it into a forward build from two
/// disks.
pub fn deconstruct(arrangement: &Arrangement, a: Threshold) -> Result<MoveTrace, ArrangementError> {
    arrangement.validate(a).map_err(ArrangementError::Invalid)?;
    let mut arr = arrangement.clone();
    let mut trace = MoveTrace::start(&arr, a);
    let two = Arrangement::two_disks();
    // each step removes at least one piece
    let limit = arrangement.piece_count();
    while arr != two {
        if trace.len() > limit {
            return Err(ArrangementError::Stuck { steps: trace.len() });
        }
        remove_surplus_disks(&mut arr, a, &mut trace)?;
        if arr == two {
            break;
        }
        let target = innermost_multi_boundary(&arr);
        let Some((piece, boundaries)) = target else {
            return Err(ArrangementError::Stuck { steps: trace.len() });
        };
        let m = Move::Deflate { piece, boundaries };
        arr.apply_in_place(&m, a)?;
        trace.record(m, &arr);
    }
    Ok(trace)
}

/// Procedure 1. Circles are visited in reverse pre-order so that removing a
/// child never shifts a path still waiting to be visited.
fn remove_surplus_disks(
    arr: &mut Arrangement,
    a: Threshold,
    trace: &mut MoveTrace,
) -> Result<(), ArrangementError> {
    for circle in arr.circles().into_iter().rev() {
        let children = &arr.piece(&circle.piece).expect("listed").circles[circle.circle].children;
        let disks: Vec<usize> = (0..children.len())
            .filter(|&k| children[k].circles.is_empty())
            .collect();
        for &slot in disks.iter().skip(1).rev() {
            let m = Move::RemoveDisk {
                circle: circle.clone(),
                slot,
            };
            arr.apply_in_place(&m, a)?;
            trace.record(m, arr);
        }
    }
    Ok(())
}

/// Procedure 2 target: the deepest non-root piece with inner circles (all
/// its inner circles then hold a single disk), or the root when every other
/// piece is a disk.
fn innermost_multi_boundary(arr: &Arrangement) -> Option<(PiecePath, usize)> {
    let pieces = arr.pieces();
    let deepest = pieces
        .iter()
        .filter(|(p, s)| !p.is_root() && *s > 1)
        .max_by_key(|(p, _)| p.0.len());
    match deepest {
        Some(found) => Some(found.clone()),
        None => {
            let s = arr.root().circles.len();
            (s > 1).then(|| (PiecePath::root(), s))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{canonical_form, extremal_arrangement, parse_arrangement, random_build};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_disks_needs_nothing() {
        let t = deconstruct(&Arrangement::two_disks(), Threshold::ONE).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn five_piece_example() {
        let five = parse_arrangement("{ [ () ( [()] [()] ) ] }").unwrap();
        let t = deconstruct(&five, Threshold::ONE).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.steps.iter().any(|m| matches!(m, Move::RemoveDisk { .. })));
        assert!(t.steps.iter().any(|m| matches!(m, Move::Deflate { boundaries: 3, .. })));
        assert_eq!(t.counters.first(), Some(&(4, 5)));
        assert_eq!(t.counters.last(), Some(&(2, 2)));
        let forward = t.reversed(&Arrangement::two_disks()).unwrap();
        let rebuilt = forward.replay(&Arrangement::two_disks()).unwrap();
        assert_eq!(canonical_form(&rebuilt), canonical_form(&five));
    }

    #[test]
    fn extremal_unwinds_by_deflation() {
        let a = Threshold::new(3).unwrap();
        let t = deconstruct(&extremal_arrangement(a, 3), a).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t
            .steps
            .iter()
            .all(|m| matches!(m, Move::Deflate { boundaries: 5, .. })));
    }

    #[test]
    fn root_piece_is_deflated_last() {
        let arr = parse_arrangement("{[()()][()][()]}").unwrap();
        let t = deconstruct(&arr, Threshold::ONE).unwrap();
        assert_eq!(t.len(), 2);
        assert!(matches!(&t.steps[1], Move::Deflate { piece, boundaries: 3 } if piece.is_root()));
    }

    #[test]
    fn invalid_input_is_rejected() {
        let bad = parse_arrangement("{ [ ( [()] ) ] }").unwrap();
        assert!(matches!(
            deconstruct(&bad, Threshold::ONE),
            Err(ArrangementError::Invalid(_))
        ));
    }

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for a in [1, 3, 5] {
            let a = Threshold::new(a).unwrap();
            for _ in 0..40 {
                let (arr, _) = random_build(&mut rng, 60, a);
                let t = deconstruct(&arr, a).unwrap();
                assert!(t.len() < arr.piece_count());
                assert!(t.deltas_match());
                let two = Arrangement::two_disks();
                assert_eq!(t.replay(&arr).unwrap(), two);
                let rebuilt = t.reversed(&two).unwrap().replay(&two).unwrap();
                assert_eq!(rebuilt, arr);
            }
        }
    }
}
