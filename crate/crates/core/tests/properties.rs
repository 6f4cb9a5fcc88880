use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trunkkit_core::arrangement::{
    canonical_form, deconstruct, parse_arrangement, random_build, Arrangement, Circle, Piece, Threshold,
};
use trunkkit_core::morse::{parse_morse, random_knot, EventKind, MorseDiagram, MorseEvent, MorsePresentation};
use trunkkit_core::pattern::{cable, satellite, twist_tangle, CylinderTangle, Sign};

fn knot(seed: u64) -> MorsePresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = rng.gen_range(0..25);
    random_knot(&mut rng, steps, 8)
}

fn threshold(odd: u32) -> Threshold {
    Threshold::new(2 * odd + 1).unwrap()
}

/// Randomly permutes circles and children without changing the sphere
/// picture of the root piece.
fn shuffle(piece: &mut Piece, rng: &mut ChaCha8Rng) {
    piece.circles.shuffle(rng);
    for circle in &mut piece.circles {
        circle.children.shuffle(rng);
        circle.children.iter_mut().for_each(|p| shuffle(p, rng));
    }
}

/// Re-roots at a random child of the root. The region around the child
/// becomes a circle of the new root holding the old root, which turns the
/// circle it lost into its outer circle, and the child's former siblings.
fn reroot(arr: &Arrangement, rng: &mut ChaCha8Rng) -> Arrangement {
    let mut old = arr.root().clone();
    let c = rng.gen_range(0..old.circles.len());
    let mut region = old.circles.remove(c).children;
    let k = rng.gen_range(0..region.len());
    let mut new = region.remove(k);
    region.insert(0, old);
    new.circles.push(Circle::with(region));
    Arrangement::new(new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn width_and_trunk_read_off_profile(seed in any::<u64>()) {
        let k = knot(seed);
        let p = k.level_profile();
        prop_assert_eq!(k.width(), p.widths().iter().sum::<usize>());
        prop_assert_eq!(k.trunk(), *p.widths().iter().max().unwrap());
        prop_assert!(k.width().is_multiple_of(2) && k.trunk().is_multiple_of(2));
        prop_assert!(p.widths().iter().all(|&w| w >= 2 && w % 2 == 0));
        let critical = k.events().iter().filter(|e| e.kind.is_critical()).count();
        prop_assert_eq!(p.len(), critical - 1);
    }

    #[test]
    fn dsl_round_trip(seed in any::<u64>()) {
        let k = knot(seed);
        prop_assert_eq!(parse_morse(&k.to_dsl()).unwrap(), k);
    }

    #[test]
    fn sign_flips_keep_components(seed in any::<u64>()) {
        let k = knot(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let flipped: Vec<MorseEvent> = k
            .events()
            .iter()
            .map(|e| if e.kind.is_crossing() && rng.gen_bool(0.5) {
                MorseEvent::new(e.kind.flipped(), e.position)
            } else {
                *e
            })
            .collect();
        let d = MorseDiagram::new(flipped).unwrap();
        prop_assert_eq!(d.component_count(), 1);
        prop_assert_eq!(d.level_profile(), k.level_profile());
    }

    #[test]
    fn connected_sum_trunk_and_width(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (knot(s1), knot(s2));
        let sum = a.connected_sum(&b);
        prop_assert_eq!(sum.component_count(), 1);
        prop_assert_eq!(sum.trunk(), a.trunk().max(b.trunk()));
        prop_assert_eq!(sum.width(), a.width() + b.width() - 2);
    }

    #[test]
    fn canceling_pair(seed in any::<u64>(), level in any::<usize>(), strand in any::<usize>()) {
        let k = knot(seed);
        let widths = k.level_profile().0;
        let level = level % widths.len();
        let w = widths[level];
        let z = k.insert_canceling_pair(level, strand % w).unwrap();
        prop_assert_eq!(z.component_count(), 1);
        // level w becomes w, w + 2, w
        prop_assert_eq!(z.width(), k.width() + 2 * w + 2);
        prop_assert!(z.trunk() >= k.trunk());
        prop_assert_eq!(z.trunk() > k.trunk(), w == k.trunk());
    }

    #[test]
    fn cabling_scales_profile(seed in any::<u64>(), n in 1usize..4) {
        let k = knot(seed);
        let c = cable(&k, n).unwrap();
        let scaled: Vec<usize> = k.level_profile().widths().iter().map(|w| n * w).collect();
        prop_assert_eq!(c.companion_profile().0, scaled);
        prop_assert_eq!(c.companion_profile().width(), n * k.width());
        prop_assert_eq!(c.diagram().trunk(), n * k.trunk());
        prop_assert_eq!(c.diagram().component_count(), n);
    }

    #[test]
    fn satellite_dominates_cable(seed in any::<u64>(), n in 1usize..4, level in any::<usize>()) {
        let k = knot(seed);
        let level = level % k.level_profile().len();
        let sat = satellite(&k, &twist_tangle(n).unwrap(), level).unwrap();
        prop_assert!(sat.knot().trunk() >= n * k.trunk());
        let scaled: Vec<usize> = k.level_profile().widths().iter().map(|w| n * w).collect();
        prop_assert_eq!(sat.companion_profile().0, scaled);
        if n == 1 {
            prop_assert_eq!(sat.knot().level_profile(), k.level_profile());
        }
    }

    #[test]
    fn winding_at_most_wrapping(signs in prop::collection::vec(any::<bool>(), 1..5), swaps in prop::collection::vec(0usize..4, 0..6)) {
        let signs: Vec<Sign> = signs.into_iter().map(|s| if s { Sign::Plus } else { Sign::Minus }).collect();
        let n = signs.len();
        let events: Vec<MorseEvent> = swaps
            .into_iter()
            .filter(|&i| i + 1 < n)
            .map(MorseEvent::cross_pos)
            .collect();
        if let Ok(t) = CylinderTangle::new(signs, events) {
            prop_assert!(t.winding_number() as usize <= t.presentation_wrapping());
        }
    }

    #[test]
    fn arrangement_text_round_trip(seed in any::<u64>(), a in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (arr, _) = random_build(&mut rng, 40, threshold(a));
        prop_assert_eq!(parse_arrangement(&arr.to_bracket()).unwrap(), arr);
    }

    #[test]
    fn canonical_form_ignores_order_and_root(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (arr, _) = random_build(&mut rng, 30, Threshold::ONE);
        let mut shuffled = arr.root().clone();
        shuffle(&mut shuffled, &mut rng);
        let shuffled = Arrangement::new(shuffled);
        prop_assert_eq!(canonical_form(&shuffled), canonical_form(&arr));
        let moved = reroot(&arr, &mut rng);
        prop_assert_eq!(canonical_form(&moved), canonical_form(&arr));
        prop_assert_eq!(moved.piece_count(), arr.piece_count());
    }

    #[test]
    fn moves_are_sound(seed in any::<u64>(), a in 0u32..3) {
        let a = threshold(a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (arr, trace) = random_build(&mut rng, 60, a);
        prop_assert!(arr.is_valid(a));
        prop_assert!(trace.deltas_match());
        prop_assert!(trace.counters.iter().all(|&(x, y)| x <= y));
        let mut state = Arrangement::two_disks();
        for m in &trace.steps {
            state = state.apply_move(m, a).unwrap();
            prop_assert!(state.is_valid(a));
        }
        let back = deconstruct(&arr, a).unwrap();
        prop_assert!(back.deltas_match());
        let mut state = arr.clone();
        for m in &back.steps {
            state = state.apply_move(m, a).unwrap();
            prop_assert!(state.is_valid(a), "reversal {} left {}", m, state);
        }
        prop_assert_eq!(state, Arrangement::two_disks());
    }
}

#[test]
fn cup_positions_in_random_knots_are_in_range() {
    for seed in 0..50 {
        let k = knot(seed);
        let mut w = 0;
        for e in k.events() {
            match e.kind {
                EventKind::Cup => assert!(e.position <= w),
                _ => assert!(e.position + 2 <= w),
            }
            w = e.apply(w).unwrap();
        }
    }
}
