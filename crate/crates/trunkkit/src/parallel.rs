//! Breadth-first enumeration with the frontier expanded on a thread pool.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use dashmap::DashMap;
use rayon::prelude::*;

use trunkkit_core::arrangement::{
    canonical_form, enumerate, parse_arrangement, successors, Arrangement, ArrangementError, Enumeration, Threshold,
};

/// Same result as [`enumerate`] for any thread count. Each class is
/// represented by the arrangement its canonical string parses to, so the
/// output does not depend on which worker found it first.
pub fn enumerate_parallel(
    max_pieces: usize,
    a: Threshold,
    cap: usize,
    threads: usize,
) -> Result<Enumeration, ArrangementError> {
    if threads <= 1 {
        let e = enumerate(max_pieces, a, cap)?;
        let forms = canonical_representatives(e.forms().keys().cloned());
        return Ok(Enumeration::from_forms(a, max_pieces, forms));
    }
    if max_pieces < 2 {
        return Err(ArrangementError::PieceBudget { pieces: max_pieces });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        let seen: DashMap<String, ()> = DashMap::new();
        let start = Arrangement::two_disks();
        seen.insert(canonical_form(&start), ());
        let over = AtomicBool::new(false);
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            frontier = frontier
                .par_iter()
                .flat_map_iter(|arr| successors(arr, a, max_pieces))
                .filter_map(|(_, succ)| {
                    let key = canonical_form(&succ);
                    // insert-if-absent is atomic per shard
                    let fresh = seen.insert(key, ()).is_none();
                    if fresh && seen.len() > cap {
                        over.store(true, Ordering::Relaxed);
                    }
                    fresh.then_some(succ)
                })
                .collect();
            if over.load(Ordering::Relaxed) {
                return Err(ArrangementError::Budget { cap });
            }
        }
        let forms = canonical_representatives(seen.into_iter().map(|(k, _)| k));
        Ok(Enumeration::from_forms(a, max_pieces, forms))
    })
}

fn canonical_representatives(keys: impl Iterator<Item = String>) -> BTreeMap<String, Arrangement> {
    keys.map(|k| {
        let arr = parse_arrangement(&k).expect("canonical strings parse");
        (k, arr)
    })
    .collect()
}
