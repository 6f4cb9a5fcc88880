//! Trunk and width of knots in Morse position, satellite construction by
//! cabling and pattern insertion, and the combinatorics of arrangements of
//! pieces on a sphere.
//!
//! The crate is `no_std` (it needs `alloc`). File IO, rendering and the
//! command-line front end live in the `trunkkit` crate.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod arrangement;
pub mod bounds;
pub mod morse;
pub mod pattern;

mod union_find;

/// Exact rational used for every ratio and bound comparison.
pub type Rational = num_rational::Ratio<i64>;

pub use arrangement::{Arrangement, Move, MoveTrace, PieceConfiguration, Threshold};
pub use bounds::{AuditReport, CertifiedDatum, Verdict};
pub use morse::{EventKind, LevelProfile, MorseDiagram, MorseError, MorseEvent, MorsePresentation};
pub use pattern::{Cable, CylinderTangle, PatternError, Satellite, Sign};
