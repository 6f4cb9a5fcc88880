//! File formats, diagram rendering, parallel enumeration and the `trunkkit`
//! command-line front end over [`trunkkit_core`].

pub mod cli;
pub mod io;
pub mod parallel;
pub mod render;

pub use trunkkit_core as core;
