//! File formats, seeded batch verification and the command-line front end
//! for `fracture-lab-core`.

pub mod cli;
pub mod formats;
pub mod verify;
