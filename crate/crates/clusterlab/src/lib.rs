//! Verification runner for `clusterlab-core`: case descriptors, the JSON
//! quiver format, JSON Lines verification reports and the suite driver
//! behind the `clusterlab` command.

pub mod case;
pub mod checks;
pub mod io;
pub mod orbits;
pub mod report;
pub mod suite;
