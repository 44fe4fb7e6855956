//! Bundled example instances on six-vertex cycles: a locked uniform cycle,
//! a non-uniform no-instance, and a non-uniform yes-instance.

use crate::instance::{parse_instance, Instance};

pub const FIG4A: &str = include_str!("../fixtures/fig4a.tsd");
pub const FIG4B: &str = include_str!("../fixtures/fig4b.tsd");
pub const FIG4C: &str = include_str!("../fixtures/fig4c.tsd");

/// Uniform 6-cycle, tokens {1,3,5} to {2,4,6}: every slide breaks
/// independence, so the configuration is locked.
pub fn fig4a() -> Instance {
    parse_instance(FIG4A).expect("bundled fixture is valid")
}

/// 6-cycle with arcs (1,2) and (3,2) meeting head-on at 2, tokens {1,5} to
/// {4,6}: a no-instance.
pub fn fig4b() -> Instance {
    parse_instance(FIG4B).expect("bundled fixture is valid")
}

/// 6-cycle with out-degree 2 at vertex 1, tokens {1,5} to {4,6}: a
/// yes-instance with shortest schedule length 4.
pub fn fig4c() -> Instance {
    parse_instance(FIG4C).expect("bundled fixture is valid")
}
