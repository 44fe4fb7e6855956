//! Token sliding reconfiguration on oriented graphs.
//!
//! Tokens occupy an independent set and slide one at a time along arcs into
//! unoccupied vertices, never becoming adjacent. The crate decides whether a
//! source configuration can reach a target configuration, exactly by
//! breadth-first search and in polynomial time on oriented cycles, path
//! forests and cographs; it also ships three instance transformations (into
//! planar-style gadget graphs, split graphs and bipartite graphs) with
//! witness lifting and projection, and a seeded verification harness that
//! cross-checks all of the above.
//!
//! The split and bipartite transformations preserve answers; the edge-gadget
//! one preserves them in the forward direction only (see [`reduction`] for
//! the exact guarantees and [`campaign`] for the machinery that checks them).

pub mod campaign;
pub mod classify;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod mis;
pub mod reduction;
pub mod solver;

/// Compiles and runs every code block in the guide, so the book and the
/// crate cannot drift apart.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/transformations.md")]
    mod transformations {}
    #[doc = include_str!("../../../book/src/campaigns.md")]
    mod campaigns {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
