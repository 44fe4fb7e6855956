//! Class-dispatching front door: route each instance to the cheapest solver
//! that is guaranteed correct for its graph class.

use crate::classify::classify;
use crate::instance::Instance;
use crate::solver::{
    solve_cograph, solve_cycle, solve_exact, solve_path_forest, SearchLimits, SolveError,
    SolveResult,
};

/// Dispatches on the underlying graph class. `limits` applies only to the
/// exact fallback; the polynomial routes never truncate. Cycles are checked
/// before cographs so that a four-cycle, which is both, takes the cycle
/// route.
pub fn solve_auto(
    i: &Instance,
    limits: SearchLimits,
    want_witness: bool,
) -> Result<SolveResult, SolveError> {
    let report = classify(i.graph());
    if report.is_oriented_cycle {
        solve_cycle(i, want_witness)
    } else if report.is_path_forest {
        solve_path_forest(i, want_witness)
    } else if report.is_cograph {
        solve_cograph(i, want_witness)
    } else {
        solve_exact(i, limits, want_witness)
    }
}
