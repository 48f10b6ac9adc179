//! Mirror dualization of orbifold modules, the dual invariants and the
//! degenerate multiplication on the dual.

mod degenerate;
mod shifts;
mod triple;

pub use degenerate::{degenerate_structure, DegenerateData, DegenerateReport, MaximalityReport, ProductTable};
pub use shifts::{step_shift_check, StepShiftRow};
pub use triple::{dualize_module, involution_check, DualError, DualModule, MetricData, ModuleTriple, TripleSector};
