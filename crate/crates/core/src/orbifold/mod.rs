//! Orbifold modules: twisted sectors, shifts, group action, metric,
//! multiplication reconstruction and the axiom checker.

mod axioms;
mod gamma;
mod module;
mod wall;

pub use axioms::{
    parse_phase, scalar_from_json, scalar_json, AxiomReport, AxiomResult, FrobeniusData, FrobeniusJson, SectorData,
    Vector,
};
pub use gamma::{GammaEntry, GammaError, GammaTable, Scalar};
pub use module::{
    build_default, build_module, fixed_locus, restrict, EulerClass, GradedElement, OrbifoldError, OrbifoldModule,
    Sector, ShiftRow,
};
pub use wall::{WallReport, WallRow};
pub(crate) use axioms::Tally;
