//! Graded free modules and matrices, syzygies, minimal resolutions and their checks.

pub mod exactness;
pub mod free;
pub mod module;
pub mod resolve;
pub mod syzygy;

pub use exactness::{verify_exactness, ExactnessReport};
pub use free::{FreeElem, GradedFreeModule, GradedMatrix, Layout, LayoutMul};
pub use module::ModulePresentation;
pub use resolve::{
    betti_growth_check, dual_presentation, minimal_resolution, minimal_resolution_with, Completeness, DualPresentation,
    GrowthReport, GrowthRow, ResolveOptions, Resolution,
};
pub use syzygy::{certifying_cap, minimal_column_subset, minimalize, syzygy_step, syzygy_step_with, Syzygies};
