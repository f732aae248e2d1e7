//! Closed-form and semiclassical approximations to the angle model: harmonic
//! wells, WKB splittings with an averaged mass, the KHW/MG barrier-top
//! formula, the parabolic near-top formula and the longitudinal-field
//! formulas.

mod field;
mod harmonic;
mod splitting;

pub use field::{
    extract_suppression_chi, field_formulas, gap_linear_coefficient, ground_state_vs_field, matching_field_harmonic,
    saturation_and_matching_mass_route, ChiFit, FieldFormulaReport,
};
pub use harmonic::{harmonic_well, HarmonicWellReport};
pub use splitting::{
    action_integral, applicable_methods, asymmetric_wkb_splitting, averaged_mass, barrier_top, khw_mg_splitting,
    parabolic_splitting, penetrability, turning_points, wkb_splitting, ActionIntegral, BarrierTop, SplitMethod,
    SplittingEstimate,
};
