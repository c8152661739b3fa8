//! Explicit defect families, certified scans, bound verifiers and constants.

mod bounds;
mod export;
mod families;
mod scan;
mod verify;

pub use bounds::{compute_cs, cs_series_term, f_bounds, CsEnclosure, FBoundsReport, FLowerBound};
pub use export::{catalog_csv, catalog_json, CatalogRecord, CompletenessRecord, EntryRecord};
pub use families::{
    knuth_forms, phi, phi_exponents, phi_inverse, sk_prefix, sk_value, t_set_attainment, t_set_values, TAttainment,
};
pub use scan::{enumerate_defects, q_empirical, Catalog, CatalogEntry, Completeness, QEstimate};
pub use verify::{
    verify_knuth_stolarsky, verify_schonhage, verify_scholz_brauer, BoundViolation, ScholzBrauerRow,
    ScholzBrauerStatus, VerifyReport,
};
