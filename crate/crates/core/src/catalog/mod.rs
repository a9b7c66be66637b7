//! Isomorph-free enumeration of small maximal classes and a persistent hunt
//! for classes whose unlabeled compression size exceeds their vc-dimension.

mod enumerate;
mod hunt;
mod joins;

pub use enumerate::{enumerate_candidates, Candidates, MAX_ENUMERATION_BASE, MAX_ENUMERATION_DIMENSION};
pub use hunt::{assess, gap_hunt, read_catalog, CatalogRecord, HuntOptions, HuntSummary, Status, UcsStatus};
pub use joins::{candidate_joins, JoinAttempt, JoinRecord, Method};
