//! Exact line/body incidence, line covers of finite families, and the search
//! for a body that a given finite set of lines misses.

mod cover;
mod predicate;
mod refute;

pub use cover::{min_line_cover, piercing_matrix, LineCover, PiercingMatrix, EXACT_COLUMN_LIMIT};
pub use predicate::{
    explain_miss, max_vertical_distance, pierce, slab_miss, verify_certificate, Inequality,
    MissCase, MissCertificate, Relation,
};
pub use refute::{certify, refute, verify_report, LineEntry, RefutationReport, RefuteOutcome};
