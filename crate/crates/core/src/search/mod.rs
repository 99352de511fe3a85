//! Enumerators over quipu parameter spaces and the theorem scans built on them.
//!
//! Scans certify every threshold verdict exactly; float brackets only feed
//! the report rows and the minimizer's shortlist.

mod enumerate;
mod minimizer;
mod report;
mod scans;

pub use enumerate::{enumerate_closed_quipus, enumerate_open_quipus};
pub use minimizer::{
    candidates, find_minimizer, in_theorem_1_3_range, minimizer_report, predicted_minimizer,
    theorem_1_3_diameters, verify_theorem_1_3, Candidate,
};
pub use report::{write_rows, MinimizerResult, Role, SpecRow, VerificationReport};
pub use scans::{
    theorem_1_1_equality_family, theorem_1_2_exceptions, verify_theorem_1_1, verify_theorem_1_2,
    woo_neumaier_spotcheck,
};
