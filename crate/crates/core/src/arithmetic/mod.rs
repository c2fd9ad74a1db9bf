//! Point counts, Weil data of `Delta`, the counting identities, and the
//! rationality decision.

mod count;
mod decide;
mod identities;
mod weil;

pub use count::{count_projective_zeros, count_projective_zeros_by_slices};
pub use decide::{
    decide_finite, decide_laurent, decide_rationals, Decision, RationalityVerdict,
};
pub use identities::{
    blowup_count_identity, blowup_prediction, delta_counts, delta_weil, hyperelliptic_crosscheck,
    torsor_count_check, BlowupReport, HyperellipticReport, TorsorReport,
};
pub use weil::{weil_from_counts, WeilData};

use crate::lines::DEFAULT_MAX_Q;
use crate::pencil::{DEFAULT_BUDGET, MAX_SEARCH_DEPTH};

/// Search limits shared by the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Depth of extension-field searches (smoothness witnesses, `Delta`).
    pub max_extension: u32,
    /// Height bound for line searches over `Q`.
    pub height_bound: u64,
    /// Largest `q` for line enumeration.
    pub max_q: u64,
    /// Point-evaluation budget for brute-force counts.
    pub budget: u128,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_extension: MAX_SEARCH_DEPTH,
            height_bound: 10,
            max_q: DEFAULT_MAX_Q,
            budget: DEFAULT_BUDGET,
        }
    }
}
