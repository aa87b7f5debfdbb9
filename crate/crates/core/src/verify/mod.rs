//! Checks on constructed codes.
//!
//! Exact perfectness is certified by marking every radius-1 ball in a
//! 2-bit-per-cell array over `F_q^n`. Switched codes too large to list are
//! checked by sampling ball counts and certified full rank by exhibiting
//! independent members. Everything random is driven by
//! [`SplitMix64`](crate::rng::SplitMix64) substreams, so reports are
//! reproducible bit for bit.

mod bound;
mod exact;
mod lemma;
mod linear;
mod rank;
mod report;
mod sampled;

pub use bound::{lower_bound_count, CountingBound};
pub use exact::{min_distance, require_perfect, verify_perfect, verify_perfect_explicit, MARK_CAP, PAIR_CAP};
pub use lemma::lemma1_check;
pub use linear::{linearity_check, Linearity};
pub use rank::{
    rank_certificate_explicit, rank_certificate_implicit, MembershipProof, RankCertificate, SAMPLING_BUDGET,
};
pub use report::{Check, ReportKind, VerificationReport};
pub use sampled::sampled_perfect_check;
