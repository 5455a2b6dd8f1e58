//! Constructors and verifiers tying the kernels together: Schubert and
//! torus-orbit polytopes, C-set hulls against sampled moments, the
//! intersection formula, action chambers, Delzant sequences and surveys.

mod atiyah;
mod chambers;
mod delzant;
mod pipeline;
mod report;
mod schubert;
mod survey;

pub use atiyah::{atiyah_polytope, check_atiyah};
pub use chambers::{
    action_chambers, check_bruhat_cells, pick_positive, rep_action_chambers, unstable_check,
    Arrangement, Chamber, MAX_ARRANGEMENT_RANK, MAX_HYPERPLANES,
};
pub use delzant::{delzant_sequence, DelzantSequence, DelzantTarget, DelzantTerm, TargetCoord};
pub use pipeline::{
    chamber_box, intersection_gap, verify_main, verify_main_with, IntersectionOutcome,
    MainVerification, CHAMBER_HIT_MARGIN, CHAMBER_HIT_TOL, INTERSECTION_GAP_TOL, MEMBER_MOMENT_TOL,
    MEMBER_OFF_CHAMBER_TOL,
};
pub use report::{Check, VerificationReport};
pub use schubert::{
    check_schubert, schubert_polytope, SCHUBERT_CONTAINMENT_TOL, SCHUBERT_GAP_FRACTION,
    SCHUBERT_MAX_SAMPLES,
};
pub use survey::{finiteness_survey, survey_points, Survey, GENERIC_FREQUENCY};
