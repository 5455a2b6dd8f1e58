//! Invariant sections on projective representation spaces: `N`- and
//! `G`-invariants, C-sets, pointwise norms and semistability.

mod cset;
mod norm;
mod semistable;
mod space;

pub use cset::{c_set, c_set_union, c_set_with, CSet, Witness};
pub use norm::{
    fs_norm, max_norm_on_borel_orbit, min_moment_norm, norm_log_derivative, pr_map, AscentBudget,
    BorelDirection, LogDerivative, MomentMinimum, NormMaximum, FINITE_DIFFERENCE_STEP,
    NORM_DERIVATIVE_CONSTANT,
};
pub use semistable::{semistable, Certificate, SemistableMode, SemistableVerdict};
pub use space::{g_invariant_sections, n_invariant_sections, InvariantCatalog, PolySpace, Section};
