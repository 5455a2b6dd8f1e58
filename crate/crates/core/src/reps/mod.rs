//! Symmetric powers of the standard representation, projective points,
//! moment maps, flag-manifold helpers and seeded orbit samplers.

mod flag;
mod moment;
mod point;
mod rep;
mod sample;

pub use flag::{
    bruhat_cell, bruhat_cell_exact, flag_moment, permutation_matrix, permutation_matrix_exact,
    unitary_factor, FlagPoint, RANK_NONZERO_TOL, RANK_ZERO_TOL,
};
pub(crate) use moment::full_moment_vec;
pub use moment::{
    diagonal_weight, full_moment, is_chamber_interior, is_generic_direction, isotropy_weights,
    limit_fixed_point, off_chamber_norm, off_diagonal_norm, torus_moment, torus_moment_exact,
    FixedPointLimit,
};
pub use point::{act_exact, act_matrix, format_gauss, Coords, ProjPoint, FLOAT_SUPPORT_TOL};
pub use rep::{
    diag_to_fund, diag_to_fund_f64, fund_to_diag, fund_to_diag_f64, Rep, SparseOp, BASIS_CAP,
};
pub use sample::{
    nilpotent_exp, sample_borel, sample_point_exact, sample_torus, sample_torus_exact,
    sample_unipotent, sample_unipotent_exact, scale_for, stream_rng, ExactUnipotent, GroupSample,
    SAMPLE_SCALES,
};

use nalgebra::DMatrix;

use crate::error::Result;

pub type C64 = num::Complex<f64>;

/// `sym_power_rep` entry point.
pub fn sym_power_rep(n: usize, d: usize) -> Result<Rep> {
    Rep::sym_power(n, d)
}

/// Acts on a point by a Borel sample (floating point).
pub fn act(rep: &Rep, g: &GroupSample, z: &ProjPoint) -> Result<ProjPoint> {
    act_matrix(&rep.group_action_c64(&g.matrix()), z)
}

/// Acts on an exact point by an exact unipotent element (exact result).
pub fn act_unipotent_exact(rep: &Rep, u: &ExactUnipotent, z: &ProjPoint) -> Result<ProjPoint> {
    act_exact(&rep.group_action(&u.matrix()), z)
}

/// Action of an arbitrary `n × n` matrix on `V`.
pub fn rep_matrix(rep: &Rep, g: &DMatrix<C64>) -> DMatrix<C64> {
    rep.group_action_c64(g)
}
