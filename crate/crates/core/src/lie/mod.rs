//! Root systems, Weyl groups, Bruhat order and faces of the dominant chamber.

mod root_system;
mod weight;
mod weyl;

pub use root_system::{CartanType, RootSystem, MAX_RANK};
pub use weight::{chamber_face, is_dominant, is_strictly_dominant, ChamberFace, Weight};
pub use weyl::{
    bruhat_interval, bruhat_leq, simple_reflection_matrix, weyl_act, weyl_elements, IntMatrix,
    WeylElement, WeylGroup, WEYL_ENUMERATION_CAP,
};

/// `build_root_system` entry point.
pub fn build_root_system(kind: char, rank: usize) -> crate::Result<RootSystem> {
    RootSystem::new(CartanType::from_char(kind)?, rank)
}
