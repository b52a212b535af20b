//! Quivers, paths and homogeneous elements of the path algebra.

mod element;
mod ops;
mod quiver;
mod twist;

pub use element::TensorElement;
pub use ops::{
    apply_graded_map, apply_twist, cyclic_shift, delta_image, derivatives, derive, derive_right,
    is_superpotential, is_weak_potential, restrict_idempotent, twist_subspace,
};
pub use quiver::{Arrow, Path, PathIndex, Quiver};
pub use twist::Twist;
