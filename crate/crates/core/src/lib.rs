//! Exact computations in generalized Weyl algebras `R(φ, t)`: normal forms,
//! φ-stable ideals of the base ring, and Whittaker modules.

pub mod catalog;
pub mod field;
pub mod gwa;
pub mod ideals;
pub mod linalg;
pub mod ring;
pub mod whittaker;
