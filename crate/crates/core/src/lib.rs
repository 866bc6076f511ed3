//! Exact-arithmetic toolkit for plane polynomial foliations.
//!
//! Given a foliation of the projective plane as a homogeneous differential
//! 1-form, this crate resolves its dicritical singularities by iterated
//! blow-ups, computes candidate fiber classes on the Picard lattice of the
//! resolved surface, bounds the degree of a rational first integral, and
//! decides algebraic integrability in the decidable cases (one dicritical
//! divisor, or prescribed genus), returning certified pencils.
//!
//! All arithmetic is exact over Q; there is no floating point anywhere.

pub mod candidates;
pub mod cli;
pub mod config;
pub mod integrator;
pub mod linalg;
pub mod linsys;
pub mod poly;
pub mod polyform;
pub mod rat;
pub mod resolution;

pub use config::{Configuration, DivisorClass};
pub use poly::{BiPoly, HPoly, UniPoly};
pub use polyform::{AffineOneForm, ProjectiveOneForm, ProjectiveTwoForm};
