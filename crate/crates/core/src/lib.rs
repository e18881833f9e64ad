//! Exact engine for connected envy-free division of a one-dimensional cake
//! whose value densities may be negative ("mixed" cakes).
//!
//! The pipeline: agents label the vertices of a friendly triangulation of
//! the simplex of partitions; a friendly and diverse ownership combines the
//! labelings into one consistent labeling; a single-valued selection with
//! nonzero boundary degree is found; the degree identity then guarantees a
//! fully-labeled cell, which is an envy-free simplex.

pub mod cake;
pub mod degree;
pub mod error;
pub mod lab;
pub mod labeling;
pub mod rational;
pub mod simplex;
pub mod solver;
pub mod svg;
pub mod triangulation;

pub use error::{Error, Result};
pub use rational::Rational;
