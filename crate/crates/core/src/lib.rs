//! Self-projecting matroids, their realization spaces and positroids.

pub mod catalog;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod positroid;
pub mod realization;
pub mod selfproj;
pub mod subsets;
