//! Exact-arithmetic tools for linked cycles in spatial graphs.

pub mod embedding;
pub mod finders;
pub mod geometry;
pub mod graph;
pub mod invariants;
pub mod linking;
pub mod projection;
pub mod rng;
