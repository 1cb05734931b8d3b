//! Invariants of cusped hyperbolic 3-manifolds from decorated ideal
//! triangulations.
//!
//! A triangulated manifold whose ideal simplices carry *decorations* —
//! horosphere-level data recorded as vectors in ℂ²∖{0} up to sign — has a
//! richer set of invariants than the shapes alone see: beyond the Bloch
//! class Σ [zᵢ] one gets a class in an extended pre-Bloch group whose
//! generators are *flattenings* (triples of logarithm choices), and from it
//! the complex volume i(Vol + i CS) by the extended Rogers dilogarithm L̂.
//!
//! The crate is organized bottom-up:
//!
//! * [`kernel`] — branch-fixed logs, Rogers / Bloch–Wigner dilogarithms,
//!   L̂, and mod-π² arithmetic;
//! * [`sl2`] — SL₂(ℂ) and PSL₂(ℂ) with exact transporters;
//! * [`spaces`] — the decoration spaces ℂ²∖{0}, its ±-quotient, degenerate
//!   symmetric matrices, and the ideal boundary ℂP¹, with the equivariant
//!   maps between them, cross-ratios, and canonical forms;
//! * [`wedge`] — a free ℤ-module of formal wedges with syntactic
//!   cancellation;
//! * [`prebloch`] — pre-Bloch sums, the five-term relation, and the
//!   regulator ν: [z] ↦ z ∧ (1−z);
//! * [`extended`] — flattenings, the map σ̃ from decorated simplices,
//!   the ten-term flattening condition, ν̂, μ, and L̂ sums;
//! * [`truncated`] — the equivalent description by matrix labelings on the
//!   edges of truncated simplices;
//! * [`pipeline`] — chains of decorated simplices: boundary cancellation,
//!   β_B, β_P, flattened fundamental classes, complex volume, verification;
//! * [`figure_eight`] — the canonical worked example, built by developing
//!   the two-simplex triangulation of the figure-eight knot complement.
//!
//! The `examples/` directory demonstrates each capability end to end, and
//! the `extbloch` binary exposes the same computations on JSON chain files.

pub mod error;
pub mod extended;
pub mod figure_eight;
pub mod io;
pub mod kernel;
pub mod pipeline;
pub mod prebloch;
pub mod sampling;
pub mod selftest;
pub mod sl2;
pub mod spaces;
pub mod truncated;
pub mod wedge;

pub use error::{Error, Result};
