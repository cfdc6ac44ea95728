//! Exact-arithmetic toolkit for reduced Lefschetz characters of coset
//! geometries and their p-modular block decompositions.
//!
//! The pipeline: character tables, class fusions and induction recipes are
//! loaded from a fixture bundle ([`dataio`]), the reduced Lefschetz character
//! is assembled as a signed sum of induced characters ([`lefschetz`]), split
//! into block parts against a decomposition matrix ([`blocks`]), and tested
//! for (virtual) projectivity ([`projtest`]). A brute-force coset-complex
//! oracle ([`cosetgeom`]) provides an independent route for small groups.
//!
//! All arithmetic is exact: character values live in cyclotomic fields
//! ([`cyclo`]) and every printed quantity is certified to be a rational
//! integer before it is reported.

pub mod blocks;
pub mod chartab;
pub mod cosetgeom;
pub mod cyclo;
pub mod dataio;
pub mod lefschetz;
pub mod projtest;

pub use cyclo::{Cyclotomic, Rational};
