//! Exact-integer toolkit for the topology of simply connected spin
//! 6-manifolds.
//!
//! A manifold in this class is classified by its Wall tuple: the third
//! Betti number, the degree-two lattice with the cubic cup-product form,
//! and the linear form given by the first Pontryagin class. This crate
//! computes with those tuples exactly:
//!
//! * [`lattice`] — integer vectors, cubic and linear forms, unimodular
//!   basis change, and vanishing-locus searches;
//! * [`wall`] — admissibility of tuples, the mod-48 homotopy
//!   identification, and bounded homeomorphism classification;
//! * [`chern`] — Chern numbers of candidate complex structures and the
//!   single-structure Kahler obstruction checks;
//! * [`construct`] — point blow-ups and blow-downs, P^1-bundles over
//!   surfaces, Dolgachev surfaces, and a reference gallery;
//! * [`forge`] — infinite twisted families over a seed tuple and
//!   machine-checkable non-Kahler certificates;
//! * [`sampling`] — seeded random generators for the verification suites.
//!
//! Every computation is exact; there is no floating point anywhere.

pub mod chern;
pub mod construct;
pub mod error;
pub mod forge;
pub mod lattice;
pub mod sampling;
pub mod wall;

pub use error::{Error, Result};
