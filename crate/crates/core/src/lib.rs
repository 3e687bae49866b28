//! Exact production-matrix and total-positivity toolkit for forest and tree
//! polynomials.
//!
//! Layers, bottom up: [`exactalg`] (rationals, polynomials), [`series`]
//! (truncated power series), [`triangle`] (matrices, production matrices,
//! exponential Riordan arrays, named triangles), [`combinat`] (enumeration
//! oracles), [`tpcheck`] (determinants and total-positivity checks) and
//! [`cli`].

pub mod error;
pub mod exactalg;
pub mod series;
pub mod triangle;
pub mod combinat;
pub mod tpcheck;
pub mod cli;

pub use error::{Error, Result};
