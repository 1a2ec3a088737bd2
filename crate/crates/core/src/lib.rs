//! Logarithmic ℓ-class groups of number fields.
//!
//! The crate is layered bottom-up: [`arith`] supplies p-adic integers,
//! integer and modular linear algebra and polynomial arithmetic; [`localfield`]
//! handles orders, p-maximalisation and completions; [`numberfield`] builds the
//! maximal order, prime ideals, class groups and S-units; [`logar`] provides
//! ramification indices and logarithmic valuations; [`logclass`] assembles the
//! logarithmic class group itself. [`corpus`] holds reference fields.

pub mod arith;
pub mod corpus;
pub mod error;
pub mod localfield;
pub mod logar;
pub mod logclass;
pub mod numberfield;

pub use arith::padic::PadicInt;
pub use arith::poly::ZPoly;
pub use error::{Error, Result};
