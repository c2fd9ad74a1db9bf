//! Exact arithmetic for smooth intersections of two quadrics in `P^5`.
//!
//! The core is generic over a context-style [`algebra::Field`]; the aliases
//! below name the three base fields used in practice.

pub mod algebra;
pub mod arithmetic;
pub mod descent;
pub mod error;
pub mod io;
pub mod lines;
pub mod pencil;
pub mod projection;

pub use error::{Error, Result};

use algebra::{FiniteField, Laurent, Rationals};

pub type FqPencil = pencil::Pencil<FiniteField>;
pub type QPencil = pencil::Pencil<Rationals>;
pub type LaurentFq = Laurent<FiniteField>;
pub type LaurentFqPencil = pencil::Pencil<LaurentFq>;
pub type FqLine = lines::Line<FiniteField>;
pub type QLine = lines::Line<Rationals>;
