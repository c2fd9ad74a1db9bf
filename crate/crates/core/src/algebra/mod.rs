//! Fields, forms and linear algebra.

pub mod binary;
pub mod field;
pub mod finite;
pub mod form;
pub mod laurent;
pub mod matrix;
pub mod projective;
pub mod rational;

pub use binary::{BinaryForm, Poly};
pub use field::{Field, FieldSpec, QuadRoots, RootField};
pub use finite::{Fe, FiniteField};
pub use form::{HomogeneousForm, Monomial};
pub use laurent::{Laurent, Series};
pub use rational::Rationals;
