//! Exact polynomial differential geometry on coordinate models of `C^d`.
//!
//! Smooth objects are polynomials in `b` and `B = b̄`; see [`poly::Poly`].

pub mod biholo;
pub mod connection;
pub mod field;
pub mod form;
pub mod gauss;
pub mod homotopy;
pub mod matrix;
pub mod poly;

pub use biholo::{sigma, PolyBiholo};
pub use connection::{chern_simons, curvature};
pub use field::VField;
pub use form::Form;
pub use gauss::{q, qi, GaussRat, Q};
pub use homotopy::{poincare_solve, Operator};
pub use matrix::MatForm;
pub use poly::{Mono, Poly, Var};
