//! Exact computer algebra for the noncommutative Hopf algebra of formal
//! diffeomorphisms, its ħ-deformations and the Nottingham group.

pub mod coeff;
pub mod error;
pub mod linalg;
pub mod ncpoly;

pub use coeff::{Coeff, Laurent, Rational};
pub use error::{Error, Result};
pub use ncpoly::{LPoly, LTensor, NcPoly, Tensor, Word};
pub mod commpoly;
pub mod hopfdiff;
pub mod freelie;
pub mod drinfeld;
pub mod deform;
pub mod nottingham;
pub mod parse;
pub mod verify;
