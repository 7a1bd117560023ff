//! Overweight deformations of prime binomial ideals: certification, the
//! induced valuation, toric degenerations and Abhyankar approximations.

pub mod approximation;
pub mod cli;
pub mod deformation;
pub mod degeneration;
pub mod error;
pub mod groebner;
pub mod lattice;
pub mod parser;
pub mod poly;
pub mod problem;
pub mod ring;
pub mod semigroup;
pub mod valuation;
pub mod value;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use ring::{Field, Monomial, Variable, WeightedRing};
pub use value::{Valuation, Value};
