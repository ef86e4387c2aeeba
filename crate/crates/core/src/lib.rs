//! Exact computations in Temperley-Lieb algebras at roots of unity and in their
//! semisimple Jones quotients `Q_n(l)`.

pub mod cellrep;
pub mod clifford;
pub mod combinatorics;
pub mod diagram;
pub mod error;
pub mod exactnum;
pub mod quotientdim;
pub mod tlalg;

pub use error::{Error, Result};
