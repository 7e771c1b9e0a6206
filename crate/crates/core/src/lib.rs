//! Mahler measures of Laurent polynomials and of the Alexander polynomials
//! of links under surgery.

pub mod catalog;
pub mod error;
pub mod laurent;
pub mod measure;
pub mod surgery;
pub mod unipoly;

pub use error::{Error, Result};
pub use laurent::{parse, parse_with_vars, ExponentVector, LaurentPoly, MonomialMap};
pub use measure::{mahler, mahler_with, Engine, MeasureConfig, MeasureEstimate, Method};
pub use unipoly::{AlgebraicClass, ClassTag, UniPoly};
pub use surgery::{LinkPoly, SurgeryFamily, Sweep, SweepRow, TorresReport};
