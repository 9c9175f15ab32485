//! Cyclic Hermitian LCD codes over GF(q^2): fields, cyclotomic cosets,
//! polynomial factorization, code families, distance engines and
//! orthogonal direct sum masking.

// Closed forms are kept in the shape they are usually written in.
#![allow(clippy::manual_is_multiple_of, clippy::int_plus_one, clippy::manual_div_ceil)]

pub mod constructions;
pub mod cosets;
pub mod cyclic;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod odsm;
pub mod poly;

pub use constructions::{ConstructionReport, Family};
pub use cosets::{CosetTable, DefiningSet};
pub use cyclic::{CyclicCode, DistanceMethod, DistanceReport};
pub use error::{Error, Result};
pub use gf::{Elem, Field, SubfieldEmbedding};
pub use linalg::Matrix;
pub use odsm::OdsmInstance;
pub use poly::{BigFieldContext, Poly};
