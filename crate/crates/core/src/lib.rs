//! Order-by-order deformation quantization of the trivial submersion `V×G → V`
//! with exact rational arithmetic.

pub mod deform;
pub mod diffop;
pub mod error;
pub mod hochschild;
pub mod homotopy;
pub mod ring;
pub mod space;
pub mod suite;

pub use diffop::{DiffOp, OpIndex};
pub use error::{Error, Result};
pub use hochschild::{BaseCochain, Cochain};
pub use space::Space;
