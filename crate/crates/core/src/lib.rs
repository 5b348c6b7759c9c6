pub mod algebra;
pub mod atlas;
pub mod constructors;
pub mod description;
pub mod element;
pub mod error;
pub mod factor;
pub mod field;
pub mod groups;
pub mod limits;
pub mod linalg;
pub mod poly;
pub mod radical;
pub mod report;
pub mod sandwich;
pub mod units;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, FieldScalar, FieldSpec, Scalar};
pub use poly::{eval_poly, Poly};
