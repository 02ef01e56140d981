//! Verification engine for finitely presented additive k-linear categories:
//! quotients by ideals of morphisms, induced adjunctions, recollements and
//! mutation pairs in triangulated presentations.

pub mod adjunction;
pub mod category;
pub mod error;
pub mod linalg;
pub mod quotient;
pub mod recollement;
pub mod report;
pub mod samples;
pub mod triangulated;

pub use category::{
    image_subcategory, is_isomorphic, kernel_subcategory, validate_category, validate_functor, CategoryBuilder,
    FinLinCategory, FunctorBuilder, IsoVerdict, LinearFunctor, Morphism, NatTransform, ObjectExpr, Subcategory,
};
pub use error::{Error, Result};
pub use linalg::{FieldSpec, Mat, Scalar, SubspaceBasis};
pub use report::{Failure, ValidationReport};
