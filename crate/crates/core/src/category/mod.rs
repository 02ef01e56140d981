//! Presentations of additive k-linear categories, their objects, morphisms,
//! functors and natural transformations.

mod equations;
mod full;
mod functor;
mod natural;
mod object;
mod presentation;
mod subcategory;
mod validate;

pub use equations::{MorphismSystem, Term};
pub use full::{restrict_functor, FullSubcategory};
pub use functor::{image_subcategory, kernel_subcategory, validate_functor, FunctorBuilder, LinearFunctor};
pub use natural::NatTransform;
pub use object::ObjectExpr;
pub use presentation::{CategoryBuilder, FinLinCategory, HomSpace, Morphism};
pub use subcategory::Subcategory;
pub use validate::{generators_isomorphic, is_isomorphic, iso_class_representatives, radical, validate_category, IsoVerdict};
