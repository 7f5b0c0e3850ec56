//! Exact computations for a family of symmetric algebras `A(p,r)` given by
//! quiver and relations, their elementary two-term tilting complexes, Hom
//! spaces in the homotopy category, a catalog of distinguished chain maps,
//! and the quiver of the resulting endomorphism algebras.
//!
//! Modules:
//!
//! | module    | contents                                                        |
//! |-----------|-----------------------------------------------------------------|
//! | `fp`      | dense exact linear algebra over the prime field `Z/p`           |
//! | `algebra` | the algebra `A(p,r)`, projectives, Hom bases, block quiver      |
//! | `tilt`    | tilting complexes, chain maps, homotopy-category Hom spaces     |
//! | `catalog` | named chain-map constructors with applicability predicates      |
//! | `endo`    | endomorphism algebra, radical, quiver, Cartan matrices,         |
//! |           | composition-generation checks                                   |
//!
//! All computations are exact over `Z/p` (or over the integers where
//! determinants are concerned) and deterministic: identical inputs produce
//! identical outputs, including basis orderings.

pub mod algebra;
pub mod catalog;
pub mod endo;
pub mod fp;
pub mod tilt;

pub use algebra::{BlockParams, Element, HomGenerator, Monomial, ParamError, Quiver};
pub use catalog::{CatalogInstance, CatalogMapId, CatalogReport};
pub use endo::{endo_of_selection, projective_endo, EndoAlgebra, GenerationReport, RadicalData};
pub use tilt::{ArcDecomposition, ChainMap, HomKSpace, TiltComponent};
