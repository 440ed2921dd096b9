//! Graded `*`-algebras with cocycle-twisted products.
//!
//! All algebras here share one representation: a commutative base algebra on
//! a graded [`Alphabet`], with the deformation living entirely in the product.
//! Noncommutative tori, θ-spheres, and bigraded matrix-coefficient algebras
//! differ only in their alphabets.

pub mod json;
pub mod poly;
pub mod sphere;
pub mod star;
pub mod tensor;
pub mod torus;

pub use poly::{Alphabet, Monomial, Poly};
pub use sphere::{commutation_table, monomial_ratio, reduce_mod_sphere, Relation, SphereAlgebra, SphereElement};
pub use star::{composed_context, deform_compose, involution, star_chain, star_product, GradingKind, StarContext};
pub use tensor::TensorElement;
pub use torus::{NcTorus, TorusElement};

/// A bigraded element over a matrix-coefficient alphabet.
pub type BiGradedElement = Poly;
