//! Desk-scale realizability workbench.
//!
//! Combinatory terms and head reduction, finite order partial combinatory
//! algebras, the code model K1, downset realizability triposes, assemblies,
//! applicative morphisms and Krivine-style classical realizability.

pub mod assemblies;
pub mod classical;
pub mod k1;
pub mod opca;
pub mod reduction;
pub mod rtripos;
pub mod suite;
pub mod terms;
