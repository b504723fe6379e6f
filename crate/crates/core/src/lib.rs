//! Dual Garside structure on affine braid groups of type Ã(n-1).
//!
//! The ambient group `W` is the group of n-periodic permutations of the
//! integers with zero shift. A Coxeter element `c` determines the monoid of
//! its divisors under reflection length, and that monoid is quasi-Garside
//! exactly when one side of the `X`/`Ξ` split is a single residue.

pub mod coxeter;
pub mod divisors;
pub mod braid;
pub mod error;
pub mod monoid;
pub mod notation;
pub mod oracle;
pub mod perm;

pub use braid::{
    artin_relations, CentralizerPresentation, Fraction, GroupElement, RelationCheck, TauOrbit,
    TypeBReport,
};
pub use coxeter::{Atom, AtomKind, Codim1Form, CoxeterSystem, Side};
pub use divisors::{
    blocks_cross, divisor_from_partition, elementary_factors, partition_join, partition_meet,
    partition_of_divisor, AnnularPartition, Block, ElementaryDivisor,
};
pub use error::{Error, Result};
pub use monoid::{MonoidElement, Simple};
pub use notation::Letter;
pub use perm::{Cycle, CycleExpr, Orbit, OrbitDecomposition, PeriodicPermutation};
