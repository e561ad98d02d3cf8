//! Exact first cohomology and local cohomology of finite subgroups of
//! GL2(Z/p^n) acting on (Z/p^n)^2.

pub mod cohomology;
pub mod constructions;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod scan;

pub use cohomology::{Cocycle, CocycleSystem, H1Report, Module, ModuleKind};
pub use error::{Error, Result};
pub use group::{ActingGroup, FiniteMatrixGroup, GroupElement, Mat2, QuotientGroup};
pub use linalg::{ModMatrix, ModVector, ModulusContext, SubmoduleBasis};
pub use constructions::{verify_all, Construction, ConstructionReport};
pub use io::GroupDefinition;
pub use scan::{classify_case, scan_prime_to_p, CaseTag, CaseVerdict};
