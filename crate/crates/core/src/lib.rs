//! Label-level computation of automorphism-stable unitriangular basic
//! sets for the finite special linear and unitary groups.
//!
//! Everything is computed exactly on combinatorial character labels:
//! eigenvalues are fractions in ℚ/ℤ, characters are pairs of an F-stable
//! spectrum with a multipartition, and all verifications are finite
//! enumerations with deterministic output.

pub mod actions;
pub mod basicset;
pub mod clifford;
pub mod cyclotomic;
pub mod error;
pub mod labels;
pub mod partitions;

pub use actions::{CentralElement, OuterElement, ZOElement};
pub use basicset::{BasicSetReport, ReplacementRecord};
pub use cyclotomic::{ell_part, ell_prime_part, FrobOrbit, GroupSpec, RootOfUnity};
pub use error::{Error, Result};
pub use labels::{IrrLabel, JordanSplit, MultiPartitionLabel, SemisimpleClassLabel, SeriesSupport};
pub use partitions::Partition;
