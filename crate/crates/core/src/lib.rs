//! Exact combinatorics of Kottwitz-Viehmann varieties: root data, Weyl
//! groups, dual-group weight multiplicities, cameral class data, dimension
//! formulas, coweight-polytope strata and nilpotent-cone strata of the
//! Vinberg monoid.

pub mod conjugacy;
pub mod error;
pub mod kv;
pub mod linalg;
pub mod multiplicity;
pub mod rational;
pub mod rootdata;
pub mod strata;
pub mod verify;
pub mod vinberg;
pub mod weyl;

pub use conjugacy::{ClassDatum, ValidationReport, Violation, ViolationCode};
pub use error::{Error, Result};
pub use kv::KVReport;
pub use multiplicity::WeightSystem;
pub use rational::{Coweight, Rational, RationalCoweight, Weight};
pub use rootdata::{FiniteAbelianGroup, Isogeny, RootDatum, SimpleType};
pub use strata::{ExtRational, ValuationVector};
pub use verify::{Bounds, Suite, SuiteReport};
pub use vinberg::{NilconeReport, NilconeStratum};
pub use weyl::{WeylElement, WeylGroup};
