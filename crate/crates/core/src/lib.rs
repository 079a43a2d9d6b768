//! Dedekind-zeta coefficient tables, prime-ideal statistics and explicit
//! Bertrand-type bounds for number fields.

pub mod analytics;
pub mod arith;
pub mod bertrand;
pub mod bounds;
pub mod cache;
pub mod error;
pub mod field;
pub mod primes;
pub mod quad;
pub mod sieve;
pub mod splitting;
pub mod verify;

pub use analytics::{ErrorFit, ZetaValue};
pub use bertrand::{scan_gaps, verify_interval, GapReport, Witness};
pub use bounds::{BoundCase, BoundReport, EffectiveConstants};
pub use error::{Error, ErrorKind, Result};
pub use field::{load_field, MinkowskiCheck, NumberField};
pub use sieve::{build_table, build_table_with, BuildOptions, CoefficientTable};
pub use splitting::{FieldSplitter, SplittingRecord};
