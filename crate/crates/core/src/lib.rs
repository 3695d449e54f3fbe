//! Exact evaluation of the Kirillov-Reshetikhin fermionic formula, the
//! classical branching sets of KR modules, and an independent classical
//! representation oracle (Weyl dimensions, Freudenthal multiplicities,
//! Brauer-Klimyk tensor products) used to cross-check them.

pub mod bignum;
pub mod error;
pub mod fermionic;
pub mod kr_tables;
pub mod lie;
pub mod partitions;
pub mod rep_oracle;
pub mod verify;

pub use error::{Error, Result};
pub use fermionic::{Decomposition, FactorList, KrFactor};
pub use kr_tables::WeightSet;
pub use lie::{Family, LieType, RootSystem, RootVector, Weight};
pub use partitions::{NuConfig, PartitionMult};
