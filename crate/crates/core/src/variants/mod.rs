//! Paillier variants: alternative key shapes and decryption formulas over
//! the same Z*_{n²}, plus their feature comparison and decryption costs.

pub mod capability;
pub mod cost;
pub mod v1;
pub mod v2;
pub mod v3;
pub mod v4;

pub use capability::{capability_matrix, CapabilityRow};
pub use cost::{modexp_cost_report, CostRecord, CostSubject};
