//! Gate-level circuit IR over Clifford+T with abstract rotations, an ancilla
//! ledger, and resource accounting.

mod builder;
mod circuit;
mod error;
mod gate;
mod metrics;
mod text;

pub use builder::{CircuitBuilder, Lit};
pub use circuit::{compose, inverse, AncillaEvent, BudgetEntry, Circuit, EventKind, Register};
pub use error::CircuitError;
pub use gate::{Gate, Qubit};
pub use metrics::{metrics, metrics_with, rotation_weight, CostModel, Expansion, ResourceReport};
pub use text::{parse_circuit, write_circuit};
