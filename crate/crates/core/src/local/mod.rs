//! Local fields: completions at finite places, power classes and local norms.

pub mod classes;
pub mod norm;
pub mod padic;

pub use classes::{exists_cyclic_extension, power_class_group, PowerClassGroup, Ramification};
pub use norm::{hilbert_symbol, is_local_norm};
pub use padic::{is_local_nth_power, local_binomial_irreducible, to_local, Completion, LocalElement};
