pub mod braid;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod temperley_lieb;
pub mod theorem_lab;

pub use braid::{full_twist, parse_braid, sample_braid, BraidWord};
pub use error::{Error, Result};
pub use laurent::{LaurentPoly, Var};
pub use temperley_lieb::{braid_image, enumerate_basis, markov_closure, TLDiagram, TLElement};
