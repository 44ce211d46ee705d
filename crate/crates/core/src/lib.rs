pub mod error;
pub mod numeric;
pub mod lattice;
pub mod sections;
pub mod transference;
pub mod witness;
pub mod harness;
pub mod cli;
