//! Bounded trace-language kernel for algebraic rely-guarantee reasoning.
pub mod automaton;
pub mod error;
pub mod gen;
pub mod lang;
pub mod outline;
pub mod program;
pub mod report;
pub mod run;
pub mod soundness;
pub mod rg;
pub mod state;
pub mod sweep;
pub mod syntax;
pub mod verifier;
pub mod worked;
pub use error::{Error, Result};
