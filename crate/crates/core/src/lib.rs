//! Solvers for the two-stage election recount game.
//!
//! An attacker distorts the reported votes in up to `B_A` districts to get
//! a preferred candidate elected; the defender then recounts up to `B_D` of
//! the manipulated districts to restore the best outcome it can, judged by
//! true social welfare. Winners are determined by plurality over voters or
//! plurality over districts.

pub mod error;
pub mod instance;
pub mod model;
pub mod report;

pub mod attacker;
pub mod bench;
pub mod cli;
pub mod defender;
pub mod reductions;
pub mod solve;

pub use error::{Error, Result};
pub use model::{
    defender_prefers, social_welfare, tally, validate, Candidate, District, Election,
    Manipulation, RecountSet, Rule, Tally,
};
pub use report::{Algorithm, Limits, SolveReport, Stats};
