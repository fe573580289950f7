//! Certified generation tests for symmetric subsets of `S_n` and of the
//! classical groups `SL`, `PSL`, `GL`, `PGL` over finite fields, together
//! with the character calculus and marking-sum tools behind them.

pub mod certify;
pub mod charcalc;
pub mod cyclotomic;
pub mod domain;
pub mod error;
pub mod field;
pub mod graph;
pub mod group;
pub mod io;
pub mod marking;
pub mod perm;

pub use error::{Error, Result};
