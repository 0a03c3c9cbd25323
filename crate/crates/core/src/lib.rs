//! Lines of PG(3,q) in Plücker coordinates, greedy constructions of maximal
//! partial spreads, and independent verification of spread certificates.

pub mod cli;
pub mod enumeration;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod gf;
pub mod search;
pub mod verify;

pub use enumeration::{line_count, LineId, LineTable};
pub use error::{Error, Result};
pub use exec::Execution;
pub use geometry::{canonicalize, meets, Line};
pub use gf::FieldTable;
pub use search::{run, SearchConfig, SearchContext, SpreadRecord, Strategy, TieBreak};
pub use verify::{verify, Status, Verdict};
