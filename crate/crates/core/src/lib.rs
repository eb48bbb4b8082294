//! Deformations of A-infinity algebras with infinity inner products, computed
//! exactly through a finite truncation weight.

pub mod bar;
pub mod cli;
pub mod deform;
pub mod dgla;
pub mod error;
pub mod fixture;
pub mod graded;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod samples;
pub mod scalars;

pub use error::{Error, Result};
