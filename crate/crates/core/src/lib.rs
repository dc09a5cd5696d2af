//! Exponential matrices over fields, their linear and birational
//! classification, and brute-force oracles for small finite fields.

pub mod error;
pub mod birat;
pub mod classify;
pub mod exec;
pub mod expmat;
pub mod field;
pub mod json;
pub mod linalg;
pub mod lnd;
pub mod mpoly;
pub mod oracle;
pub mod poly;
pub mod ppoly;

pub use error::{Error, Result};
pub use field::{Elem, Field};
