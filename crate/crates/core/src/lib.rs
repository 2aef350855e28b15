//! Exact computation of coends, cohomomorphism coalgebras and reconstruction
//! data for diagrams of finite-dimensional vector spaces.

pub mod algebra;
pub mod coend;
pub mod commands;
pub mod cohom;
pub mod error;
pub mod fincat;
pub mod functor;
pub mod linalg;
pub mod padic;
pub mod reconstruct;
pub mod spec;

pub use error::{Error, Result};
