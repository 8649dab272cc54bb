//! Classification engine for finite group actions on compact Riemann surfaces
//! of genus `2(p-1)` admitting `4λp` automorphisms.
//!
//! The crate is organised bottom-up:
//! [`group`] holds exact finite-group arithmetic over multiplication tables,
//! [`signatures`] does Riemann–Hurwitz bookkeeping,
//! [`actions`] enumerates and classifies generating vectors,
//! [`subcovers`] computes quotient data and cyclic p-gonal models,
//! [`jacobian`] computes character tables and isotypic dimensions,
//! [`classify`] runs the end-to-end pipeline for one prime.

pub mod actions;
pub mod classify;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod jacobian;
pub mod signatures;
pub mod subcovers;
pub mod util;

pub use error::{Error, Result};
