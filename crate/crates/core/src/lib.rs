//! Workbench for surface-code defect braiding: lowering circuits to
//! space-time defect geometries, rewriting them with topology-preserving
//! moves, measuring their volume, and verifying them with correlation
//! surfaces over GF(2).

pub mod calc;
pub mod canonicalize;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod gf2;
pub mod mesh;
pub mod pauli;
pub mod rewrite;
pub mod tableau;
pub mod verify;
mod textfmt;

pub use error::{Error, Result};
