//! Symbolic engine for the algebraic skeleton of residue currents.

pub mod cli;
pub mod groebner;
pub mod homalg;
pub mod polyring;
pub mod residues;
