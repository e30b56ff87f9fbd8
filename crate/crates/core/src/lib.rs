//! Executable order theory for WPO-dilators: finite posets, coded dilators
//! (Higman sequences, Dershowitz–Manna multisets, identity, composites and
//! the strongly normal completion), bounded exhaustive checkers for the
//! normality hierarchy, the Kruskal fixed point term order, and Veblen
//! ordinal notations below Γ₀.

pub mod dilator;
pub mod error;
pub mod kruskal;
pub mod normality;
pub mod order;
pub mod ordinal;
pub mod syntax;
pub mod verdict;

pub use error::{Error, Result};
