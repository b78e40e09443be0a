//! Finite Γ-semirings, their left and right operator semirings, and the
//! transfer of fuzzy ideals between them.
//!
//! Structures are small and tabulated; every check is exhaustive or runs
//! over seeded samples, and membership values are exact rationals.

pub mod algebra;
pub mod cli;
pub mod correspondence;
pub mod enumeration;
pub mod fuzzy;
pub mod operator;
