//! Rees rings and special fiber rings of linearly presented height-three
//! Gorenstein ideals.
//!
//! The crate builds the candidate defining ideals (Jacobian dual minors plus
//! the Pfaffian content ideal) from an alternating presentation matrix and
//! checks them against defining ideals computed independently with
//! Gröbner bases over a prime field.

pub mod polyring;
pub mod groebner;
pub mod pfaffian;
pub mod blowup;
pub mod verify;
pub mod cli;
