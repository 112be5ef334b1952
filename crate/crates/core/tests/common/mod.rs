//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. None of them call into the code paths they check.
#![allow(dead_code)]

pub mod cut;
pub mod forests;
pub mod lexord;
pub mod ranks;
pub mod steps;
