pub mod arith;
pub mod chains;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod okutsu;
pub mod poly;
pub mod residue;
pub mod sample;
pub mod selftest;
pub mod valuation;
