pub mod cli;
pub mod pairgroupoid;
pub mod report;
pub mod symexpr;
pub mod tensorcalc;
pub mod verifier;
