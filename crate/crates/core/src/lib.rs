//! Flat affine group schemes over a discrete valuation ring, presented as Hopf algebras over
//! Q[pi], together with Neron blowups and the constructions built from them.

pub mod blowup;
pub mod cli;
pub mod dgal;
pub mod error;
pub mod groebner;
pub mod hopf;
pub mod images;
pub mod report;
pub mod reps;
pub mod ring;

pub use error::{Error, Result};
