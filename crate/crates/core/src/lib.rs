pub mod bggcore;
pub mod cli;
pub mod error;
pub mod gradedla;
pub mod hodge;
pub mod jetcalc;
pub mod linalg;
pub mod rational;
pub mod repmod;
pub mod rootspace;

pub use error::{BggError, Result};
pub use linalg::{Coordinates, SparseMat, SparseVec};
pub use rational::Rat;
