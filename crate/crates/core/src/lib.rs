pub mod bits;
pub mod cli;
pub mod combinations;
pub mod depth;
pub mod endoring;
pub mod error;
pub mod eval;
pub mod formulas;
pub mod pgroup;
pub mod translate;
pub mod verify;
