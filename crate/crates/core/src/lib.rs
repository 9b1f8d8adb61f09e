pub mod brenke;
pub mod classify;
pub mod cli;
pub mod dorth;
pub mod error;
pub mod families;
pub mod scalar;
pub mod series;
pub mod specfun;
