pub mod cli;
pub mod dsl;
pub mod json;
