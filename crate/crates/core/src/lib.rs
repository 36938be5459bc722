pub mod arith;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod geometry;
pub mod lattice;
pub mod oracle;
pub mod params;
pub mod series;
