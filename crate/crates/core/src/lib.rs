pub mod arith;
pub mod cli;
pub mod curve;
pub mod gf;
pub mod glue;
pub mod poly;
pub mod zeta;
