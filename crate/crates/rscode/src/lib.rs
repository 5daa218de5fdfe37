pub mod euclid;
pub mod gf;
pub mod poly;
pub mod rng;
