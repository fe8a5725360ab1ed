pub mod canonical;
pub mod catalog;
pub mod chambers;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod moduli;
pub mod poly;
pub mod rational;
pub mod series;
pub mod singularity;
pub mod special;

pub use error::{Error, Result};
pub use rational::Rational;
