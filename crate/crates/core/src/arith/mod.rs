//! Exact arithmetic shared by every other module.

pub mod nt;
pub mod rational;
pub mod series;

pub use nt::{
    divisors, euler_phi, gcd, is_squarefree, kronecker, lcm, prime_factors, sigma, sigma_shifted,
    squarefree_part,
};
pub use rational::{format_rational, int, rat, Rational, RationalJson};
pub use series::PowerSeries;
