//! Representation numbers of positive-definite quadratic forms under
//! congruence conditions, via theta series written in explicit bases of
//! Eisenstein series and eta products.

pub mod arith;
pub mod characters;
pub mod eisenstein;
pub mod error;
pub mod eta;
pub mod formulas;
pub mod qform;
pub mod solver;
pub mod theta;

pub use arith::{PowerSeries, Rational};
pub use characters::RealDirichletCharacter;
pub use eisenstein::EisensteinSpec;
pub use error::{Error, Result};
pub use eta::EtaProduct;
pub use formulas::{Formula, FormulaTerm, Kernel, Twist};
pub use qform::{CongruenceClass, QuadraticForm, SphericalPoly};
pub use solver::{LinearCombination, SpaceBasis};
pub use theta::{GroupTag, SpaceDescriptor};
