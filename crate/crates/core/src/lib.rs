//! Tropical singularity, Euler derivatives and discriminant cones.

pub mod arith;
pub mod disc_newton;
pub mod error;
pub mod hpn;
pub mod json;
pub mod euler;
pub mod singular;
pub mod trop_core;
pub mod universal;
pub mod verify;

pub use error::{Error, Result};
pub use euler::{derivative_family, derivative_family_for, euler_derivative, LinearForm, Prime, ValuationRegime};
pub use trop_core::{Exponent, Point, TropicalPolynomial, UnivariateRoot};
pub use singular::{is_singular_at, singular_points_multivariate, singular_points_univariate, SingularityReport};
