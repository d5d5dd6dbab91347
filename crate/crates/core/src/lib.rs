//! Fano 3-folds as regular pullbacks of weighted P2xP2 key varieties.
//!
//! The algebra is generic over the coefficient ring; the aliases below fix
//! arbitrary precision integers, which is what the catalogue uses.

pub mod catalog;
pub mod enumeration;
pub mod error;
pub mod fano_model;
pub mod key_variety;
pub mod series;
pub mod unprojection;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use fano_model::{find_pullback, orbifold_screen, FanoModel, QuotientPoint, Verdict};
pub use key_variety::{cox_bigrading, key_series, szendroi_numerator, wellform, Half, WeightData, WeightMatrix};
pub use series::{Coefficient, Denominator, Polynomial, Series};

pub type IntPolynomial = Polynomial<BigInt>;
pub type HilbertSeries = Series<BigInt>;
/// Machine integer variants, fine for small formats.
pub type SmallPolynomial = Polynomial<i64>;
pub type SmallSeries = Series<i64>;
