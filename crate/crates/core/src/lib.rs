//! Arithmetic functions, Chebyshev prefix tables and numerical checks for the
//! ingredients of the elementary proof of the prime number theorem.
//!
//! The numerical layers are generic over the scalar type: real-valued code is
//! written against [`Real`] (`f32`/`f64`) and the divisor-sum identities
//! against [`Scalar`], which also covers exact integers and rationals. The
//! aliases at the bottom of this file fix the common concrete choices.

pub mod accum;
pub mod arith;
pub mod asymptotics;
pub mod combinatorics;
mod error;
pub mod scalar;
pub mod selberg;
pub mod sieve;
pub mod suites;

pub use arith::{divisors, factorize, mangoldt, moebius, multiplicity, radical, Factorization};
pub use asymptotics::{
    check_claim, estimate_constant, BigOClaim, BigOReport, ClaimDomain, SampleGrid, Verdict,
};
pub use error::{Error, Result};
pub use scalar::{Real, Scalar};
pub use sieve::{chebyshev_b, ChebyshevTables, SpfTable, TableConfig};

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Prefix tables in double precision.
pub type Tables = ChebyshevTables<f64>;
/// A tabulated function with exact rational values.
pub type ExactFunction = combinatorics::TabulatedFunction<Rational>;
/// A tabulated function with double-precision values.
pub type RealFunction = combinatorics::TabulatedFunction<f64>;
/// A big-O claim over double-precision functions.
pub type Claim = BigOClaim<f64>;
/// A claim report in double precision.
pub type Report = BigOReport<f64>;
/// An iteration trace in double precision.
pub type Trace = selberg::IterationTrace<f64>;
