//! Exact arithmetic for the periodic-point theory of one-solenoid and toral
//! automorphisms.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; IO, text formats and the command line live in the
//! `solenoid-lab` companion crate.
//!
//! Module map:
//!
//! * [`arith`]: valuations, lifting the exponent, multiplicative orders,
//!   Möbius function, factorization, [`ReducedRational`] and [`PrimeSet`].
//! * [`baer`]: characteristic sequences of subgroups of ℚ and solenoid systems.
//! * [`orbits`]: periodic points, closed orbits, Mertens and π sums.
//! * [`zeta`]: zeta series, rational zeta functions, realizability tests.
//! * [`mahler`]: entropy and Mahler measure.
//! * [`conjugacy`]: intertwiner lattices and conjugacy over localizations.
//! * [`dirichlet`]: orbit Dirichlet series, growth-rate fits and constructions.

#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod arith;
pub mod baer;
pub mod conjugacy;
pub mod dirichlet;
mod error;
pub mod mahler;
pub mod matrix;
pub mod orbits;
pub mod poly;
pub mod zeta;

pub use arith::{PrimeSet, PrimeSetKind, ReducedRational};
pub use baer::{CharacteristicSequence, Height, MapMode, SolenoidSystem};
pub use error::{Error, ErrorKind, Result};
pub use matrix::IntegerMatrix;
pub use poly::IntPolynomial;
