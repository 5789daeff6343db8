//! Exact-arithmetic workbench for Collatz-style dynamics.
//!
//! The map under study sends f to (x+1)f - f(0) when the constant term is
//! nonzero and to f/x otherwise. It acts on polynomial rings R[x], on the
//! eventually periodic part of power series rings R[[x]] (represented by
//! rational forms u(1+xv)^{-1}), and -- as the classical 3n+1 map -- on the
//! rationals with odd denominator inside the 2-adic integers.
//!
//! The crate provides the supported coefficient rings, orbit iteration with
//! cycle detection, periodicity criteria and exact period formulas, cycle
//! censuses over finite fields, the necklace-style cycle-count formulas for
//! series and 2-adic dynamics, and constructive periodic points from parity
//! vectors. Every closed-form count is cross-checkable against brute-force
//! enumeration through the `verify` module.

pub mod census;
pub(crate) mod detect;
pub mod dyadic;
mod error;
pub mod parity;
pub mod poly;
pub mod ring;
pub mod series;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{CharZeroClass, OrbitReport, Poly};
pub use ring::{make_ring, CharFactorization, Ring, RingElem};
pub use series::RationalSeries;
pub use dyadic::DyadicRational;
