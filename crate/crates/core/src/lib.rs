//! Exact evaluation of the seminorm pair map on (compactified) apartments of
//! split adjoint groups, together with the boundary combinatorics of the
//! wonderful compactification.
//!
//! Everything multiplicative is carried in valuation coordinates: an absolute
//! value `|a|` is stored as `val(a)` with `|a| = b^(-val(a))` for a base
//! `b > 1` chosen only at presentation time. Maxima of absolute values become
//! minima of valuations, so the seminorm formulas are min-plus linear.
//!
//! The crate is `no_std` (with `alloc`). File formats, plotting and the
//! command-line front end live in the companion `bt-wonder` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod apartment;
pub mod bigcell;
pub mod error;
pub mod rootsys;
pub mod valued;
pub mod verify;
pub mod wonder;

pub use error::{Error, Result};

/// Exact rationals used for every valuation and coefficient.
pub type Q = num_rational::BigRational;

pub use apartment::{ApartmentPoint, BoundaryPoint, FanCone};
pub use bigcell::{CellPolynomial, Monomial, Ring, Seminorm};
pub use rootsys::{Family, ParabolicType, RootSystem, WeylElement, WeylGroup};
pub use valued::{Coefficient, PAdic, RatFn, TAdic, Val, ValuedField};
pub use wonder::{FlagPoint, StratumDescriptor};
