//! Secrecy toolkit for the two-user Z interference channel with a one-way
//! cooperative link between the transmitters.
//!
//! The deterministic side ([`detmodel`], [`schemes`], [`verifier`],
//! [`regions`]) is exact: schemes are GF(2) encoders, leakage is computed as
//! a rational number of bits and regions are polytopes with rational
//! vertices. The Gaussian side ([`gaussian`]) evaluates achievable rates,
//! sum-rate outer bounds and generalized degrees of freedom numerically.

pub mod cli;
pub mod detmodel;
pub mod error;
pub mod gaussian;
pub mod gf2;
pub mod regions;
pub mod schemes;
pub mod verifier;

pub use detmodel::{make_config, regime, transmit, DetConfig, LevelVector, Regime};
pub use error::{Result, ZicError};
pub use gaussian::{CodebookParams, GaussConfig, GdofPoint, GridSpec, PowerSplit};
pub use regions::{capacity_region, vertices, Constraint, RateRegion};
pub use schemes::{corner_scheme, corners, encode, Corner, CornerId, LinearScheme};
pub use verifier::{verify, Rational, VerificationReport, VerifierConfig};
