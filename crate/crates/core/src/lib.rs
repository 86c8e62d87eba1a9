//! Price-based reflection resource allocation for IRS-aided multiuser MISO
//! downlink.
//!
//! The base station (follower) jointly designs transmit beamformers and the
//! reflection coefficients of a modular IRS, paying the IRS operator (leader)
//! a price per unit of block norm of the reflection profile. The follower's
//! problem is solved with a Lagrangian dual transform, two quadratic
//! transforms and a consensus ADMM whose block step is a group-lasso prox;
//! the leader's best response is the vertex of a piecewise quadratic in the
//! price.
//!
//! Module map:
//! - [`channel`]: geometry, path loss, Rayleigh instances and block stacking.
//! - [`game`]: phase profiles, beamformers, SINR, block norms and utilities.
//! - [`follower`]: the base station's alternating optimization at a fixed price.
//! - [`leader`]: pricing best response, the outer game loop and baselines.

pub mod channel;
pub mod error;
pub mod follower;
pub mod game;
pub mod leader;
pub mod linalg;

pub use channel::{ChannelSet, Dims, FadingParams, Geometry, Point};
pub use error::{Error, Result};
pub use follower::{FollowerSolution, FollowerState, MagnitudeRule, PowerMode, SolverOptions};
pub use game::{BeamformingMatrix, PhaseProfile, Price};
pub use leader::{GameOptions, GameOutcome, GameParams};

pub use nalgebra::Complex;

/// Complex double used throughout.
pub type C64 = Complex<f64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
