//! Exact combinatorics of set partitions and partition algebras.
//!
//! The crate is `no_std` and only needs an allocator. It covers the lattice of
//! set partitions with its geodesic distance and base-pointed orders, the
//! partition algebra `ℂ[P_k(N)]` with a symbolic parameter `N`, Kreweras
//! complements, moment/cumulant transforms on linear forms, and the large-`N`
//! limit together with its fluctuation expansion.
#![no_std]

extern crate alloc;

pub mod asymptotics;
pub mod diagram;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod halfint;
pub mod kreweras;
pub mod laurent;
pub mod matrix;
pub mod orbit;
pub mod partition;
pub mod rep;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use laurent::LaurentScalar;
pub use partition::{GroundSet, Partition};
pub use scalar::Rational;
