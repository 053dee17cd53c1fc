//! Local hidden variables plus one bit of communication.
//!
//! This crate simulates projective measurements on entangled two-qubit
//! states with classical models: shared randomness (two uniform Bloch
//! vectors) augmented by a single bit of one-way communication from Alice
//! to Bob. It provides
//!
//! - exact quantum targets via the Born rule ([`qstate`]),
//! - the one-bit simulation protocols and their Monte Carlo behaviour
//!   estimator ([`lhv`]),
//! - statistical distances between model and target, with the sample size
//!   needed to tell them apart ([`stats`]),
//! - the polytope of deterministic one-bit strategies: vertex enumeration,
//!   an exact linear-optimization oracle, membership tests and noise
//!   thresholds ([`polytope`]).
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature for embedded or wasm use. All operations are pure
//! functions of their inputs plus an explicit RNG handle, so everything
//! can run concurrently as long as each worker owns its RNG (see
//! [`stream`] for deterministic per-task streams).

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod behavior;
pub mod bloch;
pub mod lhv;
pub mod polytope;
pub mod qstate;
pub mod stats;
pub mod stream;

pub use behavior::{Behavior, BehaviorError, Scenario};
pub use bloch::{BlochVector, Sign};
