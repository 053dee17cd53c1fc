//! The one-bit-communication polytope C and the local polytope L.
//!
//! L is the convex hull of deterministic local strategies; behaviours in L
//! admit a shared-randomness model. C is the convex hull of deterministic
//! strategies where Alice additionally sends Bob one bit that may depend on
//! her input; it strictly contains L and, unlike L, extends outside the
//! no-signalling set. Vertices are stored as canonical strategy triples and
//! materialized as tables on demand; membership is decided by an
//! oracle-driven distance minimization that never materializes the full
//! vertex list, so scenarios with hundreds of thousands of vertices stay
//! cheap.

mod membership;
mod oracle;
mod points;
mod strategy;
mod visibility;

pub use membership::{membership, Certificate, MembershipOptions, MembershipResult};
pub use oracle::{bell_value, comm_oracle, local_oracle};
pub use points::{cyclic_point, permutation_point, table2_functional, table2_point, white_noise};
pub use strategy::{
    comm_vertex_count, comm_vertex_count_published_formula, enumerate_comm_vertices,
    enumerate_local_vertices, local_vertex_count, raw_strategy_count, strategy_to_behavior,
    CommStrategy,
};
pub use visibility::{visibility, VisibilityOptions, VisibilityResult};

use thiserror::Error;

use crate::behavior::{BehaviorError, Scenario};

/// Practical ceiling on Alice's input count for enumeration.
pub const MAX_INPUTS: usize = 8;
/// Ceiling on the enumerated Bob-pair count nb^(2·ny).
pub const MAX_BOB_PAIRS: u128 = 1_000_000;
/// Ceiling on materialized vertex lists.
pub const MAX_VERTICES: u128 = 20_000_000;
/// Ceiling on the oracle scan size nb^(2·ny) · 2^(nx−1).
pub const MAX_ORACLE_SCAN: u128 = 10_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum PolytopeError {
    #[error("{quantity} = {value} exceeds the guard {limit}")]
    GuardExceeded {
        quantity: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("functional has {got} entries, scenario needs {expected}")]
    FunctionalShape { got: usize, expected: usize },
    #[error("behaviour scenario {got} does not match {expected}")]
    ScenarioMismatch { got: Scenario, expected: Scenario },
    #[error("membership did not converge after {iterations} iterations (distance in [{lower}, {upper}])")]
    NonConvergence {
        iterations: usize,
        lower: f64,
        upper: f64,
    },
    #[error("the noise behaviour itself lies outside the set; no threshold exists")]
    NoiseOutsideSet,
    #[error("permutation table is not a valid permutation family for the scenario")]
    NotPermutation,
    #[error("permutation points need na == nb")]
    OutputsMismatch,
    #[error("strategy components do not fit the scenario")]
    InvalidStrategy,
    #[error(transparent)]
    Behavior(#[from] BehaviorError),
}

/// Which vertex set to optimize or test against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexSet {
    /// Deterministic local strategies (the polytope L).
    Local,
    /// Deterministic one-bit-communication strategies (the polytope C).
    Comm,
}

impl core::fmt::Display for VertexSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VertexSet::Local => write!(f, "local"),
            VertexSet::Comm => write!(f, "comm"),
        }
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    (base as u128).checked_pow(u32::try_from(exp).ok()?)
}

/// nb^(2·ny), the Bob-pair count of the oracle decomposition.
fn bob_pair_count(s: Scenario) -> Option<u128> {
    checked_pow(s.nb, 2 * s.ny)
}

fn guard(quantity: &'static str, value: Option<u128>, limit: u128) -> Result<u128, PolytopeError> {
    match value {
        Some(v) if v <= limit => Ok(v),
        Some(v) => Err(PolytopeError::GuardExceeded {
            quantity,
            value: v,
            limit,
        }),
        None => Err(PolytopeError::GuardExceeded {
            quantity,
            value: u128::MAX,
            limit,
        }),
    }
}

/// Enumeration guards: nx ≤ 8, nb^(2·ny) ≤ 10⁶ and the resulting vertex
/// list within memory limits.
pub fn check_enumeration_guard(s: Scenario, set: VertexSet) -> Result<(), PolytopeError> {
    if s.nx > MAX_INPUTS {
        return Err(PolytopeError::GuardExceeded {
            quantity: "alice input count",
            value: s.nx as u128,
            limit: MAX_INPUTS as u128,
        });
    }
    guard("bob pair count nb^(2ny)", bob_pair_count(s), MAX_BOB_PAIRS)?;
    let count = match set {
        VertexSet::Local => local_vertex_count(s),
        VertexSet::Comm => comm_vertex_count(s),
    };
    guard("vertex count", count, MAX_VERTICES)?;
    Ok(())
}

/// Oracle guard: nb^(2·ny) · 2^(nx−1) ≤ 10⁷.
pub fn check_oracle_guard(s: Scenario) -> Result<(), PolytopeError> {
    let pairs = bob_pair_count(s);
    let scan = pairs.and_then(|p| {
        let msgs = 1u128.checked_shl(u32::try_from(s.nx - 1).ok()?)?;
        p.checked_mul(msgs)
    });
    guard("oracle scan size nb^(2ny)·2^(nx-1)", scan, MAX_ORACLE_SCAN)?;
    Ok(())
}
