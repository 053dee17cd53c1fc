//! Bell-scenario behaviours: dense conditional probability tables
//! P(a,b|x,y). The universal currency between the quantum, protocol and
//! polytope modules.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

/// Per-(x,y) normalization tolerance enforced at construction.
pub const NORMALIZATION_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum BehaviorError {
    #[error("scenario cardinalities must all be at least 1")]
    EmptyScenario,
    #[error("table length {got} does not match scenario size {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("negative entry {value} at flat index {index}")]
    NegativeEntry { index: usize, value: f64 },
    #[error("block (x={x}, y={y}) sums to {sum}, not 1 within {NORMALIZATION_TOL}")]
    NotNormalized { x: usize, y: usize, sum: f64 },
    #[error("signalling from Bob to Alice: marginal deviation {deviation} exceeds {tol}")]
    SignallingToAlice { deviation: f64, tol: f64 },
    #[error("signalling from Alice to Bob: marginal deviation {deviation} exceeds {tol}")]
    SignallingToBob { deviation: f64, tol: f64 },
}

/// Input/output cardinalities (|X|, |Y|, |A|, |B|) of a Bell scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub nx: usize,
    pub ny: usize,
    pub na: usize,
    pub nb: usize,
}

impl Scenario {
    pub fn new(nx: usize, ny: usize, na: usize, nb: usize) -> Result<Self, BehaviorError> {
        if nx == 0 || ny == 0 || na == 0 || nb == 0 {
            return Err(BehaviorError::EmptyScenario);
        }
        Ok(Self { nx, ny, na, nb })
    }

    /// Number of entries in a dense table, nx·ny·na·nb.
    pub fn table_len(&self) -> usize {
        self.nx * self.ny * self.na * self.nb
    }

    /// Flat index of (x, y, a, b) in row-major x, y, a, b order.
    #[inline]
    pub fn index(&self, x: usize, y: usize, a: usize, b: usize) -> usize {
        ((x * self.ny + y) * self.na + a) * self.nb + b
    }
}

impl core::fmt::Display for Scenario {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{},{},{})", self.nx, self.ny, self.na, self.nb)
    }
}

/// A behaviour P(a,b|x,y): one probability table per setting pair, stored
/// dense in row-major x, y, a, b order.
///
/// Construction checks non-negativity and per-(x,y) normalization but not
/// no-signalling: one-bit communication strategies are legitimately
/// signalling from Alice to Bob. Callers that require no-signalling run
/// [`Behavior::check_no_signalling`] with their own tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Behavior {
    scenario: Scenario,
    table: Vec<f64>,
}

impl Behavior {
    pub fn from_table(scenario: Scenario, table: Vec<f64>) -> Result<Self, BehaviorError> {
        if table.len() != scenario.table_len() {
            return Err(BehaviorError::TableLength {
                got: table.len(),
                expected: scenario.table_len(),
            });
        }
        for (i, &v) in table.iter().enumerate() {
            if v < 0.0 || !v.is_finite() {
                return Err(BehaviorError::NegativeEntry { index: i, value: v });
            }
        }
        for x in 0..scenario.nx {
            for y in 0..scenario.ny {
                let mut sum = 0.0;
                for a in 0..scenario.na {
                    for b in 0..scenario.nb {
                        sum += table[scenario.index(x, y, a, b)];
                    }
                }
                if (sum - 1.0).abs() > NORMALIZATION_TOL {
                    return Err(BehaviorError::NotNormalized { x, y, sum });
                }
            }
        }
        Ok(Self { scenario, table })
    }

    /// A single-setting 2x2 table, the shape produced by the two-qubit
    /// protocols and the Born rule.
    pub fn single_setting(table: [[f64; 2]; 2]) -> Result<Self, BehaviorError> {
        let scenario = Scenario::new(1, 1, 2, 2)?;
        Self::from_table(
            scenario,
            vec![table[0][0], table[0][1], table[1][0], table[1][1]],
        )
    }

    pub fn scenario(&self) -> Scenario {
        self.scenario
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn into_table(self) -> Vec<f64> {
        self.table
    }

    #[inline]
    pub fn prob(&self, x: usize, y: usize, a: usize, b: usize) -> f64 {
        self.table[self.scenario.index(x, y, a, b)]
    }

    /// Convex mixture `w·self + (1−w)·other`, the noisy-behaviour family of
    /// visibility searches.
    pub fn mix(&self, w: f64, other: &Behavior) -> Result<Behavior, BehaviorError> {
        if other.scenario != self.scenario {
            return Err(BehaviorError::TableLength {
                got: other.table.len(),
                expected: self.table.len(),
            });
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(p, q)| w * p + (1.0 - w) * q)
            .collect();
        Behavior::from_table(self.scenario, table)
    }

    /// Largest deviation of Alice's outcome marginals across Bob's inputs,
    /// and vice versa. Zero for no-signalling behaviours.
    pub fn signalling_deviation(&self) -> (f64, f64) {
        let s = self.scenario;
        let mut to_alice: f64 = 0.0; // P(a|x) depending on y
        for x in 0..s.nx {
            for a in 0..s.na {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for y in 0..s.ny {
                    let m: f64 = (0..s.nb).map(|b| self.prob(x, y, a, b)).sum();
                    lo = lo.min(m);
                    hi = hi.max(m);
                }
                to_alice = to_alice.max(hi - lo);
            }
        }
        let mut to_bob: f64 = 0.0; // P(b|y) depending on x
        for y in 0..s.ny {
            for b in 0..s.nb {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for x in 0..s.nx {
                    let m: f64 = (0..s.na).map(|a| self.prob(x, y, a, b)).sum();
                    lo = lo.min(m);
                    hi = hi.max(m);
                }
                to_bob = to_bob.max(hi - lo);
            }
        }
        (to_alice, to_bob)
    }

    /// Check no-signalling in both directions at the caller's tolerance.
    pub fn check_no_signalling(&self, tol: f64) -> Result<(), BehaviorError> {
        let (to_alice, to_bob) = self.signalling_deviation();
        if to_alice > tol {
            return Err(BehaviorError::SignallingToAlice {
                deviation: to_alice,
                tol,
            });
        }
        if to_bob > tol {
            return Err(BehaviorError::SignallingToBob {
                deviation: to_bob,
                tol,
            });
        }
        Ok(())
    }
}
