//! Exact linear-optimization oracles: the vertex of C (or L) maximizing a
//! linear functional, without materializing the vertex list.
//!
//! The scan decomposes over Bob rows. For a direction d and each
//! (input x, Bob row r), Alice's best output is independent of everything
//! else, so score(x, r) = max_a Σ_y d[x,y,a,r(y)] can be tabulated once;
//! a one-bit strategy is a pair of rows with a free per-input choice
//! between them, so its value is Σ_x max(score(x,r₀), score(x,r₁)) and the
//! scan over unordered row pairs is exact.

use alloc::vec;
use alloc::vec::Vec;

use crate::behavior::Scenario;

use super::strategy::CommStrategy;
use super::{check_oracle_guard, PolytopeError, VertexSet};

/// Per-direction score tables, laid out [r * nx + x].
struct RowScores {
    rows: usize,
    nx: usize,
    best: Vec<f64>,
    arg: Vec<u8>,
}

impl RowScores {
    fn best(&self, r: usize, x: usize) -> f64 {
        self.best[r * self.nx + x]
    }

    fn arg(&self, r: usize, x: usize) -> u8 {
        self.arg[r * self.nx + x]
    }
}

fn row_scores(direction: &[f64], s: Scenario) -> RowScores {
    let m = (s.nb as u128).pow(s.ny as u32) as usize;
    let mut best = vec![f64::NEG_INFINITY; m * s.nx];
    let mut arg = vec![0u8; m * s.nx];
    let mut row = vec![0usize; s.ny];
    for r in 0..m {
        let mut code = r;
        for digit in row.iter_mut() {
            *digit = code % s.nb;
            code /= s.nb;
        }
        for x in 0..s.nx {
            let mut b_val = f64::NEG_INFINITY;
            let mut b_arg = 0u8;
            for a in 0..s.na {
                let mut sum = 0.0;
                for (y, &ry) in row.iter().enumerate() {
                    sum += direction[s.index(x, y, a, ry)];
                }
                if sum > b_val {
                    b_val = sum;
                    b_arg = a as u8;
                }
            }
            best[r * s.nx + x] = b_val;
            arg[r * s.nx + x] = b_arg;
        }
    }
    RowScores {
        rows: m,
        nx: s.nx,
        best,
        arg,
    }
}

fn decode_row(r: usize, s: Scenario) -> Vec<u8> {
    let mut code = r;
    let mut out = Vec::with_capacity(s.ny);
    for _ in 0..s.ny {
        out.push((code % s.nb) as u8);
        code /= s.nb;
    }
    out
}

fn check_shape(direction: &[f64], s: Scenario) -> Result<(), PolytopeError> {
    if direction.len() != s.table_len() {
        return Err(PolytopeError::FunctionalShape {
            got: direction.len(),
            expected: s.table_len(),
        });
    }
    check_oracle_guard(s)
}

/// argmax over all one-bit strategies of ⟨direction, V⟩, exactly.
///
/// Ties are broken deterministically by the scan order (increasing row
/// pair, then per-input preference for the first row), so repeated calls
/// return the same strategy.
pub fn comm_oracle(
    direction: &[f64],
    s: Scenario,
) -> Result<(CommStrategy, f64), PolytopeError> {
    check_shape(direction, s)?;
    let scores = row_scores(direction, s);
    let m = scores.rows;
    let mut best_val = f64::NEG_INFINITY;
    let mut best_pair = (0usize, 0usize);
    for r0 in 0..m {
        for r1 in r0..m {
            let mut total = 0.0;
            for x in 0..s.nx {
                let v0 = scores.best(r0, x);
                let v1 = scores.best(r1, x);
                total += if v1 > v0 { v1 } else { v0 };
            }
            if total > best_val {
                best_val = total;
                best_pair = (r0, r1);
            }
        }
    }
    let (r0, r1) = best_pair;
    let mut msg = Vec::with_capacity(s.nx);
    let mut alice = Vec::with_capacity(s.nx);
    for x in 0..s.nx {
        if scores.best(r1, x) > scores.best(r0, x) {
            msg.push(1u8);
            alice.push(scores.arg(r1, x));
        } else {
            msg.push(0u8);
            alice.push(scores.arg(r0, x));
        }
    }
    let strat = CommStrategy::new(msg, alice, decode_row(r0, s), decode_row(r1, s), s)?;
    Ok((strat, best_val))
}

/// argmax over deterministic local strategies of ⟨direction, V⟩.
pub fn local_oracle(
    direction: &[f64],
    s: Scenario,
) -> Result<(CommStrategy, f64), PolytopeError> {
    check_shape(direction, s)?;
    let scores = row_scores(direction, s);
    let mut best_val = f64::NEG_INFINITY;
    let mut best_row = 0usize;
    for r in 0..scores.rows {
        let total: f64 = (0..s.nx).map(|x| scores.best(r, x)).sum();
        if total > best_val {
            best_val = total;
            best_row = r;
        }
    }
    let alice: Vec<u8> = (0..s.nx).map(|x| scores.arg(best_row, x)).collect();
    let row = decode_row(best_row, s);
    let strat = CommStrategy::new(vec![0; s.nx], alice, row.clone(), row, s)?;
    Ok((strat, best_val))
}

/// Maximum of a Bell functional over the chosen vertex set, optionally
/// normalized into a game value by dividing by nx·ny.
pub fn bell_value(
    functional: &[f64],
    s: Scenario,
    set: VertexSet,
    game_normalized: bool,
) -> Result<f64, PolytopeError> {
    let (_, value) = match set {
        VertexSet::Comm => comm_oracle(functional, s)?,
        VertexSet::Local => local_oracle(functional, s)?,
    };
    Ok(if game_normalized {
        value / (s.nx * s.ny) as f64
    } else {
        value
    })
}
