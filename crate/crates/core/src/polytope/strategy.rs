//! Deterministic one-bit strategies in canonical form, their counting
//! formulas and duplicate-free enumeration.
//!
//! A raw strategy is a message function X → {0,1}, Alice outputs per input,
//! and Bob outputs per (message, input). Two raw strategies produce the
//! same behaviour iff they agree on Alice's outputs and on the Bob row
//! actually selected for each x, which makes the raw count
//! |A|^|X|·|B|^(2|Y|)·2^|X| collapse to
//! |A|^|X|·(|B|^|Y| + (2^(|X|−1)−1)(|B|^(2|Y|) − |B|^|Y|)) distinct
//! vertices. Canonical form pins the degeneracies: msg(0) = 0, and a
//! constant message stores equal Bob rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::behavior::{Behavior, Scenario};

use super::{check_enumeration_guard, checked_pow, PolytopeError, VertexSet};

/// A deterministic one-bit strategy (a vertex of C) in canonical form.
///
/// Local deterministic strategies are the special case of a constant
/// message with both Bob rows equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommStrategy {
    msg: Vec<u8>,
    alice_out: Vec<u8>,
    bob_out: [Vec<u8>; 2],
}

impl CommStrategy {
    /// Build a strategy, canonicalizing the complement degeneracy
    /// (msg(0) = 0) and the unused-row degeneracy of constant messages.
    pub fn new(
        msg: Vec<u8>,
        alice_out: Vec<u8>,
        bob_row0: Vec<u8>,
        bob_row1: Vec<u8>,
        s: Scenario,
    ) -> Result<Self, PolytopeError> {
        if msg.len() != s.nx
            || alice_out.len() != s.nx
            || bob_row0.len() != s.ny
            || bob_row1.len() != s.ny
            || msg.iter().any(|&m| m > 1)
            || alice_out.iter().any(|&a| a as usize >= s.na)
            || bob_row0.iter().any(|&b| b as usize >= s.nb)
            || bob_row1.iter().any(|&b| b as usize >= s.nb)
        {
            return Err(PolytopeError::InvalidStrategy);
        }
        let (mut msg, mut rows) = (msg, [bob_row0, bob_row1]);
        if msg[0] == 1 {
            for m in msg.iter_mut() {
                *m = 1 - *m;
            }
            rows.swap(0, 1);
        }
        if msg.iter().all(|&m| m == 0) {
            rows[1] = rows[0].clone();
        }
        Ok(Self {
            msg,
            alice_out,
            bob_out: rows,
        })
    }

    /// Message bit per Alice input.
    pub fn msg(&self) -> &[u8] {
        &self.msg
    }

    /// Alice's output per input.
    pub fn alice_out(&self) -> &[u8] {
        &self.alice_out
    }

    /// Bob's output row for message value `m`.
    pub fn bob_row(&self, m: u8) -> &[u8] {
        &self.bob_out[m as usize]
    }

    /// True when the message is constant, i.e. the strategy is local.
    pub fn is_local(&self) -> bool {
        self.msg.iter().all(|&m| m == 0)
    }

    /// The Bob row selected when Alice's input is `x`.
    pub fn bob_row_for_input(&self, x: usize) -> &[u8] {
        self.bob_row(self.msg[x])
    }
}

/// Materialize the 0/1 behaviour table of a strategy:
/// table[x][y][a][b] = 1 iff a = alice_out(x) and b = bob_row(msg(x))(y).
/// Signalling Alice→Bob is permitted; Bob→Alice marginals stay independent.
pub fn strategy_to_behavior(strat: &CommStrategy, s: Scenario) -> Behavior {
    let mut table = vec![0.0; s.table_len()];
    for x in 0..s.nx {
        let a = strat.alice_out[x] as usize;
        let row = strat.bob_row_for_input(x);
        for y in 0..s.ny {
            table[s.index(x, y, a, row[y] as usize)] = 1.0;
        }
    }
    Behavior::from_table(s, table).expect("deterministic tables are normalized")
}

/// The duplicate-free vertex count of C:
/// |A|^|X|·(|B|^|Y| + (2^(|X|−1)−1)(|B|^(2|Y|) − |B|^|Y|)).
/// None on arithmetic overflow.
pub fn comm_vertex_count(s: Scenario) -> Option<u128> {
    let alices = checked_pow(s.na, s.nx)?;
    let rows = checked_pow(s.nb, s.ny)?;
    let pairs = rows.checked_mul(rows)?;
    let msgs = 1u128.checked_shl(u32::try_from(s.nx).ok()? - 1)? - 1;
    alices.checked_mul(rows.checked_add(msgs.checked_mul(pairs - rows)?)?)
}

/// The same closed formula with leading factor |A| instead of |A|^|X|, as
/// printed in some of the literature. Disagrees with the brute-force
/// duplicate count whenever |X| > 1 and |A| > 1; kept so callers can report
/// both figures side by side.
pub fn comm_vertex_count_published_formula(s: Scenario) -> Option<u128> {
    let rows = checked_pow(s.nb, s.ny)?;
    let pairs = rows.checked_mul(rows)?;
    let msgs = 1u128.checked_shl(u32::try_from(s.nx).ok()? - 1)? - 1;
    (s.na as u128).checked_mul(rows.checked_add(msgs.checked_mul(pairs - rows)?)?)
}

/// |A|^|X|·|B|^(2|Y|)·2^|X|, the raw strategy count before deduplication.
pub fn raw_strategy_count(s: Scenario) -> Option<u128> {
    let alices = checked_pow(s.na, s.nx)?;
    let pairs = checked_pow(s.nb, 2 * s.ny)?;
    let msgs = 1u128.checked_shl(u32::try_from(s.nx).ok()?)?;
    alices.checked_mul(pairs)?.checked_mul(msgs)
}

/// |A|^|X|·|B|^|Y|, the deterministic local vertex count.
pub fn local_vertex_count(s: Scenario) -> Option<u128> {
    checked_pow(s.na, s.nx)?.checked_mul(checked_pow(s.nb, s.ny)?)
}

/// Digits of `code` in base `base`, least significant first, `len` digits.
fn decode_digits(mut code: usize, base: usize, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % base) as u8);
        code /= base;
    }
    out
}

fn all_tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (base as u128).pow(len as u32) as usize;
    (0..total).map(move |code| decode_digits(code, base, len))
}

/// Exhaustive duplicate-free list of canonical one-bit strategies, in a
/// fixed deterministic order.
pub fn enumerate_comm_vertices(s: Scenario) -> Result<Vec<CommStrategy>, PolytopeError> {
    check_enumeration_guard(s, VertexSet::Comm)?;
    let rows: Vec<Vec<u8>> = all_tuples(s.nb, s.ny).collect();
    let nonconstant_msgs: Vec<Vec<u8>> = if s.nx == 1 {
        Vec::new()
    } else {
        (1..(1usize << (s.nx - 1)))
            .map(|code| {
                let mut msg = vec![0u8];
                msg.extend(decode_digits(code, 2, s.nx - 1));
                msg
            })
            .collect()
    };
    let mut out = Vec::with_capacity(comm_vertex_count(s).unwrap_or(0) as usize);
    for alice in all_tuples(s.na, s.nx) {
        for (r0, row0) in rows.iter().enumerate() {
            out.push(CommStrategy {
                msg: vec![0; s.nx],
                alice_out: alice.clone(),
                bob_out: [row0.clone(), row0.clone()],
            });
            for (r1, row1) in rows.iter().enumerate() {
                if r1 == r0 {
                    continue;
                }
                for msg in &nonconstant_msgs {
                    out.push(CommStrategy {
                        msg: msg.clone(),
                        alice_out: alice.clone(),
                        bob_out: [row0.clone(), row1.clone()],
                    });
                }
            }
        }
    }
    Ok(out)
}

/// All |A|^|X|·|B|^|Y| deterministic local behaviours, as constant-message
/// strategies.
pub fn enumerate_local_vertices(s: Scenario) -> Result<Vec<CommStrategy>, PolytopeError> {
    check_enumeration_guard(s, VertexSet::Local)?;
    let rows: Vec<Vec<u8>> = all_tuples(s.nb, s.ny).collect();
    let mut out = Vec::with_capacity(local_vertex_count(s).unwrap_or(0) as usize);
    for alice in all_tuples(s.na, s.nx) {
        for row in &rows {
            out.push(CommStrategy {
                msg: vec![0; s.nx],
                alice_out: alice.clone(),
                bob_out: [row.clone(), row.clone()],
            });
        }
    }
    Ok(out)
}
