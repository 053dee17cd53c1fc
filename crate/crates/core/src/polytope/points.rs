//! Reference behaviours: white noise, permutation-correlated no-signalling
//! points, and the fixed (4,2,4,4) point whose communication and quantum
//! noise thresholds coincide.

use alloc::vec;
use alloc::vec::Vec;

use crate::behavior::{Behavior, Scenario};

use super::PolytopeError;

/// The uniform behaviour, 1/(na·nb) everywhere. Inside L for every
/// scenario, being the uniform mixture of all deterministic points.
pub fn white_noise(s: Scenario) -> Behavior {
    let p = 1.0 / (s.na * s.nb) as f64;
    Behavior::from_table(s, vec![p; s.table_len()]).expect("uniform table is normalized")
}

/// A maximally correlated, locally unbiased no-signalling point: every
/// (x,y) block is a permutation matrix scaled by 1/d. `perms` is indexed
/// row-major by (x, y) and each entry maps Alice's outcome to Bob's.
pub fn permutation_point(s: Scenario, perms: &[Vec<usize>]) -> Result<Behavior, PolytopeError> {
    if s.na != s.nb {
        return Err(PolytopeError::OutputsMismatch);
    }
    let d = s.na;
    if perms.len() != s.nx * s.ny {
        return Err(PolytopeError::NotPermutation);
    }
    let mut table = vec![0.0; s.table_len()];
    for x in 0..s.nx {
        for y in 0..s.ny {
            let perm = &perms[x * s.ny + y];
            if perm.len() != d {
                return Err(PolytopeError::NotPermutation);
            }
            let mut seen = vec![false; d];
            for (a, &b) in perm.iter().enumerate() {
                if b >= d || seen[b] {
                    return Err(PolytopeError::NotPermutation);
                }
                seen[b] = true;
                table[s.index(x, y, a, b)] = 1.0 / d as f64;
            }
        }
    }
    Ok(Behavior::from_table(s, table)?)
}

/// The cyclic permutation family b = (a + x·y) mod d, a configurable
/// default for candidate nonlocal points in (nx, ny, d, d) scenarios.
pub fn cyclic_point(s: Scenario) -> Result<Behavior, PolytopeError> {
    if s.na != s.nb {
        return Err(PolytopeError::OutputsMismatch);
    }
    let d = s.na;
    let perms: Vec<Vec<usize>> = (0..s.nx)
        .flat_map(|x| (0..s.ny).map(move |y| (0..d).map(|a| (a + x * y) % d).collect()))
        .collect();
    permutation_point(s, &perms)
}

/// Per-block permutations of [`table2_point`], Alice outcome → Bob outcome.
fn table2_perms() -> Vec<Vec<usize>> {
    let y2: [[usize; 4]; 4] = [
        [0, 1, 2, 3],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
        [1, 0, 3, 2],
    ];
    let mut perms = Vec::with_capacity(8);
    for x in 0..4 {
        perms.push((0..4).collect());
        perms.push(y2[x].to_vec());
    }
    perms
}

/// The fixed (4,2,4,4) no-signalling point: identity correlation on Bob's
/// first input, the four pairwise-distinct permutations above on his
/// second, every marked cell at probability 1/4. Locally unbiased and
/// maximally correlated; its noise thresholds for the quantum set and for
/// C both equal 1/3.
pub fn table2_point() -> Behavior {
    let s = Scenario::new(4, 2, 4, 4).expect("static scenario");
    permutation_point(s, &table2_perms()).expect("static permutation family")
}

/// The Bell functional with coefficient 1 on every marked cell of
/// [`table2_point`], and its scenario. Game-normalized over C its maximum
/// is 3/4.
pub fn table2_functional() -> (Scenario, Vec<f64>) {
    let s = Scenario::new(4, 2, 4, 4).expect("static scenario");
    let point = table2_point();
    let f = point
        .table()
        .iter()
        .map(|&p| if p > 0.0 { 1.0 } else { 0.0 })
        .collect();
    (s, f)
}
