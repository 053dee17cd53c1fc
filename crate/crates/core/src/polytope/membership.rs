//! Polytope membership by oracle-driven distance minimization.
//!
//! The question "is P in conv(V)?" is answered without the vertex list:
//! starting from one vertex, repeatedly ask the linear oracle for the
//! vertex most aligned with the residual P − x, and recompute the exact
//! nearest point of the convex hull of the vertices discovered so far
//! (a Wolfe min-norm-point step over the active set). The loop maintains
//! two bounds on the true distance from P to the polytope:
//!
//! - upper bound: ‖P − x‖ for the current feasible x,
//! - lower bound: the separation ⟨d, P⟩ − max_V ⟨d, V⟩ scaled by ‖d‖,
//!   valid for any direction d.
//!
//! The point is declared inside when the upper bound drops to the
//! tolerance (the weights are then an explicit convex certificate) and
//! outside when the lower bound exceeds it (the residual is then a
//! separating functional with positive margin). Hitting the iteration cap
//! is reported as an error, never silently truncated.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use crate::behavior::Behavior;

use super::oracle::{comm_oracle, local_oracle};
use super::strategy::{strategy_to_behavior, CommStrategy};
use super::{check_oracle_guard, PolytopeError, VertexSet};

/// Decision tolerance and iteration cap of the membership solver.
#[derive(Debug, Clone, Copy)]
pub struct MembershipOptions {
    /// Euclidean distance below which a point counts as inside.
    pub tolerance: f64,
    /// Cap on oracle calls before giving up.
    pub max_iterations: usize,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-7,
            max_iterations: 5000,
        }
    }
}

/// Why the membership decision holds.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// Convex weights over explicit vertices reconstructing the point
    /// within the tolerance.
    Inside {
        vertices: Vec<CommStrategy>,
        weights: Vec<f64>,
    },
    /// A linear functional whose value at the point exceeds its maximum
    /// over all vertices by `margin` > 0.
    Outside { functional: Vec<f64>, margin: f64 },
}

/// Outcome of a membership test.
#[derive(Debug, Clone)]
pub struct MembershipResult {
    pub inside: bool,
    /// Euclidean gap: the reconstruction residual when inside, a certified
    /// lower bound on the distance to the polytope when outside.
    pub distance: f64,
    pub certificate: Certificate,
}

impl MembershipResult {
    /// Re-evaluate an inside certificate: max |P − Σ w_i V_i| residual.
    pub fn reconstruction_residual(&self, point: &Behavior) -> Option<f64> {
        let Certificate::Inside { vertices, weights } = &self.certificate else {
            return None;
        };
        let s = point.scenario();
        let mut acc = vec![0.0; s.table_len()];
        for (v, &w) in vertices.iter().zip(weights) {
            for (dst, src) in acc.iter_mut().zip(strategy_to_behavior(v, s).table()) {
                *dst += w * src;
            }
        }
        let res = acc
            .iter()
            .zip(point.table())
            .map(|(a, p)| (a - p) * (a - p))
            .sum::<f64>()
            .sqrt();
        Some(res)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solve the equality-constrained least squares
/// min ‖Σ α_i v_i − p‖ s.t. Σ α_i = 1 via the KKT system on the Gram
/// matrix. Returns None when the system is numerically singular.
fn affine_minimizer(gram: &[Vec<f64>], vp: &[f64]) -> Option<Vec<f64>> {
    let k = vp.len();
    let n = k + 1;
    // augmented [G 1; 1ᵀ 0 | vp; 1]
    let mut m = vec![vec![0.0; n + 1]; n];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = gram[i][j];
        }
        m[i][k] = 1.0;
        m[i][n] = vp[i];
    }
    for j in 0..k {
        m[k][j] = 1.0;
    }
    m[k][n] = 1.0;
    // Gaussian elimination with partial pivoting
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        for row in (col + 1)..n {
            let f = m[row][col] / m[col][col];
            if f != 0.0 {
                for j in col..=n {
                    m[row][j] -= f * m[col][j];
                }
            }
        }
    }
    let mut sol = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for j in (row + 1)..n {
            acc -= m[row][j] * sol[j];
        }
        sol[row] = acc / m[row][row];
    }
    sol.truncate(k);
    Some(sol)
}

struct ActiveSet {
    point: Vec<f64>,
    vertices: Vec<CommStrategy>,
    tables: Vec<Vec<f64>>,
    gram: Vec<Vec<f64>>,
    vp: Vec<f64>,
    weights: Vec<f64>,
}

impl ActiveSet {
    fn new(point: &[f64]) -> Self {
        Self {
            point: point.to_vec(),
            vertices: Vec::new(),
            tables: Vec::new(),
            gram: Vec::new(),
            vp: Vec::new(),
            weights: Vec::new(),
        }
    }

    fn contains(&self, strat: &CommStrategy) -> bool {
        self.vertices.iter().any(|v| v == strat)
    }

    fn push(&mut self, strat: CommStrategy, table: Vec<f64>, weight: f64) {
        let ips: Vec<f64> = self.tables.iter().map(|t| dot(t, &table)).collect();
        for (row, ip) in self.gram.iter_mut().zip(&ips) {
            row.push(*ip);
        }
        let mut new_row = ips;
        new_row.push(dot(&table, &table));
        self.gram.push(new_row);
        self.vp.push(dot(&table, &self.point));
        self.tables.push(table);
        self.vertices.push(strat);
        self.weights.push(weight);
    }

    fn remove(&mut self, idx: usize) {
        self.vertices.remove(idx);
        self.tables.remove(idx);
        self.vp.remove(idx);
        self.weights.remove(idx);
        self.gram.remove(idx);
        for row in &mut self.gram {
            row.remove(idx);
        }
    }

    fn current(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.point.len()];
        for (t, &w) in self.tables.iter().zip(&self.weights) {
            for (xi, ti) in x.iter_mut().zip(t) {
                *xi += w * ti;
            }
        }
        x
    }

    fn prune(&mut self) {
        let mut idx = 0;
        while idx < self.weights.len() {
            if self.weights[idx] <= 1e-14 {
                self.remove(idx);
            } else {
                idx += 1;
            }
        }
        let total: f64 = self.weights.iter().sum();
        for w in &mut self.weights {
            *w /= total;
        }
    }

    /// Wolfe min-norm-point correction over the active set: move to the
    /// affine minimizer, walking through weight-zero boundaries and
    /// dropping the vertices that hit them.
    fn correct(&mut self) {
        for _ in 0..self.weights.len() + 8 {
            let Some(alpha) = affine_minimizer(&self.gram, &self.vp) else {
                // numerically dependent set: drop the smallest weight and retry
                if self.weights.len() <= 1 {
                    return;
                }
                let drop = self
                    .weights
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                    .map(|(i, _)| i)
                    .unwrap();
                self.remove(drop);
                continue;
            };
            if alpha.iter().all(|&a| a >= -1e-12) {
                self.weights = alpha.iter().map(|&a| a.max(0.0)).collect();
                self.prune();
                return;
            }
            // line search toward alpha until the first weight hits zero
            let mut theta = 1.0f64;
            for (&w, &a) in self.weights.iter().zip(&alpha) {
                if a < 0.0 {
                    theta = theta.min(w / (w - a));
                }
            }
            for (w, &a) in self.weights.iter_mut().zip(&alpha) {
                *w = (1.0 - theta) * *w + theta * a;
                if *w < 1e-14 {
                    *w = 0.0;
                }
            }
            self.prune();
        }
    }
}

/// Decide whether a behaviour lies in conv(vertices) of the chosen set.
///
/// Runs the oracle-driven minimization described in the module docs; the
/// returned certificate is self-contained and can be re-verified with
/// [`MembershipResult::reconstruction_residual`] or by evaluating the
/// separating functional against the oracle.
pub fn membership(
    point: &Behavior,
    set: VertexSet,
    opts: &MembershipOptions,
) -> Result<MembershipResult, PolytopeError> {
    let s = point.scenario();
    check_oracle_guard(s)?;
    let oracle = |d: &[f64]| match set {
        VertexSet::Comm => comm_oracle(d, s),
        VertexSet::Local => local_oracle(d, s),
    };
    let p = point.table();
    let mut active = ActiveSet::new(p);
    let (first, _) = oracle(p)?;
    let table = strategy_to_behavior(&first, s).into_table();
    active.push(first, table, 1.0);

    let mut last_bounds = (0.0f64, f64::INFINITY);
    for _iter in 0..opts.max_iterations {
        let x = active.current();
        let diff: Vec<f64> = p.iter().zip(&x).map(|(pi, xi)| pi - xi).collect();
        let ub = dot(&diff, &diff).sqrt();
        if ub <= opts.tolerance {
            return Ok(MembershipResult {
                inside: true,
                distance: ub,
                certificate: Certificate::Inside {
                    vertices: active.vertices.clone(),
                    weights: active.weights.clone(),
                },
            });
        }
        let (candidate, hval) = oracle(&diff)?;
        let margin = dot(&diff, p) - hval;
        let lb = margin / ub;
        last_bounds = (lb.max(0.0), ub);
        if lb > opts.tolerance {
            return Ok(MembershipResult {
                inside: false,
                distance: lb,
                certificate: Certificate::Outside {
                    functional: diff,
                    margin,
                },
            });
        }
        let progress = hval - dot(&diff, &x);
        if progress <= 1e-12 * (1.0 + ub) || active.contains(&candidate) {
            // x is the projection to numerical precision: ub is the distance
            if margin > 0.0 {
                return Ok(MembershipResult {
                    inside: false,
                    distance: lb.max(0.0),
                    certificate: Certificate::Outside {
                        functional: diff,
                        margin,
                    },
                });
            }
            break;
        }
        let table = strategy_to_behavior(&candidate, s).into_table();
        active.push(candidate, table, 0.0);
        active.correct();
    }
    Err(PolytopeError::NonConvergence {
        iterations: opts.max_iterations,
        lower: last_bounds.0,
        upper: last_bounds.1,
    })
}
