//! Exact quantum targets: projective measurements on partially entangled
//! two-qubit states and on maximally entangled qudit pairs, plus Haar-random
//! basis sampling.
//!
//! State convention: |ψ(θ)⟩ = cos(θ)|01⟩ − sin(θ)|10⟩ with θ ∈ [0, π/4];
//! θ = π/4 is the maximally entangled state, θ = 0 the product state. With
//! this convention Alice's ⟨σ_z⟩ is cos(2θ). Bob's basis is not conjugated.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::behavior::{Behavior, Scenario};
use crate::bloch::BlochVector;

/// Orthonormality tolerance of a [`QuditBasis`]: |⟨v_i|v_j⟩ − δ_ij|.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum QstateError {
    #[error("theta {0} outside [0, π/4]")]
    ThetaRange(f64),
    #[error("basis dimension {got} does not match d = {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("basis is not orthonormal: residual {residual} exceeds {ORTHONORMALITY_TOL}")]
    NotOrthonormal { residual: f64 },
    #[error("each party needs at least one basis")]
    EmptyBases,
    #[error("qudit dimension must be at least 2")]
    DimensionTooSmall,
}

/// A pure two-qubit state |ψ(θ)⟩ = cos(θ)|01⟩ − sin(θ)|10⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    theta: f64,
}

impl TwoQubitState {
    pub fn new(theta: f64) -> Result<Self, QstateError> {
        if !(0.0..=FRAC_PI_4 + 1e-12).contains(&theta) {
            return Err(QstateError::ThetaRange(theta));
        }
        Ok(Self { theta })
    }

    /// The maximally entangled state, θ = π/4.
    pub fn max_entangled() -> Self {
        Self { theta: FRAC_PI_4 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Amplitudes in the computational basis order |00⟩,|01⟩,|10⟩,|11⟩.
    pub fn amplitudes(&self) -> [Complex64; 4] {
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(self.theta.cos(), 0.0),
            Complex64::new(-self.theta.sin(), 0.0),
            Complex64::new(0.0, 0.0),
        ]
    }
}

/// ⟨A⟩, ⟨B⟩ and the correlator ⟨AB⟩ of a joint projective measurement,
/// equivalent to the full 2x2 table via
/// P(A,B) = ¼(1 + A⟨A⟩ + B⟨B⟩ + AB⟨AB⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    pub mean_a: f64,
    pub mean_b: f64,
    pub correlator: f64,
}

impl PairStats {
    /// Expand into the 2x2 outcome table (+1 ↔ index 0, −1 ↔ index 1).
    pub fn table(&self) -> [[f64; 2]; 2] {
        let mut t = [[0.0; 2]; 2];
        for (ia, a) in [1.0, -1.0].iter().enumerate() {
            for (ib, b) in [1.0, -1.0].iter().enumerate() {
                t[ia][ib] =
                    0.25 * (1.0 + a * self.mean_a + b * self.mean_b + a * b * self.correlator);
            }
        }
        t
    }
}

/// 2x2 complex projector (I + sign·(v·σ))/2 onto the ±1 eigenspace of v·σ.
fn qubit_projector(v: &BlochVector, sign: f64) -> [[Complex64; 2]; 2] {
    let half = 0.5 * sign;
    [
        [
            Complex64::new(0.5 + half * v.z, 0.0),
            Complex64::new(half * v.x, -half * v.y),
        ],
        [
            Complex64::new(half * v.x, half * v.y),
            Complex64::new(0.5 - half * v.z, 0.0),
        ],
    ]
}

/// Born-rule behaviour of a joint projective measurement (â, b̂) on
/// |ψ(θ)⟩, as a single-setting 2x2 table. Outcomes ±1 map to indices 0/1.
///
/// Computed by applying the projector pair (I ± â·σ)/2 ⊗ (I ± b̂·σ)/2 to
/// the state vector; the closed form in [`closed_form_stats`] must agree
/// with this to 1e−12 and the pair is tested against each other.
pub fn born_behavior(state: &TwoQubitState, a_hat: &BlochVector, b_hat: &BlochVector) -> Behavior {
    let psi = state.amplitudes();
    let mut table = [[0.0; 2]; 2];
    for (ia, sa) in [1.0, -1.0].iter().enumerate() {
        let pa = qubit_projector(a_hat, *sa);
        for (ib, sb) in [1.0, -1.0].iter().enumerate() {
            let pb = qubit_projector(b_hat, *sb);
            // (P_a ⊗ P_b)|ψ⟩, then ⟨ψ|·⟩
            let mut prob = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    let mut amp = Complex64::new(0.0, 0.0);
                    for k in 0..2 {
                        for l in 0..2 {
                            amp += pa[i][k] * pb[j][l] * psi[2 * k + l];
                        }
                    }
                    prob += (psi[2 * i + j].conj() * amp).re;
                }
            }
            table[ia][ib] = prob.max(0.0);
        }
    }
    Behavior::single_setting(table).expect("Born probabilities are normalized")
}

/// Closed-form single-pair statistics for |ψ(θ)⟩:
/// ⟨A⟩ = a_z cos2θ, ⟨B⟩ = −b_z cos2θ,
/// ⟨AB⟩ = −sin2θ (a_x b_x + a_y b_y) − a_z b_z.
///
/// Fast path for Monte Carlo comparisons; agrees with [`born_behavior`]
/// entry-wise to 1e−12.
pub fn closed_form_stats(
    state: &TwoQubitState,
    a_hat: &BlochVector,
    b_hat: &BlochVector,
) -> PairStats {
    let c2 = (2.0 * state.theta).cos();
    let s2 = (2.0 * state.theta).sin();
    PairStats {
        mean_a: a_hat.z * c2,
        mean_b: -b_hat.z * c2,
        correlator: -s2 * (a_hat.x * b_hat.x + a_hat.y * b_hat.y) - a_hat.z * b_hat.z,
    }
}

/// An orthonormal measurement basis of C^d.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditBasis {
    dimension: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl QuditBasis {
    /// Validate pairwise inner products |⟨v_i|v_j⟩ − δ_ij| ≤ 1e−10.
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self, QstateError> {
        let d = vectors.len();
        if d < 2 {
            return Err(QstateError::DimensionTooSmall);
        }
        for v in &vectors {
            if v.len() != d {
                return Err(QstateError::DimensionMismatch {
                    got: v.len(),
                    expected: d,
                });
            }
        }
        let mut residual: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut ip = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    ip += vectors[i][k].conj() * vectors[j][k];
                }
                let delta = if i == j { 1.0 } else { 0.0 };
                residual = residual.max((ip - delta).norm());
            }
        }
        if residual > ORTHONORMALITY_TOL {
            return Err(QstateError::NotOrthonormal { residual });
        }
        Ok(Self {
            dimension: d,
            vectors,
        })
    }

    /// The computational basis of C^d.
    pub fn computational(d: usize) -> Result<Self, QstateError> {
        if d < 2 {
            return Err(QstateError::DimensionTooSmall);
        }
        let vectors = (0..d)
            .map(|k| {
                let mut v = vec![Complex64::new(0.0, 0.0); d];
                v[k] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        Self::new(vectors)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vector(&self, k: usize) -> &[Complex64] {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// The entry-wise complex conjugate basis.
    pub fn conjugated(&self) -> Self {
        Self {
            dimension: self.dimension,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(|z| z.conj()).collect())
                .collect(),
        }
    }
}

/// Whether Bob's measurement basis is applied as given or conjugated.
///
/// The two conventions coincide for real bases and are equidistributed
/// under Haar sampling, but differ for a fixed complex basis: with
/// `Conjugated` and identical bases on both sides, every (x,x) block of
/// the behaviour is a permutation matrix scaled by 1/d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BobBasisConvention {
    #[default]
    Direct,
    Conjugated,
}

/// Behaviour of projective measurements on the maximally entangled qudit
/// pair |Φ_d⟩ = (1/√d) Σ_i |ii⟩:
/// P(a,b|x,y) = |(⟨a_x| ⊗ ⟨b_y|)|Φ_d⟩|².
///
/// The output passes no-signalling at 1e−10 by construction.
pub fn max_entangled_qudit_behavior(
    d: usize,
    alice_bases: &[QuditBasis],
    bob_bases: &[QuditBasis],
    convention: BobBasisConvention,
) -> Result<Behavior, QstateError> {
    if alice_bases.is_empty() || bob_bases.is_empty() {
        return Err(QstateError::EmptyBases);
    }
    for basis in alice_bases.iter().chain(bob_bases.iter()) {
        if basis.dimension() != d {
            return Err(QstateError::DimensionMismatch {
                got: basis.dimension(),
                expected: d,
            });
        }
    }
    let scenario = Scenario::new(alice_bases.len(), bob_bases.len(), d, d)
        .expect("non-empty bases give a valid scenario");
    let mut table = vec![0.0; scenario.table_len()];
    let inv_d = 1.0 / d as f64;
    for (x, ub) in alice_bases.iter().enumerate() {
        for (y, wb) in bob_bases.iter().enumerate() {
            for a in 0..d {
                for b in 0..d {
                    // amplitude ∝ Σ_i conj(u_a[i]) conj(w_b[i]); conjugating
                    // Bob swaps conj(w) for w.
                    let mut amp = Complex64::new(0.0, 0.0);
                    for i in 0..d {
                        let bob = match convention {
                            BobBasisConvention::Direct => wb.vector(b)[i].conj(),
                            BobBasisConvention::Conjugated => wb.vector(b)[i],
                        };
                        amp += ub.vector(a)[i].conj() * bob;
                    }
                    table[scenario.index(x, y, a, b)] = amp.norm_sqr() * inv_d;
                }
            }
        }
    }
    Ok(Behavior::from_table(scenario, table).expect("Born probabilities are normalized"))
}

/// Sample a Haar-random orthonormal basis of C^d: fill a matrix with
/// independent standard complex Gaussians and orthonormalize its columns.
///
/// Gram-Schmidt normalizes against a real positive residual norm, which is
/// exactly the unique QR phase convention (triangular factor with real
/// positive diagonal), so the resulting basis is Haar-distributed.
pub fn haar_random_basis<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<QuditBasis, QstateError> {
    if d < 2 {
        return Err(QstateError::DimensionTooSmall);
    }
    let inv_sqrt2 = core::f64::consts::FRAC_1_SQRT_2;
    // columns of a Ginibre matrix
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re * inv_sqrt2, im * inv_sqrt2)
                })
                .collect()
        })
        .collect();
    // two passes of modified Gram-Schmidt
    for _pass in 0..2 {
        for j in 0..d {
            for i in 0..j {
                let mut ip = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    ip += cols[i][k].conj() * cols[j][k];
                }
                for k in 0..d {
                    let c = cols[i][k];
                    cols[j][k] -= ip * c;
                }
            }
            let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
    }
    QuditBasis::new(cols)
}
