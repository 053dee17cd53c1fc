//! Independent Born-rule oracles: a dense 4x4 density-matrix computation
//! for the two-qubit state and a 9-dimensional state-vector contraction for
//! the qutrit pair. Both recompute what the library derives analytically,
//! through an entirely different route.

use num_complex::Complex64;
use onebit_core::bloch::BlochVector;
use onebit_core::qstate::{
    born_behavior, closed_form_stats, haar_random_basis, max_entangled_qudit_behavior,
    BobBasisConvention, QuditBasis, TwoQubitState,
};
use onebit_core::stream::stream_rng;

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// dense n×n complex matrix multiply
fn matmul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let mut out = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn trace(a: &[Vec<C>]) -> C {
    (0..a.len()).map(|i| a[i][i]).sum()
}

fn kron2(a: &[[C; 2]; 2], b: &[[C; 2]; 2]) -> Vec<Vec<C>> {
    let mut out = vec![vec![C::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn pauli_dot(v: &BlochVector) -> [[C; 2]; 2] {
    [
        [C::new(v.z, 0.0), C::new(v.x, -v.y)],
        [C::new(v.x, v.y), C::new(-v.z, 0.0)],
    ]
}

fn projector(v: &BlochVector, sign: f64) -> [[C; 2]; 2] {
    let s = pauli_dot(v);
    let mut out = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { 1.0 } else { 0.0 };
            out[i][j] = (c(id) + c(sign) * s[i][j]) * c(0.5);
        }
    }
    out
}

/// Oracle: P(A,B) = Tr[ρ (Π_A ⊗ Π_B)] with ρ the explicit 4x4 density matrix.
fn density_matrix_table(theta: f64, a: &BlochVector, b: &BlochVector) -> [[f64; 2]; 2] {
    let psi = [c(0.0), c(theta.cos()), c(-theta.sin()), c(0.0)];
    let mut rho = vec![vec![C::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rho[i][j] = psi[i] * psi[j].conj();
        }
    }
    let mut out = [[0.0; 2]; 2];
    for (ia, sa) in [1.0, -1.0].iter().enumerate() {
        for (ib, sb) in [1.0, -1.0].iter().enumerate() {
            let m = kron2(&projector(a, *sa), &projector(b, *sb));
            out[ia][ib] = trace(&matmul(&rho, &m)).re;
        }
    }
    out
}

fn random_direction(rng: &mut impl rand::Rng) -> BlochVector {
    onebit_core::lhv::sample_lhv(rng).lambda1
}

#[test]
fn frozen_5pi_32_values_come_from_the_oracle() {
    let t = density_matrix_table(
        5.0 * std::f64::consts::PI / 32.0,
        &BlochVector::x_axis(),
        &BlochVector::x_axis(),
    );
    assert!((t[0][0] - 0.042132596924363691).abs() < 1e-15);
    assert!((t[1][1] - 0.042132596924363691).abs() < 1e-15);
    assert!((t[0][1] - 0.45786740307563634).abs() < 1e-15);
    assert!((t[1][0] - 0.45786740307563634).abs() < 1e-15);
}

#[test]
fn born_matches_density_matrix_oracle() {
    let mut rng = stream_rng(2024, 0);
    for i in 0..300 {
        let theta = (i as f64 / 299.0) * std::f64::consts::FRAC_PI_4;
        let state = TwoQubitState::new(theta).unwrap();
        let a = random_direction(&mut rng);
        let b = random_direction(&mut rng);
        let beh = born_behavior(&state, &a, &b);
        let oracle = density_matrix_table(theta, &a, &b);
        for ia in 0..2 {
            for ib in 0..2 {
                assert!(
                    (beh.prob(0, 0, ia, ib) - oracle[ia][ib]).abs() < 1e-13,
                    "theta={theta} ia={ia} ib={ib}"
                );
            }
        }
    }
}

#[test]
fn closed_form_3pi_16_matches_oracle() {
    let theta = 3.0 * std::f64::consts::PI / 16.0;
    let deg40 = 40f64.to_radians();
    let deg10 = 10f64.to_radians();
    let a = BlochVector::new(deg40.sin(), 0.0, deg40.cos()).unwrap();
    let b = BlochVector::new(0.0, deg10.sin(), deg10.cos()).unwrap();
    let t = density_matrix_table(theta, &a, &b);
    let stats = closed_form_stats(&TwoQubitState::new(theta).unwrap(), &a, &b);
    let from_stats = stats.table();
    for ia in 0..2 {
        for ib in 0..2 {
            assert!((t[ia][ib] - from_stats[ia][ib]).abs() < 1e-14);
        }
    }
}

/// Oracle for the qutrit pair: build the 9-dimensional |Φ₃⟩, apply the
/// rank-one projector |a⟩⟨a| ⊗ |b⟩⟨b| as an explicit 9x9 matrix-vector
/// product, and take the squared norm.
#[test]
fn qudit_behavior_matches_nine_dimensional_contraction() {
    let d = 3;
    let mut rng = stream_rng(42, 0);
    let alice = haar_random_basis(d, &mut rng).unwrap();
    let bob = haar_random_basis(d, &mut rng).unwrap();
    for convention in [BobBasisConvention::Direct, BobBasisConvention::Conjugated] {
        let beh =
            max_entangled_qudit_behavior(d, &[alice.clone()], &[bob.clone()], convention).unwrap();
        let bob_eff: QuditBasis = match convention {
            BobBasisConvention::Direct => bob.clone(),
            BobBasisConvention::Conjugated => bob.conjugated(),
        };
        // |Φ₃⟩ in the 9-dimensional product space
        let mut phi = vec![C::new(0.0, 0.0); 9];
        for i in 0..d {
            phi[i * d + i] = c(1.0 / (d as f64).sqrt());
        }
        for a in 0..d {
            for b_out in 0..d {
                // M = |a⟩⟨a| ⊗ |b⟩⟨b|, applied densely
                let mut m = vec![vec![C::new(0.0, 0.0); 9]; 9];
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            for l in 0..d {
                                m[i * d + k][j * d + l] = alice.vector(a)[i]
                                    * alice.vector(a)[j].conj()
                                    * bob_eff.vector(b_out)[k]
                                    * bob_eff.vector(b_out)[l].conj();
                            }
                        }
                    }
                }
                let mut mphi = vec![C::new(0.0, 0.0); 9];
                for i in 0..9 {
                    for j in 0..9 {
                        mphi[i] += m[i][j] * phi[j];
                    }
                }
                let prob: f64 = phi
                    .iter()
                    .zip(&mphi)
                    .map(|(p, mp)| (p.conj() * mp).re)
                    .sum();
                assert!(
                    (beh.prob(0, 0, a, b_out) - prob).abs() < 1e-13,
                    "a={a} b={b_out} {convention:?}"
                );
            }
        }
    }
}
