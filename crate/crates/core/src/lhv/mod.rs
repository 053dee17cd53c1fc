//! One-bit communication protocols over shared randomness, and the Monte
//! Carlo estimator of the behaviour they produce.
//!
//! The shared randomness is a pair of independent uniform unit vectors
//! (λ̂₁, λ̂₂). In each round Alice, who knows her setting â and λ, decides
//! between two pre-agreed local strategies and tells Bob her decision with
//! one bit c. Given λ the round's outcome distribution is
//!
//! P(A,B|â,b̂,λ) = P(c=+1|â,λ)·P₁(A|â,λ)·P₁(B|b̂,λ)
//!              + P(c=−1|â,λ)·P₂(A|â,λ)·P₂(B|b̂,λ),
//!
//! and behaviours are estimated by averaging over many λ draws.
//!
//! Three protocols are provided: the exact maximally-entangled-state
//! protocol, the Toner-Bacon reference it derives from, and a semianalytical
//! protocol for partially entangled states driven by fitted coefficient
//! presets (see [`presets`]).
//!
//! Boundary conventions are fixed globally: sgn(0) := +1 and Θ(0) := 0.
//! Both boundaries have measure zero under the continuous hidden variables.

pub mod presets;

#[allow(unused_imports)]
use num_traits::Float;

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::behavior::Behavior;
use crate::bloch::{heaviside, BlochVector, Sign};

#[derive(Debug, Error, PartialEq)]
pub enum LhvError {
    #[error("the estimator needs at least one sample")]
    ZeroSamples,
}

/// One draw of the shared randomness: two independent uniform unit vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhvSample {
    pub lambda1: BlochVector,
    pub lambda2: BlochVector,
}

/// Draw (λ̂₁, λ̂₂), each uniform on the sphere via normalized standard
/// Gaussian triples.
pub fn sample_lhv<R: Rng + ?Sized>(rng: &mut R) -> LhvSample {
    let unit = |rng: &mut R| loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(v) = BlochVector::normalized(x, y, z) {
            return v;
        }
    };
    LhvSample {
        lambda1: unit(rng),
        lambda2: unit(rng),
    }
}

/// The coefficient row (u, v, w, x, y) of one party output function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartyCoefficients {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub x: f64,
    pub y: f64,
}

impl PartyCoefficients {
    pub const ZERO: Self = Self {
        u: 0.0,
        v: 0.0,
        w: 0.0,
        x: 0.0,
        y: 0.0,
    };

    /// The hemisphere argument â·(u·λ̂₁ + λ̂₂ + v·ẑ) + w + x(λ̂₁·ẑ) + y(λ̂₂·ẑ).
    ///
    /// The combined vector is used unnormalized inside sgn: only its
    /// direction matters for the homogeneous part, and the bias is fitted
    /// against the unnormalized sum.
    fn argument(&self, m_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        let l1 = lhv.lambda1;
        let l2 = lhv.lambda2;
        let vx = self.u * l1.x + l2.x;
        let vy = self.u * l1.y + l2.y;
        let vz = self.u * l1.z + l2.z + self.v;
        let bias = self.w + self.x * l1.z + self.y * l2.z;
        m_hat.x * vx + m_hat.y * vy + m_hat.z * vz + bias
    }
}

/// Full parameter set of the semianalytical protocol for one state angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolCoefficients {
    pub theta: f64,
    pub alice1: PartyCoefficients,
    pub alice2: PartyCoefficients,
    pub bob1: PartyCoefficients,
    pub bob2: PartyCoefficients,
    pub comm_u: f64,
    pub comm_v: f64,
}

/// Which party output function of the semianalytical protocol to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartyTag {
    Alice1,
    Alice2,
    Bob1,
    Bob2,
}

/// One protocol round: both outcomes and the communicated bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtocolRound {
    pub a_out: Sign,
    pub b_out: Sign,
    pub comm_bit: Sign,
}

/// λ̂₁ + c·λ̂₂, the working vector of the maximally-entangled protocol.
fn lambda_sum(lhv: &LhvSample, c: Sign) -> (f64, f64, f64) {
    let s = c.value();
    (
        lhv.lambda1.x + s * lhv.lambda2.x,
        lhv.lambda1.y + s * lhv.lambda2.y,
        lhv.lambda1.z + s * lhv.lambda2.z,
    )
}

fn dot3(v: &BlochVector, (x, y, z): (f64, f64, f64)) -> f64 {
    v.x * x + v.y * y + v.z * z
}

/// The maximally-entangled-state protocol:
/// c = sgn(â·λ̂₁)·sgn(â·λ̂₂), A = −sgn(â·(λ̂₁ + c·λ̂₂)),
/// B = sgn(b̂·(λ̂₁ + c·λ̂₂)).
pub fn max_entangled_round(
    a_hat: &BlochVector,
    b_hat: &BlochVector,
    lhv: &LhvSample,
) -> ProtocolRound {
    let c = comm_bit(a_hat, lhv);
    let accepted = lambda_sum(lhv, c);
    ProtocolRound {
        a_out: Sign::of(dot3(a_hat, accepted)).flip(),
        b_out: Sign::of(dot3(b_hat, accepted)),
        comm_bit: c,
    }
}

/// The Toner-Bacon reference protocol: same bit and Bob rule, but Alice
/// outputs A = −sgn(â·λ̂₁).
pub fn toner_bacon_round(
    a_hat: &BlochVector,
    b_hat: &BlochVector,
    lhv: &LhvSample,
) -> ProtocolRound {
    let c = comm_bit(a_hat, lhv);
    let accepted = lambda_sum(lhv, c);
    ProtocolRound {
        a_out: Sign::of(a_hat.dot(&lhv.lambda1)).flip(),
        b_out: Sign::of(dot3(b_hat, accepted)),
        comm_bit: c,
    }
}

fn comm_bit(a_hat: &BlochVector, lhv: &LhvSample) -> Sign {
    let s1 = Sign::of(a_hat.dot(&lhv.lambda1));
    let s2 = Sign::of(a_hat.dot(&lhv.lambda2));
    if s1 == s2 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Probability that the tagged semianalytical party output is +1, given the
/// measurement direction and hidden variables. Deterministic: returns 0 or 1.
///
/// Sign patterns follow the protocol definition: Alice 1 and Bob 2 output +1
/// on the negative side of their hemisphere argument, Alice 2 and Bob 1 on
/// the positive side.
pub fn semianalytical_local_prob(
    tag: PartyTag,
    m_hat: &BlochVector,
    lhv: &LhvSample,
    coeffs: &ProtocolCoefficients,
) -> f64 {
    let (row, sign) = match tag {
        PartyTag::Alice1 => (&coeffs.alice1, -1.0),
        PartyTag::Alice2 => (&coeffs.alice2, 1.0),
        PartyTag::Bob1 => (&coeffs.bob1, 1.0),
        PartyTag::Bob2 => (&coeffs.bob2, -1.0),
    };
    0.5 * (1.0 + sign * Sign::of(row.argument(m_hat, lhv)).value())
}

/// Probability that the semianalytical communication bit is +1:
/// P(c=+1|â) = ½(1 − clip(f_c, −1, 1)) with f_c the four-term product of
/// Heaviside steps around the bias b_c = u_c + v_c(λ̂₂·ẑ)(1 − λ̂₁·ẑ).
/// Takes values in {0, ½, 1}.
pub fn semianalytical_comm_prob(
    a_hat: &BlochVector,
    lhv: &LhvSample,
    coeffs: &ProtocolCoefficients,
) -> f64 {
    let bc = coeffs.comm_u + coeffs.comm_v * lhv.lambda2.z * (1.0 - lhv.lambda1.z);
    let d1 = a_hat.dot(&lhv.lambda1);
    let d2 = a_hat.dot(&lhv.lambda2);
    let f = heaviside(d1 + bc) * heaviside(d2 + bc)
        + heaviside(-d1 + bc) * heaviside(-d2 + bc)
        - heaviside(-d1 - bc) * heaviside(d2 - bc)
        - heaviside(d1 - bc) * heaviside(-d2 - bc);
    0.5 * (1.0 - f.clamp(-1.0, 1.0))
}

/// A one-bit communication protocol in the two-strategy form: per-round
/// probabilities for the bit and for each party's output under either
/// strategy. Alice's output and the bit never see b̂; Bob's output never
/// sees â — the signatures enforce the locality constraint.
pub trait Protocol {
    /// P(c = +1 | â, λ).
    fn comm_prob(&self, a_hat: &BlochVector, lhv: &LhvSample) -> f64;
    /// P(A = +1 | â, λ) under the strategy selected by bit value `c`.
    fn alice_prob(&self, c: Sign, a_hat: &BlochVector, lhv: &LhvSample) -> f64;
    /// P(B = +1 | b̂, λ) under the strategy selected by bit value `c`.
    fn bob_prob(&self, c: Sign, b_hat: &BlochVector, lhv: &LhvSample) -> f64;
}

/// Exact protocol for the maximally entangled state.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxEntangledProtocol;

impl Protocol for MaxEntangledProtocol {
    fn comm_prob(&self, a_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        match comm_bit(a_hat, lhv) {
            Sign::Plus => 1.0,
            Sign::Minus => 0.0,
        }
    }

    fn alice_prob(&self, c: Sign, a_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        let a = Sign::of(dot3(a_hat, lambda_sum(lhv, c))).flip();
        if a == Sign::Plus {
            1.0
        } else {
            0.0
        }
    }

    fn bob_prob(&self, c: Sign, b_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        let b = Sign::of(dot3(b_hat, lambda_sum(lhv, c)));
        if b == Sign::Plus {
            1.0
        } else {
            0.0
        }
    }
}

/// The original Toner-Bacon protocol for the maximally entangled state.
#[derive(Debug, Clone, Copy, Default)]
pub struct TonerBaconProtocol;

impl Protocol for TonerBaconProtocol {
    fn comm_prob(&self, a_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        MaxEntangledProtocol.comm_prob(a_hat, lhv)
    }

    fn alice_prob(&self, _c: Sign, a_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        // Alice ignores the strategy choice entirely
        let a = Sign::of(a_hat.dot(&lhv.lambda1)).flip();
        if a == Sign::Plus {
            1.0
        } else {
            0.0
        }
    }

    fn bob_prob(&self, c: Sign, b_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        MaxEntangledProtocol.bob_prob(c, b_hat, lhv)
    }
}

/// The coefficient-driven protocol approximating partially entangled
/// states. Strategy 1 pairs Alice 1 with Bob 1, strategy 2 pairs Alice 2
/// with Bob 2.
#[derive(Debug, Clone, Copy)]
pub struct SemianalyticalProtocol {
    coeffs: ProtocolCoefficients,
}

impl SemianalyticalProtocol {
    pub fn new(coeffs: ProtocolCoefficients) -> Self {
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &ProtocolCoefficients {
        &self.coeffs
    }
}

impl Protocol for SemianalyticalProtocol {
    fn comm_prob(&self, a_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        semianalytical_comm_prob(a_hat, lhv, &self.coeffs)
    }

    fn alice_prob(&self, c: Sign, a_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        let tag = match c {
            Sign::Plus => PartyTag::Alice1,
            Sign::Minus => PartyTag::Alice2,
        };
        semianalytical_local_prob(tag, a_hat, lhv, &self.coeffs)
    }

    fn bob_prob(&self, c: Sign, b_hat: &BlochVector, lhv: &LhvSample) -> f64 {
        let tag = match c {
            Sign::Plus => PartyTag::Bob1,
            Sign::Minus => PartyTag::Bob2,
        };
        semianalytical_local_prob(tag, b_hat, lhv, &self.coeffs)
    }
}

/// The exact per-λ outcome table
/// P(A,B|â,b̂,λ) = P(c=+1)·P₁(A)·P₁(B) + P(c=−1)·P₂(A)·P₂(B),
/// indexed [A][B] with +1 ↔ 0, −1 ↔ 1. Normalized exactly by convexity.
pub fn lhv1_single_lambda<P: Protocol + ?Sized>(
    protocol: &P,
    a_hat: &BlochVector,
    b_hat: &BlochVector,
    lhv: &LhvSample,
) -> [[f64; 2]; 2] {
    let pc = protocol.comm_prob(a_hat, lhv);
    let pa1 = protocol.alice_prob(Sign::Plus, a_hat, lhv);
    let pb1 = protocol.bob_prob(Sign::Plus, b_hat, lhv);
    let pa2 = protocol.alice_prob(Sign::Minus, a_hat, lhv);
    let pb2 = protocol.bob_prob(Sign::Minus, b_hat, lhv);
    let mut t = [[0.0; 2]; 2];
    for (ia, qa1, qa2) in [(0, pa1, pa2), (1, 1.0 - pa1, 1.0 - pa2)] {
        for (ib, qb1, qb2) in [(0, pb1, pb2), (1, 1.0 - pb1, 1.0 - pb2)] {
            t[ia][ib] = pc * qa1 * qb1 + (1.0 - pc) * qa2 * qb2;
        }
    }
    t
}

/// Monte Carlo estimate of the protocol behaviour at one setting pair:
/// the average of [`lhv1_single_lambda`] over `n` independent λ draws.
///
/// Entries are accumulated with compensated summation so the returned
/// table is normalized to well below 1e−12 for any practical `n`.
pub fn estimate_behavior<P: Protocol + ?Sized, R: Rng + ?Sized>(
    protocol: &P,
    a_hat: &BlochVector,
    b_hat: &BlochVector,
    n: usize,
    rng: &mut R,
) -> Result<Behavior, LhvError> {
    if n == 0 {
        return Err(LhvError::ZeroSamples);
    }
    let mut sum = [[0.0f64; 2]; 2];
    let mut comp = [[0.0f64; 2]; 2];
    for _ in 0..n {
        let lhv = sample_lhv(rng);
        let t = lhv1_single_lambda(protocol, a_hat, b_hat, &lhv);
        for i in 0..2 {
            for j in 0..2 {
                // Kahan step
                let y = t[i][j] - comp[i][j];
                let s = sum[i][j] + y;
                comp[i][j] = (s - sum[i][j]) - y;
                sum[i][j] = s;
            }
        }
    }
    let inv = 1.0 / n as f64;
    let table = [
        [sum[0][0] * inv, sum[0][1] * inv],
        [sum[1][0] * inv, sum[1][1] * inv],
    ];
    Ok(Behavior::single_setting(table).expect("convex average of normalized tables"))
}

/// ⟨A⟩, ⟨B⟩, ⟨AB⟩ of a single-setting 2x2 table under the global index
/// convention.
pub fn table_stats(t: &Behavior) -> (f64, f64, f64) {
    let p = t.table();
    let mean_a = p[0] + p[1] - p[2] - p[3];
    let mean_b = p[0] - p[1] + p[2] - p[3];
    let corr = p[0] - p[1] - p[2] + p[3];
    (mean_a, mean_b, corr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::stream_rng;

    fn z() -> BlochVector {
        BlochVector::z_axis()
    }

    fn x() -> BlochVector {
        BlochVector::x_axis()
    }

    fn y() -> BlochVector {
        BlochVector::y_axis()
    }

    #[test]
    fn lhv_samples_are_unit() {
        let mut rng = stream_rng(3, 0);
        for _ in 0..1000 {
            let s = sample_lhv(&mut rng);
            let n1 = s.lambda1.dot(&s.lambda1);
            let n2 = s.lambda2.dot(&s.lambda2);
            assert!((n1 - 1.0).abs() < 1e-12 && (n2 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn max_entangled_round_sign_bookkeeping() {
        // all dot products positive
        let lhv = LhvSample { lambda1: z(), lambda2: z() };
        let r = max_entangled_round(&z(), &z(), &lhv);
        assert_eq!(r.comm_bit, Sign::Plus);
        assert_eq!(r.a_out, Sign::Minus);
        assert_eq!(r.b_out, Sign::Plus);

        // λ̂₂ = −ẑ: c = −1, accepted vector λ̂₁ − λ̂₂ = 2ẑ, and
        // b̂ = x̂ hits the sgn(0) := +1 boundary convention.
        let lhv = LhvSample { lambda1: z(), lambda2: z().neg() };
        let r = max_entangled_round(&z(), &x(), &lhv);
        assert_eq!(r.comm_bit, Sign::Minus);
        assert_eq!(r.a_out, Sign::Minus);
        assert_eq!(r.b_out, Sign::Plus);
    }

    #[test]
    fn toner_bacon_alice_ignores_second_vector() {
        let mut rng = stream_rng(4, 0);
        for _ in 0..200 {
            let lhv = sample_lhv(&mut rng);
            let lhv_b = LhvSample { lambda1: lhv.lambda1, lambda2: sample_lhv(&mut rng).lambda2 };
            let a = toner_bacon_round(&z(), &x(), &lhv).a_out;
            let b = toner_bacon_round(&z(), &x(), &lhv_b).a_out;
            assert_eq!(a, Sign::of(z().dot(&lhv.lambda1)).flip());
            assert_eq!(b, Sign::of(z().dot(&lhv_b.lambda1)).flip());
        }
    }

    #[test]
    fn max_entangled_alice_equals_toner_bacon_almost_surely() {
        // the two Alice rules coincide away from measure-zero boundaries
        let mut rng = stream_rng(5, 0);
        for _ in 0..10_000 {
            let lhv = sample_lhv(&mut rng);
            let a = sample_lhv(&mut rng).lambda1;
            let r1 = max_entangled_round(&a, &x(), &lhv);
            let r2 = toner_bacon_round(&a, &x(), &lhv);
            assert_eq!(r1.a_out, r2.a_out);
            assert_eq!(r1.comm_bit, r2.comm_bit);
            assert_eq!(r1.b_out, r2.b_out);
        }
    }

    #[test]
    fn semianalytical_zero_coefficients_hemisphere() {
        // u=v=w=x=y=0 reduces the argument to â·λ̂₂
        let coeffs = ProtocolCoefficients {
            theta: core::f64::consts::FRAC_PI_4,
            alice1: PartyCoefficients::ZERO,
            alice2: PartyCoefficients::ZERO,
            bob1: PartyCoefficients::ZERO,
            bob2: PartyCoefficients::ZERO,
            comm_u: 0.0,
            comm_v: 0.0,
        };
        let lhv = LhvSample { lambda1: x(), lambda2: z() };
        // â·λ̂₂ > 0 so sgn = +1 and Alice 1 outputs +1 with probability 0
        let p = semianalytical_local_prob(PartyTag::Alice1, &z(), &lhv, &coeffs);
        assert_eq!(p, 0.0);
    }

    #[test]
    fn semianalytical_hand_evaluated_case() {
        // π/4 preset, â = ẑ, λ̂₁ = x̂, λ̂₂ = ŷ:
        // argument = v + w = 0.2046 − 0.0052 = 0.1994 > 0 → P(A₁=+1) = 0
        let coeffs = presets::preset("pi/4").unwrap();
        let lhv = LhvSample { lambda1: x(), lambda2: y() };
        let p = semianalytical_local_prob(PartyTag::Alice1, &z(), &lhv, &coeffs);
        assert_eq!(p, 0.0);
    }

    #[test]
    fn semianalytical_bob2_independent_evaluation() {
        // scalar re-implementation of the Bob 2 rule on a fixed triple
        let coeffs = presets::preset("5pi/32").unwrap();
        let b_hat = BlochVector::normalized(0.3, -0.5, 0.9).unwrap();
        let lhv = LhvSample {
            lambda1: BlochVector::normalized(-0.2, 0.7, 0.4).unwrap(),
            lambda2: BlochVector::normalized(0.8, 0.1, -0.5).unwrap(),
        };
        let row = coeffs.bob2;
        let lamv = [
            row.u * lhv.lambda1.x + lhv.lambda2.x,
            row.u * lhv.lambda1.y + lhv.lambda2.y,
            row.u * lhv.lambda1.z + lhv.lambda2.z + row.v,
        ];
        let bias = row.w + row.x * lhv.lambda1.z + row.y * lhv.lambda2.z;
        let arg = b_hat.x * lamv[0] + b_hat.y * lamv[1] + b_hat.z * lamv[2] + bias;
        let expected = if arg >= 0.0 { 0.0 } else { 1.0 };
        let got = semianalytical_local_prob(PartyTag::Bob2, &b_hat, &lhv, &coeffs);
        assert_eq!(got, expected);
    }

    #[test]
    fn semianalytical_comm_quadrants() {
        // b_c = 0: same-sign dot products give f_c = 1 → P(c=+1) = 0,
        // opposite signs give f_c = −1 → P(c=+1) = 1.
        let coeffs = ProtocolCoefficients {
            theta: 0.5,
            alice1: PartyCoefficients::ZERO,
            alice2: PartyCoefficients::ZERO,
            bob1: PartyCoefficients::ZERO,
            bob2: PartyCoefficients::ZERO,
            comm_u: 0.0,
            comm_v: 0.0,
        };
        let same = LhvSample {
            lambda1: BlochVector::normalized(0.1, 0.0, 1.0).unwrap(),
            lambda2: BlochVector::normalized(0.2, 0.1, 1.0).unwrap(),
        };
        assert_eq!(semianalytical_comm_prob(&z(), &same, &coeffs), 0.0);
        let opposite = LhvSample {
            lambda1: BlochVector::normalized(0.1, 0.0, 1.0).unwrap(),
            lambda2: BlochVector::normalized(0.2, 0.1, -1.0).unwrap(),
        };
        assert_eq!(semianalytical_comm_prob(&z(), &opposite, &coeffs), 1.0);
    }

    #[test]
    fn semianalytical_comm_cross_check() {
        // independent evaluation of the four-term expression, 5π/32 preset
        let coeffs = presets::preset("5pi/32").unwrap();
        let a_hat = BlochVector::normalized(-0.4, 0.3, 0.85).unwrap();
        let lhv = LhvSample {
            lambda1: BlochVector::normalized(0.6, -0.1, 0.75).unwrap(),
            lambda2: BlochVector::normalized(-0.3, -0.9, 0.2).unwrap(),
        };
        let bc = coeffs.comm_u + coeffs.comm_v * lhv.lambda2.z * (1.0 - lhv.lambda1.z);
        let d1 = a_hat.dot(&lhv.lambda1);
        let d2 = a_hat.dot(&lhv.lambda2);
        let step = |t: f64| if t > 0.0 { 1.0 } else { 0.0 };
        let f = step(d1 + bc) * step(d2 + bc) + step(-d1 + bc) * step(-d2 + bc)
            - step(-d1 - bc) * step(d2 - bc)
            - step(d1 - bc) * step(-d2 - bc);
        let expected = 0.5 * (1.0 - f.max(-1.0).min(1.0));
        assert_eq!(semianalytical_comm_prob(&a_hat, &lhv, &coeffs), expected);
    }

    #[test]
    fn single_lambda_deterministic_protocols_are_point_masses() {
        let mut rng = stream_rng(6, 0);
        for _ in 0..100 {
            let lhv = sample_lhv(&mut rng);
            let a = sample_lhv(&mut rng).lambda1;
            let b = sample_lhv(&mut rng).lambda2;
            let t = lhv1_single_lambda(&MaxEntangledProtocol, &a, &b, &lhv);
            let ones = t.iter().flatten().filter(|&&v| v == 1.0).count();
            let zeros = t.iter().flatten().filter(|&&v| v == 0.0).count();
            assert_eq!((ones, zeros), (1, 3));
            let r = max_entangled_round(&a, &b, &lhv);
            assert_eq!(t[r.a_out.index()][r.b_out.index()], 1.0);
        }
    }

    #[test]
    fn single_lambda_convex_mixture() {
        // â ⊥ λ̂₁, λ̂₂ with b_c = 0 puts every Θ term on the Θ(0) := 0
        // boundary, so f_c = 0 and P(c=+1) = ½; the party coefficients are
        // crafted so strategy 1 gives (+,+) and strategy 2 gives (−,−).
        let force = |w: f64| PartyCoefficients { u: 0.0, v: 0.0, w, x: 0.0, y: 0.0 };
        let coeffs = ProtocolCoefficients {
            theta: 0.5,
            alice1: force(-1.0), // sgn(−1) = −1 → P(A₁=+1) = 1
            alice2: force(-1.0), // sgn(−1) = −1 → P(A₂=+1) = 0
            bob1: PartyCoefficients::ZERO, // sgn(0) = +1 → P(B₁=+1) = 1
            bob2: PartyCoefficients::ZERO, // sgn(0) = +1 → P(B₂=+1) = 0
            comm_u: 0.0,
            comm_v: 0.0,
        };
        let lhv = LhvSample { lambda1: x(), lambda2: y() };
        let proto = SemianalyticalProtocol::new(coeffs);
        assert_eq!(proto.comm_prob(&z(), &lhv), 0.5);
        let t = lhv1_single_lambda(&proto, &z(), &z(), &lhv);
        assert_eq!(t, [[0.5, 0.0], [0.0, 0.5]]);
    }

    #[test]
    fn estimate_single_sample_matches_single_lambda() {
        let coeffs = presets::preset("5pi/32").unwrap();
        let proto = SemianalyticalProtocol::new(coeffs);
        let a = BlochVector::normalized(1.0, 2.0, -1.0).unwrap();
        let b = BlochVector::normalized(-1.0, 0.5, 2.0).unwrap();
        let est = estimate_behavior(&proto, &a, &b, 1, &mut stream_rng(9, 0)).unwrap();
        let lhv = sample_lhv(&mut stream_rng(9, 0));
        let t = lhv1_single_lambda(&proto, &a, &b, &lhv);
        assert_eq!(est.table(), &[t[0][0], t[0][1], t[1][0], t[1][1]]);
    }

    #[test]
    fn estimate_rejects_zero_samples() {
        let err = estimate_behavior(&MaxEntangledProtocol, &z(), &x(), 0, &mut stream_rng(1, 0));
        assert_eq!(err.unwrap_err(), LhvError::ZeroSamples);
    }

    #[test]
    fn alice_side_never_reads_bob_setting() {
        // identical λ stream, different b̂: Alice marginal and bit identical
        let proto = SemianalyticalProtocol::new(presets::preset("3pi/16").unwrap());
        let a = BlochVector::normalized(0.3, 0.4, 0.5).unwrap();
        let mut rng = stream_rng(12, 0);
        for _ in 0..200 {
            let lhv = sample_lhv(&mut rng);
            let t1 = lhv1_single_lambda(&proto, &a, &x(), &lhv);
            let t2 = lhv1_single_lambda(&proto, &a, &y(), &lhv);
            // A marginal is bit-identical
            assert_eq!(t1[0][0] + t1[0][1], t2[0][0] + t2[0][1]);
            assert_eq!(t1[1][0] + t1[1][1], t2[1][0] + t2[1][1]);
            assert_eq!(proto.comm_prob(&a, &lhv), proto.comm_prob(&a, &lhv));
        }
    }

    #[test]
    fn rotational_covariance_per_draw() {
        // rotating â, b̂, λ̂₁, λ̂₂ together leaves (A, B, c) unchanged
        let rot = [
            [0.36, 0.48, -0.8],
            [-0.8, 0.6, 0.0],
            [0.48, 0.64, 0.6],
        ];
        let mut rng = stream_rng(13, 0);
        for _ in 0..1000 {
            let lhv = sample_lhv(&mut rng);
            let a = sample_lhv(&mut rng).lambda1;
            let b = sample_lhv(&mut rng).lambda2;
            let r = max_entangled_round(&a, &b, &lhv);
            let rr = max_entangled_round(
                &a.rotated(&rot).unwrap(),
                &b.rotated(&rot).unwrap(),
                &LhvSample {
                    lambda1: lhv.lambda1.rotated(&rot).unwrap(),
                    lambda2: lhv.lambda2.rotated(&rot).unwrap(),
                },
            );
            assert_eq!(r, rr);
        }
    }
}
