//! Noise thresholds: where a behaviour mixed with noise exits a polytope.
//!
//! The mixture family is v·P + (1−v)·N for point weight v ∈ [0, 1]. When P
//! lies outside the set and N inside, there is a threshold point weight
//! v* above which the mixture is outside; the equivalent noise weight
//! w* = 1 − v* is the threshold noise level — the convention in which
//! reference quantum thresholds (w_Q) are quoted, with a violation meaning
//! w_Q < w_C. Both parameterizations are reported.

use crate::behavior::Behavior;

use super::membership::{membership, MembershipOptions, MembershipResult};
use super::{PolytopeError, VertexSet};

#[derive(Debug, Clone, Copy)]
pub struct VisibilityOptions {
    /// Width of the final bisection bracket, in mixture weight.
    pub bisection_tol: f64,
    pub membership: MembershipOptions,
}

impl Default for VisibilityOptions {
    fn default() -> Self {
        Self {
            bisection_tol: 5e-5,
            membership: MembershipOptions::default(),
        }
    }
}

/// A located set-exit threshold with certificates at both bracket ends.
#[derive(Debug, Clone)]
pub struct VisibilityResult {
    pub set: VertexSet,
    /// Threshold noise weight w*: mixtures with noise weight above w* are
    /// inside the set, below are outside. 0 when the point itself is inside.
    pub w_star: f64,
    /// Largest point weight still inside, 1 − w*.
    pub max_point_weight: f64,
    /// The point itself is in the set (no exit anywhere on the segment).
    pub point_inside: bool,
    /// Certified bracket in point weight: (inside end, outside end).
    pub bracket: (f64, f64),
    /// Membership certificate at the inside end of the bracket.
    pub inside_certificate: MembershipResult,
    /// Membership certificate at the outside end; absent when the point
    /// never leaves the set.
    pub outside_certificate: Option<MembershipResult>,
    /// Externally supplied quantum threshold w_Q (noise-weight convention),
    /// echoed for gap reports.
    pub reference_wq: Option<f64>,
}

impl VisibilityResult {
    /// w_Q − w_C, the closest-gap figure. Negative gaps are violations:
    /// mixtures in that noise window are quantum but unreachable with one
    /// bit of communication.
    pub fn gap(&self) -> Option<f64> {
        self.reference_wq.map(|wq| wq - self.w_star)
    }

    pub fn violation(&self) -> Option<bool> {
        self.gap().map(|g| g < 0.0)
    }
}

/// Locate the exit threshold of v·point + (1−v)·noise from the chosen set
/// by bisection over [`membership`], to `opts.bisection_tol` in weight.
///
/// Errors when the noise behaviour itself is outside the set (no threshold
/// exists) and propagates membership non-convergence.
pub fn visibility(
    point: &Behavior,
    noise: &Behavior,
    set: VertexSet,
    reference_wq: Option<f64>,
    opts: &VisibilityOptions,
) -> Result<VisibilityResult, PolytopeError> {
    if point.scenario() != noise.scenario() {
        return Err(PolytopeError::ScenarioMismatch {
            got: noise.scenario(),
            expected: point.scenario(),
        });
    }
    let at_point = membership(point, set, &opts.membership)?;
    if at_point.inside {
        return Ok(VisibilityResult {
            set,
            w_star: 0.0,
            max_point_weight: 1.0,
            point_inside: true,
            bracket: (1.0, 1.0),
            inside_certificate: at_point,
            outside_certificate: None,
            reference_wq,
        });
    }
    let at_noise = membership(noise, set, &opts.membership)?;
    if !at_noise.inside {
        return Err(PolytopeError::NoiseOutsideSet);
    }
    // invariant: mixture at lo is certified inside, at hi certified outside
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut inside_certificate = at_noise;
    let mut outside_certificate = at_point;
    while hi - lo > opts.bisection_tol {
        let mid = 0.5 * (lo + hi);
        let result = membership(&point.mix(mid, noise)?, set, &opts.membership)?;
        if result.inside {
            lo = mid;
            inside_certificate = result;
        } else {
            hi = mid;
            outside_certificate = result;
        }
    }
    let v_star = 0.5 * (lo + hi);
    Ok(VisibilityResult {
        set,
        w_star: 1.0 - v_star,
        max_point_weight: v_star,
        point_inside: false,
        bracket: (lo, hi),
        inside_certificate,
        outside_certificate: Some(outside_certificate),
        reference_wq,
    })
}
