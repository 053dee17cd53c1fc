//! Shipped coefficient presets for the semianalytical protocol, one per
//! state angle θ ∈ {π/4, 7π/32, 3π/16, 5π/32, π/8}.
//!
//! The values are fitted parameters consumed as data; refitted sets can be
//! supplied at runtime through [`ProtocolCoefficients`] directly (the CLI
//! reads them from a JSON file with the same layout).

use core::f64::consts::PI;

use super::{PartyCoefficients, ProtocolCoefficients};

/// Names of the shipped presets, accepted wherever a θ tag is expected.
pub const PRESET_NAMES: [&str; 5] = ["pi/4", "7pi/32", "3pi/16", "5pi/32", "pi/8"];

const fn row(u: f64, v: f64, w: f64, x: f64, y: f64) -> PartyCoefficients {
    PartyCoefficients { u, v, w, x, y }
}

pub const PI_4: ProtocolCoefficients = ProtocolCoefficients {
    theta: PI / 4.0,
    alice1: row(-0.9121, 0.2046, -0.0052, 0.0065, 0.0041),
    alice2: row(0.9143, 0.1907, -0.0011, -0.0048, -0.0170),
    bob1: row(-0.9230, 0.1832, 0.0067, 0.0030, -0.0060),
    bob2: row(0.9645, 0.2044, -0.0022, -0.0005, 0.0155),
    comm_u: -0.0082,
    comm_v: 0.0257,
};

pub const SEVEN_PI_32: ProtocolCoefficients = ProtocolCoefficients {
    theta: 7.0 * PI / 32.0,
    alice1: row(-0.7729, 0.0699, 0.0022, -0.0039, 0.0045),
    alice2: row(0.8185, 0.2886, -0.0110, 0.0004, -0.0003),
    bob1: row(-0.8280, 0.0762, 0.0035, -0.0066, -0.0059),
    bob2: row(0.7510, 0.2746, -0.0004, 0.006, 0.0037),
    comm_u: 0.0019,
    comm_v: 0.1640,
};

pub const THREE_PI_16: ProtocolCoefficients = ProtocolCoefficients {
    theta: 3.0 * PI / 16.0,
    alice1: row(-0.7198, -0.0008, -0.0054, -0.0180, 0.0396),
    alice2: row(0.7454, 0.5065, -0.0040, -0.0025, -0.0138),
    bob1: row(-0.7809, 0.0420, 0.0302, 0.0177, -0.0346),
    bob2: row(0.6458, 0.4146, 0.0318, 0.0835, 0.0536),
    comm_u: 0.0718,
    comm_v: 0.3152,
};

pub const FIVE_PI_32: ProtocolCoefficients = ProtocolCoefficients {
    theta: 5.0 * PI / 32.0,
    alice1: row(-0.6575, -0.0320, 0.0645, 0.2220, -0.2995),
    alice2: row(0.6348, 0.7453, -0.0526, -0.2358, -0.0718),
    bob1: row(-0.7236, 0.0786, -0.0013, -0.0127, -0.0176),
    bob2: row(0.4924, 0.6380, -0.0060, 0.0032, -0.0130),
    comm_u: 0.1313,
    comm_v: 0.3838,
};

pub const PI_8: ProtocolCoefficients = ProtocolCoefficients {
    theta: PI / 8.0,
    alice1: row(-0.7401, 0.0687, -0.0567, -0.2704, 0.2295),
    alice2: row(0.2644, 1.1938, -0.1204, -0.6588, -0.0845),
    bob1: row(-0.7541, 0.0913, 0.0134, 0.0116, 0.0029),
    bob2: row(0.2903, 1.0314, -0.0047, 0.0302, 0.0002),
    comm_u: 0.1768,
    comm_v: 0.2272,
};

/// Look up a preset by name ("pi/4", "7pi/32", "3pi/16", "5pi/32", "pi/8").
pub fn preset(name: &str) -> Option<ProtocolCoefficients> {
    match name {
        "pi/4" => Some(PI_4),
        "7pi/32" => Some(SEVEN_PI_32),
        "3pi/16" => Some(THREE_PI_16),
        "5pi/32" => Some(FIVE_PI_32),
        "pi/8" => Some(PI_8),
        _ => None,
    }
}

/// Look up a preset whose θ is within `tol` of the requested angle.
pub fn preset_for_theta(theta: f64, tol: f64) -> Option<ProtocolCoefficients> {
    PRESET_NAMES
        .iter()
        .filter_map(|name| preset(name))
        .find(|c| (c.theta - theta).abs() <= tol)
}

/// All shipped presets, in decreasing θ.
pub fn all() -> [ProtocolCoefficients; 5] {
    [PI_4, SEVEN_PI_32, THREE_PI_16, FIVE_PI_32, PI_8]
}
