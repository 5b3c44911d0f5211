//! Reference characterization of the fourteen experimental squeezed thermal
//! states and the four two-qubit Werner targets.

use crate::cv::StsParams;

/// A quoted value with its one-standard-deviation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quoted {
    pub value: f64,
    pub err: f64,
}

const fn q(value: f64, err: f64) -> Quoted {
    Quoted { value, err }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StsRow {
    pub state: usize,
    pub vxx: Quoted,
    pub vpp: Quoted,
    pub n_tot: Quoted,
    pub s: Quoted,
    pub mu: Quoted,
}

impl StsRow {
    pub fn params(&self) -> StsParams {
        StsParams {
            s: self.s.value,
            mu: self.mu.value,
        }
    }
}

const fn row(state: usize, v: [f64; 10]) -> StsRow {
    StsRow {
        state,
        vxx: q(v[0], v[1]),
        vpp: q(v[2], v[3]),
        n_tot: q(v[4], v[5]),
        s: q(v[6], v[7]),
        mu: q(v[8], v[9]),
    }
}

/// Homodyne characterization of the 14 states: `<Δx²>`, `<Δp²>`, `<a†a>`,
/// squeezing factor and purity.
pub const STS_TABLE: [StsRow; 14] = [
    row(1, [0.48, 0.03, 3.15, 0.09, 0.41, 0.02, 0.39, 0.01, 0.81, 0.03]),
    row(2, [0.67, 0.04, 3.33, 0.09, 0.50, 0.02, 0.45, 0.01, 0.67, 0.02]),
    row(3, [0.62, 0.04, 3.77, 0.11, 0.60, 0.02, 0.40, 0.02, 0.66, 0.02]),
    row(4, [0.69, 0.05, 3.94, 0.11, 0.66, 0.02, 0.41, 0.02, 0.61, 0.02]),
    row(5, [0.70, 0.05, 4.51, 0.12, 0.80, 0.03, 0.39, 0.02, 0.56, 0.02]),
    row(6, [0.77, 0.05, 4.54, 0.13, 0.83, 0.03, 0.41, 0.02, 0.54, 0.02]),
    row(7, [0.77, 0.05, 4.60, 0.13, 0.84, 0.03, 0.41, 0.02, 0.53, 0.02]),
    row(8, [0.93, 0.06, 5.00, 0.14, 0.98, 0.03, 0.43, 0.02, 0.46, 0.02]),
    row(9, [0.95, 0.06, 5.36, 0.15, 1.08, 0.03, 0.42, 0.01, 0.44, 0.02]),
    row(10, [0.93, 0.07, 5.56, 0.15, 1.12, 0.03, 0.41, 0.02, 0.44, 0.02]),
    row(11, [1.00, 0.07, 5.80, 0.17, 1.20, 0.03, 0.42, 0.02, 0.42, 0.02]),
    row(12, [1.13, 0.07, 5.87, 0.16, 1.25, 0.03, 0.44, 0.02, 0.39, 0.01]),
    row(13, [1.11, 0.08, 6.33, 0.18, 1.36, 0.04, 0.42, 0.02, 0.38, 0.01]),
    row(14, [1.30, 0.08, 6.16, 0.18, 1.36, 0.04, 0.46, 0.02, 0.35, 0.01]),
];

pub fn sts_row(state: usize) -> Option<&'static StsRow> {
    STS_TABLE.iter().find(|r| r.state == state)
}

/// Nonclassical target used for the wide fidelity balloons.
pub const BALLOON_TARGET: StsParams = StsParams { s: 0.41, mu: 0.53 };

/// Squeezing photons obtained from the linear variance fit.
pub const FITTED_SQUEEZING_PHOTONS: f64 = 0.2;

/// Row of the two-qubit summary: Werner parameter, average-state fidelity
/// (`+`, `−` errors), partial-transpose minimum eigenvalues and discords for
/// the tomographic average and the Werner target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerRow {
    pub state: usize,
    pub p: Quoted,
    pub fidelity: f64,
    pub fidelity_err: (f64, f64),
    pub e_min_average: Quoted,
    pub e_min_werner: Quoted,
    pub discord_average: Quoted,
    pub discord_werner: Quoted,
}

pub const WERNER_TABLE: [WernerRow; 4] = [
    WernerRow {
        state: 1,
        p: q(0.32, 0.04),
        fidelity: 0.985,
        fidelity_err: (0.006, 0.01),
        e_min_average: q(0.01, 0.03),
        e_min_werner: q(0.01, 0.03),
        discord_average: q(0.08, 0.02),
        discord_werner: q(0.11, 0.03),
    },
    WernerRow {
        state: 2,
        p: q(0.35, 0.04),
        fidelity: 0.988,
        fidelity_err: (0.005, 0.01),
        e_min_average: q(-0.01, 0.03),
        e_min_werner: q(-0.01, 0.03),
        discord_average: q(0.10, 0.02),
        discord_werner: q(0.14, 0.03),
    },
    WernerRow {
        state: 3,
        p: q(0.28, 0.04),
        fidelity: 0.987,
        fidelity_err: (0.006, 0.01),
        e_min_average: q(0.04, 0.03),
        e_min_werner: q(0.04, 0.03),
        discord_average: q(0.06, 0.02),
        discord_werner: q(0.06, 0.02),
    },
    WernerRow {
        state: 4,
        p: q(0.44, 0.05),
        fidelity: 0.985,
        fidelity_err: (0.007, 0.02),
        e_min_average: q(-0.07, 0.03),
        e_min_werner: q(-0.08, 0.04),
        discord_average: q(0.14, 0.02),
        discord_werner: q(0.21, 0.04),
    },
];

pub fn werner_row(state: usize) -> Option<&'static WernerRow> {
    WERNER_TABLE.iter().find(|r| r.state == state)
}
