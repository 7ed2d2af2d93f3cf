//! Synthetic cosine benchmark scenarios.
//!
//! Factors `y1, y2` are U[0, π); `y3` is either an independent U[0, π) draw
//! (`*I` scenarios) or `(y1 + y2) / 2` (`*D` scenarios). Every
//! representation variable is the cosine of an argument in [0, π), so it is
//! a bijection of that argument. All scenarios except `Cos0` append a pure
//! U[0, 1] variable `z4`; the `CosNuis*` scenarios mix a nuisance draw
//! `n ~ U[0, π)` into `z3`.
//!
//! Column streams are keyed by column role, not by scenario, so scenarios
//! generated with the same seed share their `y1`, `y2`, `y3`, `z4` and `n`
//! draws.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::data::{Role, SampleTable};
use crate::error::{Error, Result};
use crate::seed::seeded_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scenario {
    Cos0,
    Cos1I,
    Cos2I,
    Cos3I,
    Cos1D,
    Cos2D,
    Cos3D,
    CosNuis2I,
    CosNuis3I,
    CosNuis2D,
    CosNuis3D,
}

impl Scenario {
    /// Listing order: the seven main scenarios, then the nuisance variants.
    pub const ALL: [Scenario; 11] = [
        Scenario::Cos0,
        Scenario::Cos1I,
        Scenario::Cos2I,
        Scenario::Cos3I,
        Scenario::Cos1D,
        Scenario::Cos2D,
        Scenario::Cos3D,
        Scenario::CosNuis2I,
        Scenario::CosNuis3I,
        Scenario::CosNuis2D,
        Scenario::CosNuis3D,
    ];

    /// The seven main scenarios.
    pub const MAIN: [Scenario; 7] = [
        Scenario::Cos0,
        Scenario::Cos1I,
        Scenario::Cos2I,
        Scenario::Cos3I,
        Scenario::Cos1D,
        Scenario::Cos2D,
        Scenario::Cos3D,
    ];

    /// The nuisance suite with its two reference columns, in reporting order.
    pub const NUISANCE: [Scenario; 6] = [
        Scenario::Cos1I,
        Scenario::CosNuis2I,
        Scenario::CosNuis3I,
        Scenario::Cos1D,
        Scenario::CosNuis2D,
        Scenario::CosNuis3D,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Cos0 => "Cos0",
            Scenario::Cos1I => "Cos1I",
            Scenario::Cos2I => "Cos2I",
            Scenario::Cos3I => "Cos3I",
            Scenario::Cos1D => "Cos1D",
            Scenario::Cos2D => "Cos2D",
            Scenario::Cos3D => "Cos3D",
            Scenario::CosNuis2I => "CosNuis2I",
            Scenario::CosNuis3I => "CosNuis3I",
            Scenario::CosNuis2D => "CosNuis2D",
            Scenario::CosNuis3D => "CosNuis3D",
        }
    }

    pub fn dependent(self) -> bool {
        matches!(
            self,
            Scenario::Cos1D
                | Scenario::Cos2D
                | Scenario::Cos3D
                | Scenario::CosNuis2D
                | Scenario::CosNuis3D
        )
    }

    pub fn has_noise_variable(self) -> bool {
        self != Scenario::Cos0
    }

    pub fn description(self) -> &'static str {
        match self {
            Scenario::Cos0 => "independent factors; z_i = cos(y_i); no noise variable",
            Scenario::Cos1I => "independent factors; z_i = cos(y_i); z4 noise",
            Scenario::Cos2I => "independent factors; z3 = cos((3y1+y2)/4), y3 unused; z4 noise",
            Scenario::Cos3I => "independent factors; each z mixes two factors; z4 noise",
            Scenario::Cos1D => "y3 = (y1+y2)/2; z_i = cos(y_i); z4 noise",
            Scenario::Cos2D => "y3 = (y1+y2)/2; z3 = cos((3y1+y2)/4); z4 noise",
            Scenario::Cos3D => "y3 = (y1+y2)/2; each z mixes two factors; z4 noise",
            Scenario::CosNuis2I => {
                "independent factors; z3 = cos((y3+n)/2) with nuisance n; z4 noise"
            }
            Scenario::CosNuis3I => {
                "independent factors; z1, z2 mix factors; z3 = cos((y2+y3+2n)/4); z4 noise"
            }
            Scenario::CosNuis2D => {
                "y3 = (y1+y2)/2; z1, z2 mix factors; z3 = cos((y3+n)/2); z4 noise"
            }
            Scenario::CosNuis3D => {
                "y3 = (y1+y2)/2; z1, z2 mix factors; z3 = cos((y2+y3+2n)/4); z4 noise"
            }
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    pub samples: usize,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn new(scenario: Scenario, samples: usize, seed: u64) -> Self {
        Self {
            scenario,
            samples,
            seed,
        }
    }
}

/// `(name, description)` for every scenario, in listing order.
pub fn list_scenarios() -> Vec<(&'static str, &'static str)> {
    Scenario::ALL
        .iter()
        .map(|s| (s.name(), s.description()))
        .collect()
}

fn uniform(seed: u64, label: &str, len: usize, high: f64) -> Vec<f64> {
    let mut rng = seeded_rng(seed, &["scenario".into(), label.into()]);
    (0..len).map(|_| rng.gen::<f64>() * high).collect()
}

fn cos_of(arg: f64) -> f64 {
    assert!(
        (0.0..PI).contains(&arg),
        "cosine argument {arg} left [0, pi)"
    );
    arg.cos()
}

/// Generates `(factors [y1, y2, y3], representation [z1..z3 or z1..z4])`.
pub fn generate(spec: &ScenarioSpec) -> Result<(SampleTable, SampleTable)> {
    use Scenario::*;

    let d = spec.samples;
    if d < 100 {
        return Err(Error::TooFewSamples {
            needed: 100,
            actual: d,
        });
    }
    let sc = spec.scenario;
    let y1 = uniform(spec.seed, "y1", d, PI);
    let y2 = uniform(spec.seed, "y2", d, PI);
    let y3: Vec<f64> = if sc.dependent() {
        y1.iter().zip(&y2).map(|(a, b)| (a + b) / 2.0).collect()
    } else {
        uniform(spec.seed, "y3", d, PI)
    };
    let n = uniform(spec.seed, "n", d, PI);

    let z = |f: &dyn Fn(usize) -> f64| -> Vec<f64> { (0..d).map(|t| cos_of(f(t))).collect() };
    let own1 = || z(&|t| y1[t]);
    let own2 = || z(&|t| y2[t]);
    let own3 = || z(&|t| y3[t]);
    let mix12 = || z(&|t| (y1[t] + y2[t]) / 2.0);
    let mix13 = || z(&|t| (y1[t] + y3[t]) / 2.0);
    let mix23 = || z(&|t| (y2[t] + y3[t]) / 2.0);
    let skew = || z(&|t| (3.0 * y1[t] + y2[t]) / 4.0);
    let nuis2 = || z(&|t| (y3[t] + n[t]) / 2.0);
    let nuis3 = || z(&|t| (y2[t] + y3[t] + 2.0 * n[t]) / 4.0);

    let mut columns = match sc {
        Cos0 | Cos1I | Cos1D => vec![own1(), own2(), own3()],
        Cos2I | Cos2D => vec![own1(), own2(), skew()],
        Cos3I | Cos3D => vec![mix12(), mix13(), mix23()],
        CosNuis2I => vec![own1(), own2(), nuis2()],
        CosNuis3I | CosNuis3D => vec![mix12(), mix13(), nuis3()],
        CosNuis2D => vec![mix12(), mix13(), nuis2()],
    };
    if sc.has_noise_variable() {
        columns.push(uniform(spec.seed, "z4", d, 1.0));
    }

    let factors = SampleTable::with_prefix(Role::Factors, "y", vec![y1, y2, y3])?;
    let repr = SampleTable::with_prefix(Role::Representation, "z", columns)?;
    Ok((factors, repr))
}
