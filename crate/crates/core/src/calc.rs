//! Distillation error and volume arithmetic, and the asymptotic volume
//! models for concatenated versus topological codes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Volume of the minimum-volume CNOT in logical cells.
pub const MIN_CNOT_VOLUME: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Protocol {
    /// 7 → 1, output error 7p³.
    Y,
    /// 15 → 1, output error 35p³.
    A,
}

impl Protocol {
    pub fn coefficient(self) -> f64 {
        match self {
            Protocol::Y => 7.0,
            Protocol::A => 35.0,
        }
    }

    pub fn inputs(self) -> u64 {
        match self {
            Protocol::Y => 7,
            Protocol::A => 15,
        }
    }

    /// Reported volume of one compressed round in logical cells.
    pub fn base_volume(self) -> u64 {
        match self {
            Protocol::Y => 18,
            Protocol::A => 192,
        }
    }
}

/// Code distance of each level relative to the last one, as a fraction.
pub trait LevelPolicy {
    /// `depth` 0 is the final level; `levels` is the total count.
    fn distance_fraction(&self, depth: u32, levels: u32) -> Result<(u64, u64)>;
}

/// Earlier levels only need to guard against half as many errors, so the
/// first of two levels runs at half distance. Defined for at most two levels.
#[derive(Debug, Clone, Copy, Default)]
pub struct HalfDistanceFirstLevel;

impl LevelPolicy for HalfDistanceFirstLevel {
    fn distance_fraction(&self, depth: u32, levels: u32) -> Result<(u64, u64)> {
        match (levels, depth) {
            (1, 0) | (2, 0) => Ok((1, 1)),
            (2, 1) => Ok((1, 2)),
            _ => Err(Error::Unsupported(format!(
                "half-distance policy is defined for 1 or 2 levels, not {levels}"
            ))),
        }
    }
}

/// Every level at full distance.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformDistance;

impl LevelPolicy for UniformDistance {
    fn distance_fraction(&self, _: u32, _: u32) -> Result<(u64, u64)> {
        Ok((1, 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistillationSpec {
    pub protocol: Protocol,
    pub levels: u32,
    pub input_error: f64,
    pub base_volume: u64,
}

impl DistillationSpec {
    pub fn new(protocol: Protocol, levels: u32, input_error: f64) -> Self {
        DistillationSpec {
            protocol,
            levels,
            input_error,
            base_volume: protocol.base_volume(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.levels == 0 {
            return Err(Error::Precondition("levels must be positive".into()));
        }
        if !(self.input_error > 0.0 && self.input_error < 1.0) {
            return Err(Error::Precondition(format!(
                "input error {} is not in (0, 1)",
                self.input_error
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputError {
    pub probability: f64,
    /// False once the recursion leaves (0, 1), where the formula means nothing.
    pub valid: bool,
}

/// e₀ = p, e_{k+1} = c·e_k³.
pub fn output_error(spec: &DistillationSpec) -> Result<OutputError> {
    spec.check()?;
    let c = spec.protocol.coefficient();
    let mut e = spec.input_error;
    for _ in 0..spec.levels {
        e = c * e * e * e;
    }
    Ok(OutputError {
        probability: e,
        valid: e > 0.0 && e < 1.0,
    })
}

/// An exact rational volume in logical cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Volume {
    pub numerator: u128,
    pub denominator: u128,
}

impl Volume {
    fn new(n: u128, d: u128) -> Self {
        let g = gcd(n, d);
        Volume {
            numerator: n / g,
            denominator: d / g,
        }
    }

    pub fn cells(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    pub fn exact(&self) -> Option<u64> {
        (self.denominator == 1).then_some(self.numerator as u64)
    }

    pub fn cnot_units(&self) -> f64 {
        self.cells() / MIN_CNOT_VOLUME as f64
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

pub fn distill_volume(spec: &DistillationSpec) -> Result<Volume> {
    distill_volume_with(spec, &HalfDistanceFirstLevel)
}

/// Σ over levels of (copies at that level) · base · (distance fraction)³,
/// assuming every lower-level round succeeds.
pub fn distill_volume_with(spec: &DistillationSpec, policy: &dyn LevelPolicy) -> Result<Volume> {
    spec.check()?;
    let mut num: u128 = 0;
    let mut den: u128 = 1;
    let mut copies: u128 = 1;
    for depth in 0..spec.levels {
        let (a, b) = policy.distance_fraction(depth, spec.levels)?;
        let (tn, td) = (copies * spec.base_volume as u128 * (a as u128).pow(3), (b as u128).pow(3));
        num = num * td + tn * den;
        den *= td;
        let g = gcd(num, den);
        num /= g;
        den /= g;
        copies *= spec.protocol.inputs() as u128;
    }
    Ok(Volume::new(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScalingModel {
    /// V = V₀ · gates_per_level^L with n_f = 2^L.
    Concatenated { base: f64, gates_per_level: f64 },
    /// V = V₀ · n_f³: doubling n_f doubles every length.
    Topological { base: f64 },
}

impl ScalingModel {
    pub fn concatenated() -> Self {
        ScalingModel::Concatenated {
            base: 1.0,
            gates_per_level: 1000.0,
        }
    }

    pub fn topological() -> Self {
        ScalingModel::Topological { base: 1.0 }
    }
}

pub fn scaling_volume(model: ScalingModel, n_f: f64) -> Result<f64> {
    if n_f.is_nan() || n_f < 1.0 {
        return Err(Error::Precondition(format!("n_f = {n_f} must be at least 1")));
    }
    Ok(match model {
        ScalingModel::Concatenated { base, gates_per_level } => base * gates_per_level.powf(n_f.log2()),
        ScalingModel::Topological { base } => base * n_f.powi(3),
    })
}

/// Exponent k in V ∼ n_f^k.
pub fn scaling_exponent(model: ScalingModel) -> f64 {
    match model {
        ScalingModel::Concatenated { gates_per_level, .. } => gates_per_level.log2(),
        ScalingModel::Topological { .. } => 3.0,
    }
}

/// Smallest n_f ≥ 1 beyond which the topological model is cheaper.
pub fn crossover(concatenated: ScalingModel, topological: ScalingModel) -> Option<f64> {
    let (ScalingModel::Concatenated { base: bc, .. }, ScalingModel::Topological { base: bt }) =
        (concatenated, topological)
    else {
        return None;
    };
    let gap = scaling_exponent(concatenated) - 3.0;
    if gap <= 0.0 {
        return None;
    }
    Some((bt / bc).powf(1.0 / gap).max(1.0))
}
