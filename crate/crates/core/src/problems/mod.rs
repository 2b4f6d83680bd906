//! The WFG4 problem and its shape variants WFG41–WFG48.
//!
//! Every variant shares the WFG4 transformation pipeline: normalize each
//! variable by its upper bound `2i`, apply the multimodal shift to all of
//! them, reduce the position and distance groups by unweighted sums, then map
//! the position parameters through a shape function scaled by `2i`. Variants
//! differ only in the shape, which comes from a [`ShapeRegistry`].

mod shapes;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::types::{DecisionVector, ObjectiveVector};

pub use shapes::{BaseShape, LastShape, ShapeSpec};

/// Distance parameters used by every problem instance.
pub const DEFAULT_DISTANCE_PARAMS: usize = 10;

/// Shipped mapping for WFG41–WFG48, identical to [`ShapeRegistry::default`].
pub const DEFAULT_SHAPES_TOML: &str = include_str!("../../data/wfg4x_shapes.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProblemId {
    WFG4,
    WFG41,
    WFG42,
    WFG43,
    WFG44,
    WFG45,
    WFG46,
    WFG47,
    WFG48,
}

impl ProblemId {
    pub const VARIANTS: [ProblemId; 8] = [
        ProblemId::WFG41,
        ProblemId::WFG42,
        ProblemId::WFG43,
        ProblemId::WFG44,
        ProblemId::WFG45,
        ProblemId::WFG46,
        ProblemId::WFG47,
        ProblemId::WFG48,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::WFG4 => "WFG4",
            ProblemId::WFG41 => "WFG41",
            ProblemId::WFG42 => "WFG42",
            ProblemId::WFG43 => "WFG43",
            ProblemId::WFG44 => "WFG44",
            ProblemId::WFG45 => "WFG45",
            ProblemId::WFG46 => "WFG46",
            ProblemId::WFG47 => "WFG47",
            ProblemId::WFG48 => "WFG48",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_ascii_uppercase();
        std::iter::once(ProblemId::WFG4)
            .chain(ProblemId::VARIANTS)
            .find(|p| p.name() == upper)
            .ok_or_else(|| Error::Config(format!("unknown problem {s:?}")))
    }
}

/// Problem id to shape mapping for the WFG4 variants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShapeRegistry {
    shapes: BTreeMap<ProblemId, ShapeSpec>,
}

impl Default for ShapeRegistry {
    /// Best-effort shapes inferred from the variants' descriptions: concave,
    /// convex, strong concave, strong convex, mixed, linear, disconnected
    /// concave, disconnected convex.
    fn default() -> Self {
        use BaseShape::*;
        let disconnected = LastShape::Disconnected {
            a: 5.0,
            alpha: 1.0,
            beta: 1.0,
        };
        let shapes = BTreeMap::from([
            (ProblemId::WFG41, ShapeSpec::plain(Concave)),
            (ProblemId::WFG42, ShapeSpec::plain(Convex)),
            (
                ProblemId::WFG43,
                ShapeSpec {
                    base: Concave,
                    last: LastShape::Base,
                    power: 0.5,
                },
            ),
            (
                ProblemId::WFG44,
                ShapeSpec {
                    base: Convex,
                    last: LastShape::Base,
                    power: 2.0,
                },
            ),
            (
                ProblemId::WFG45,
                ShapeSpec {
                    base: Convex,
                    last: LastShape::Mixed { a: 5.0, alpha: 1.0 },
                    power: 1.0,
                },
            ),
            (ProblemId::WFG46, ShapeSpec::plain(Linear)),
            (
                ProblemId::WFG47,
                ShapeSpec {
                    base: Concave,
                    last: disconnected,
                    power: 1.0,
                },
            ),
            (
                ProblemId::WFG48,
                ShapeSpec {
                    base: Convex,
                    last: disconnected,
                    power: 1.0,
                },
            ),
        ]);
        Self { shapes }
    }
}

impl ShapeRegistry {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let registry: ShapeRegistry =
            toml::from_str(text).map_err(|e| Error::Config(format!("shape mapping: {e}")))?;
        for (id, spec) in &registry.shapes {
            if !(spec.power.is_finite() && spec.power > 0.0) {
                return Err(Error::Config(format!("{id}: power must be positive")));
            }
        }
        Ok(registry)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("registry serializes")
    }

    /// WFG4 always uses the plain concave shape; variants consult the map.
    pub fn shape(&self, id: ProblemId) -> Result<ShapeSpec> {
        if id == ProblemId::WFG4 {
            return Ok(ShapeSpec::plain(BaseShape::Concave));
        }
        self.shapes
            .get(&id)
            .copied()
            .ok_or_else(|| Error::Config(format!("no shape registered for {id}")))
    }

    pub fn insert(&mut self, id: ProblemId, spec: ShapeSpec) {
        self.shapes.insert(id, spec);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemDef {
    pub id: ProblemId,
    pub m: usize,
    /// Position parameters.
    pub k: usize,
    /// Distance parameters.
    pub l: usize,
    pub shape: ShapeSpec,
}

impl ProblemDef {
    /// Instance with the default parameter counts: `k = 2` for two objectives,
    /// `k = m - 1` otherwise, and `l = 10`.
    pub fn new(id: ProblemId, m: usize, registry: &ShapeRegistry) -> Result<Self> {
        let k = if m == 2 { 2 } else { m.saturating_sub(1) };
        Self::with_params(id, m, k, DEFAULT_DISTANCE_PARAMS, registry)
    }

    pub fn with_params(
        id: ProblemId,
        m: usize,
        k: usize,
        l: usize,
        registry: &ShapeRegistry,
    ) -> Result<Self> {
        if m < 2 {
            return Err(Error::Config(format!("{id}: need at least 2 objectives")));
        }
        if k == 0 || !k.is_multiple_of(m - 1) {
            return Err(Error::Config(format!(
                "{id}: k={k} must be a positive multiple of m-1={}",
                m - 1
            )));
        }
        if l == 0 {
            return Err(Error::Config(format!("{id}: l must be positive")));
        }
        Ok(Self {
            id,
            m,
            k,
            l,
            shape: registry.shape(id)?,
        })
    }

    pub fn n(&self) -> usize {
        self.k + self.l
    }

    /// Upper bound `2i` of variable `i` (0-based index, so `2(i + 1)`).
    pub fn upper_bound(&self, i: usize) -> f64 {
        2.0 * (i + 1) as f64
    }

    pub fn bounds(&self) -> Vec<(f64, f64)> {
        (0..self.n()).map(|i| (0.0, self.upper_bound(i))).collect()
    }

    /// Scale `2m` applied to objective `m` (0-based `j`, so `2(j + 1)`).
    pub fn objective_scale(&self, j: usize) -> f64 {
        2.0 * (j + 1) as f64
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: x.len(),
            });
        }
        for (i, &v) in x.iter().enumerate() {
            if !(0.0..=self.upper_bound(i)).contains(&v) {
                return Err(Error::Domain(format!(
                    "variable {i} = {v} outside [0, {}]",
                    self.upper_bound(i)
                )));
            }
        }
        Ok(ObjectiveVector::new(self.evaluate_unchecked(x)).expect("finite objectives"))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        let k = self.k;
        let shifted: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, v)| multimodal_shift(v / self.upper_bound(i), 30.0, 10.0, 0.35))
            .collect();

        let gap = k / (m - 1);
        let mut t: Vec<f64> = (0..m - 1)
            .map(|i| mean(&shifted[i * gap..(i + 1) * gap]))
            .collect();
        let distance = mean(&shifted[k..]);

        // Degeneracy constants are all one for WFG4, so the position
        // parameters pass through unchanged.
        for ti in t.iter_mut() {
            *ti = distance.max(1.0) * (*ti - 0.5) + 0.5;
        }

        let mut h = vec![0.0; m];
        self.shape.evaluate(&t, &mut h);
        h.iter()
            .enumerate()
            .map(|(j, hj)| distance + self.objective_scale(j) * hj)
            .collect()
    }

    /// Decision vector on the Pareto set: given position variables (length
    /// `k`, each in `[0, 1]` before scaling), distance variables sit at the
    /// optimum `0.35 * 2i`.
    pub fn optimal_solution(&self, position: &[f64]) -> Result<DecisionVector> {
        if position.len() != self.k {
            return Err(Error::Dimension {
                expected: self.k,
                found: position.len(),
            });
        }
        let x = (0..self.n())
            .map(|i| {
                let unit = if i < self.k { position[i] } else { 0.35 };
                unit * self.upper_bound(i)
            })
            .collect();
        Ok(DecisionVector::new(x))
    }

    /// Upper bound on objective `j` over the whole domain: the largest
    /// distance term plus the scaled shape maximum.
    pub fn objective_upper_bound(&self, j: usize) -> f64 {
        1.0 + self.objective_scale(j) * self.shape.max_value()
    }
}

pub fn random_solution(p: &ProblemDef, rng: &mut RngStream) -> DecisionVector {
    DecisionVector::new(
        (0..p.n())
            .map(|i| rng.uniform() * p.upper_bound(i))
            .collect(),
    )
}

fn mean(v: &[f64]) -> f64 {
    shapes::correct_to_unit(v.iter().sum::<f64>() / v.len() as f64)
}

fn multimodal_shift(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    let tmp2 = (4.0 * a + 2.0) * PI * (0.5 - tmp1);
    shapes::correct_to_unit((1.0 + tmp2.cos() + 4.0 * b * tmp1 * tmp1) / (b + 2.0))
}
