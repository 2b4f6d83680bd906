//! Shape functions mapping position parameters onto the front.
//!
//! A [`ShapeSpec`] combines a base family for `h_1 .. h_{M-1}` with an
//! optional replacement for the last function `h_M` and a power applied to
//! every `h_m`. A power below one bulges a concave front further outward
//! ("strong concave"); a power above one pulls a convex front further in.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseShape {
    Linear,
    Convex,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LastShape {
    /// Same family as the base.
    Base,
    /// `(1 - x - cos(2 A pi x + pi/2) / (2 A pi))^alpha`
    Mixed { a: f64, alpha: f64 },
    /// `1 - x^alpha cos^2(A x^beta pi)`
    Disconnected { a: f64, alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub base: BaseShape,
    #[serde(default = "default_last")]
    pub last: LastShape,
    #[serde(default = "default_power")]
    pub power: f64,
}

fn default_last() -> LastShape {
    LastShape::Base
}

fn default_power() -> f64 {
    1.0
}

impl ShapeSpec {
    pub const fn plain(base: BaseShape) -> Self {
        Self {
            base,
            last: LastShape::Base,
            power: 1.0,
        }
    }

    /// Evaluates `h_1 .. h_M` at the position parameters `x` (length `M - 1`,
    /// each in `[0, 1]`).
    pub fn evaluate(&self, x: &[f64], out: &mut [f64]) {
        let m = out.len();
        debug_assert_eq!(x.len() + 1, m);
        for (idx, h) in out.iter_mut().enumerate() {
            let obj = idx + 1;
            *h = if obj == m {
                match self.last {
                    LastShape::Base => base_shape(self.base, x, obj),
                    LastShape::Mixed { a, alpha } => mixed(x[0], a, alpha),
                    LastShape::Disconnected { a, alpha, beta } => {
                        disconnected(x[0], a, alpha, beta)
                    }
                }
            } else {
                base_shape(self.base, x, obj)
            };
            *h = correct_to_unit(*h);
            if self.power != 1.0 {
                *h = h.powf(self.power);
            }
        }
    }

    /// Upper bound of every `h_m` over `[0, 1]^{M-1}`.
    pub fn max_value(&self) -> f64 {
        1.0
    }
}

/// `h_obj` of the base family; `obj` is 1-based and `M = x.len() + 1`.
fn base_shape(base: BaseShape, x: &[f64], obj: usize) -> f64 {
    let m = x.len() + 1;
    let head = &x[..m - obj];
    match base {
        BaseShape::Linear => {
            let prod: f64 = head.iter().product();
            if obj == 1 {
                prod
            } else {
                prod * (1.0 - x[m - obj])
            }
        }
        BaseShape::Convex => {
            let prod: f64 = head.iter().map(|v| 1.0 - (v * FRAC_PI_2).cos()).product();
            if obj == 1 {
                prod
            } else {
                prod * (1.0 - (x[m - obj] * FRAC_PI_2).sin())
            }
        }
        BaseShape::Concave => {
            let prod: f64 = head.iter().map(|v| (v * FRAC_PI_2).sin()).product();
            if obj == 1 {
                prod
            } else {
                prod * (x[m - obj] * FRAC_PI_2).cos()
            }
        }
    }
}

fn mixed(x: f64, a: f64, alpha: f64) -> f64 {
    let k = 2.0 * a * PI;
    (1.0 - x - (k * x + FRAC_PI_2).cos() / k).powf(alpha)
}

fn disconnected(x: f64, a: f64, alpha: f64, beta: f64) -> f64 {
    let c = (a * x.powf(beta) * PI).cos();
    1.0 - x.powf(alpha) * c * c
}

/// Snaps values within 1e-10 outside `[0, 1]` back onto the interval.
pub(crate) fn correct_to_unit(v: f64) -> f64 {
    const EPS: f64 = 1e-10;
    if (-EPS..0.0).contains(&v) {
        0.0
    } else if v > 1.0 && v <= 1.0 + EPS {
        1.0
    } else {
        v
    }
}
