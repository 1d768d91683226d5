//! Fuzzy logical connectives: t-norms, their residual implicators and a
//! grid-based D-convexity check.
//!
//! Three t-norms ship with closed-form residuals (Łukasiewicz, minimum,
//! product). A user-supplied t-norm is accepted through [`CustomTNorm`], but
//! it only gets a residual implicator when the caller attests that it is
//! left-continuous; the residual is then located by bisection.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{check_unit, Error, Result};

/// Tolerance used when testing the convexity inequality on the grid.
pub const CONVEXITY_TOLERANCE: f64 = 1e-12;

pub type BinaryOp = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[inline]
pub(crate) fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// A t-norm supplied by the caller.
#[derive(Clone)]
pub struct CustomTNorm {
    name: String,
    op: BinaryOp,
    left_continuous: bool,
}

impl CustomTNorm {
    /// `left_continuous` is an attestation: it is not verified, and it gates
    /// whether a residual implicator can be derived.
    pub fn new(
        name: impl Into<String>,
        op: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        left_continuous: bool,
    ) -> Self {
        Self {
            name: name.into(),
            op: Arc::new(op),
            left_continuous,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        clamp_unit((self.op)(x, y))
    }
}

impl fmt::Debug for CustomTNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomTNorm")
            .field("name", &self.name)
            .field("left_continuous", &self.left_continuous)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum TNorm {
    /// `max(0, x + y - 1)`
    Lukasiewicz,
    Minimum,
    Product,
    Custom(CustomTNorm),
}

impl TNorm {
    pub fn name(&self) -> &str {
        match self {
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Minimum => "minimum",
            TNorm::Product => "product",
            TNorm::Custom(c) => &c.name,
        }
    }

    /// Evaluates the t-norm without range checks. Inputs are assumed to lie
    /// in `[0, 1]`; the result is clamped to absorb rounding drift.
    #[inline]
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        match self {
            // 1 is handled separately so that the neutral element is exact:
            // (1 + y) - 1 is not always y in binary floating point.
            TNorm::Lukasiewicz => {
                if x == 1.0 {
                    y
                } else if y == 1.0 {
                    x
                } else {
                    clamp_unit(x + y - 1.0)
                }
            }
            TNorm::Minimum => x.min(y),
            TNorm::Product => clamp_unit(x * y),
            TNorm::Custom(c) => c.eval(x, y),
        }
    }

    /// Range-checked evaluation.
    pub fn try_apply(&self, x: f64, y: f64) -> Result<f64> {
        check_unit(x)?;
        check_unit(y)?;
        Ok(self.apply(x, y))
    }

    pub fn is_left_continuous(&self) -> bool {
        match self {
            TNorm::Lukasiewicz | TNorm::Minimum | TNorm::Product => true,
            TNorm::Custom(c) => c.left_continuous,
        }
    }

    /// The residual implicator `I(x, y) = sup { λ | T(x, λ) <= y }`.
    pub fn residual(&self) -> Result<Implicator> {
        match self {
            TNorm::Lukasiewicz => Ok(Implicator::Lukasiewicz),
            TNorm::Minimum => Ok(Implicator::Godel),
            TNorm::Product => Ok(Implicator::Goguen),
            TNorm::Custom(c) if c.left_continuous => Ok(Implicator::Residual(c.clone())),
            TNorm::Custom(c) => Err(Error::Unsupported(format!(
                "t-norm '{}' is not attested left-continuous; no residual implicator",
                c.name
            ))),
        }
    }

    /// See [`check_d_convex`].
    pub fn is_d_convex(&self, grid_step: f64) -> bool {
        check_d_convex(self, grid_step)
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lukasiewicz" | "łukasiewicz" | "luk" | "l" => Ok(TNorm::Lukasiewicz),
            "minimum" | "min" | "godel" | "m" => Ok(TNorm::Minimum),
            "product" | "prod" | "goguen" | "p" => Ok(TNorm::Product),
            other => Err(Error::InvalidParameter(format!("unknown t-norm '{other}'"))),
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Residual implicators of the supported t-norms.
#[derive(Clone, Debug)]
pub enum Implicator {
    /// `min(1, 1 - x + y)`
    Lukasiewicz,
    /// 1 if `x <= y`, else `y`
    Godel,
    /// 1 if `x <= y`, else `y / x`
    Goguen,
    /// Residual of a left-continuous custom t-norm, found by bisection.
    Residual(CustomTNorm),
}

impl Implicator {
    pub fn name(&self) -> &str {
        match self {
            Implicator::Lukasiewicz => "lukasiewicz",
            Implicator::Godel => "godel",
            Implicator::Goguen => "goguen",
            Implicator::Residual(c) => &c.name,
        }
    }

    #[inline]
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        if x <= y {
            return 1.0;
        }
        match self {
            Implicator::Lukasiewicz => clamp_unit((1.0 - x) + y),
            Implicator::Godel => y,
            Implicator::Goguen => clamp_unit(y / x),
            Implicator::Residual(t) => bisect_residual(t, x, y),
        }
    }

    pub fn try_apply(&self, x: f64, y: f64) -> Result<f64> {
        check_unit(x)?;
        check_unit(y)?;
        Ok(self.apply(x, y))
    }
}

fn bisect_residual(t: &CustomTNorm, x: f64, y: f64) -> f64 {
    if t.eval(x, 1.0) <= y {
        return 1.0;
    }
    // T(x, 0) = 0 <= y, so the supremum lies in [lo, hi).
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if t.eval(x, mid) <= y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Residual implicator of `t`; fails for t-norms that are not left-continuous.
pub fn residual_implicator(t: &TNorm) -> Result<Implicator> {
    t.residual()
}

/// `k + 1` equally spaced points of `[0, 1]`, `k = round(1 / step)`.
pub fn unit_grid(step: f64) -> Vec<f64> {
    let k = (1.0 / step).round() as usize;
    (0..=k).map(|i| i as f64 / k as f64).collect()
}

/// Checks, on a regular grid of `[0, 1]` with spacing `grid_step`, whether
/// `t` is convex in each argument separately:
/// `H(w x1 + (1-w) x2, y) <= w H(x1, y) + (1-w) H(x2, y)` and the same in the
/// second argument, up to [`CONVEXITY_TOLERANCE`]. The weight `w` ranges over
/// the same grid.
///
/// # Panics
///
/// If `grid_step` is not in `(0, 0.1]`.
pub fn check_d_convex(t: &TNorm, grid_step: f64) -> bool {
    assert!(
        grid_step > 0.0 && grid_step <= 0.1,
        "grid step must lie in (0, 0.1], got {grid_step}"
    );
    let grid = unit_grid(grid_step);
    for &w in &grid {
        for &x1 in &grid {
            for &x2 in &grid {
                let mid = clamp_unit(w * x1 + (1.0 - w) * x2);
                for &y in &grid {
                    let first = t.apply(mid, y);
                    let first_rhs = w * t.apply(x1, y) + (1.0 - w) * t.apply(x2, y);
                    if first > first_rhs + CONVEXITY_TOLERANCE {
                        return false;
                    }
                    let second = t.apply(y, mid);
                    let second_rhs = w * t.apply(y, x1) + (1.0 - w) * t.apply(y, x2);
                    if second > second_rhs + CONVEXITY_TOLERANCE {
                        return false;
                    }
                }
            }
        }
    }
    true
}
