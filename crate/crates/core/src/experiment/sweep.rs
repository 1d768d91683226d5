use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::dataset::{Dataset, Scale};
use crate::approximations::{Aggregation, ApproximationModel, ModelKind};
use crate::connectives::TNorm;
use crate::error::{Error, Result};
use crate::granularity::{aggregate_metrics, consistency_report, InconsistencyMetrics};
use crate::measures::{wowa_measure, Quantifier, WeightVector};
use crate::sets::{FuzzyRelation, FuzzySet};

/// Default metric tolerance, absorbing floating-point noise.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `0.6, 0.7, 0.8, 0.9, 0.91, …, 0.99, 1`.
pub fn default_alphas() -> Vec<f64> {
    let mut alphas = vec![0.6, 0.7, 0.8];
    alphas.extend((90..=100).map(|i| i as f64 / 100.0));
    alphas
}

/// How a sweep parameter `α` is turned into a quantifier.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantifierFamily {
    /// `Λ_(α,1)`, with `α = 1` the universal quantifier.
    #[default]
    ZadehS,
    /// `Λ(p) = p^α`, with `α = 1` the identity.
    Power,
}

impl QuantifierFamily {
    pub fn quantifier(self, alpha: f64) -> Result<Quantifier> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        match self {
            QuantifierFamily::ZadehS => Quantifier::zadeh_s(alpha, 1.0),
            QuantifierFamily::Power if alpha == 1.0 => Ok(Quantifier::Identity),
            QuantifierFamily::Power if alpha == 0.0 => Err(Error::InvalidParameter(
                "the power family needs alpha > 0".into(),
            )),
            QuantifierFamily::Power => Quantifier::custom(format!("power({alpha})"), move |p| {
                if p <= 0.0 {
                    0.0
                } else {
                    p.powf(alpha)
                }
            }),
        }
    }
}

impl fmt::Display for QuantifierFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuantifierFamily::ZadehS => "zadeh",
            QuantifierFamily::Power => "power",
        })
    }
}

impl FromStr for QuantifierFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zadeh" | "zadeh-s" | "s" => Ok(QuantifierFamily::ZadehS),
            "power" | "pow" => Ok(QuantifierFamily::Power),
            _ => Err(Error::InvalidParameter(format!(
                "unknown quantifier family '{s}'"
            ))),
        }
    }
}

/// Which approximation a sweep audits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub models: Vec<ModelKind>,
    pub alphas: Vec<f64>,
    pub family: QuantifierFamily,
    pub tnorm: TNorm,
    pub tolerance: f64,
    pub scale: Scale,
    /// Restrict to one decision class instead of all of them.
    pub target_class: Option<String>,
    pub include_upper: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            models: ModelKind::ALL.to_vec(),
            alphas: default_alphas(),
            family: QuantifierFamily::default(),
            tnorm: TNorm::Lukasiewicz,
            tolerance: DEFAULT_TOLERANCE,
            scale: Scale::StdDev,
            target_class: None,
            include_upper: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::InvalidParameter("alpha list is empty".into()));
        }
        if let Some(&a) = self.alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in [0, 1], got {a}"
            )));
        }
        if self.alphas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "alphas must be strictly increasing".into(),
            ));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be finite and non-negative, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub dataset: String,
    pub model: ModelKind,
    pub direction: Direction,
    pub alpha: f64,
    pub error: f64,
    pub percentage: f64,
}

impl SweepCell {
    /// `ywic` for lower approximations, `ywic-upper` for upper ones.
    pub fn label(&self) -> String {
        match self.direction {
            Direction::Lower => self.model.as_str().to_string(),
            Direction::Upper => format!("{}-upper", self.model.as_str()),
        }
    }
}

/// Largest error and percentage over a group of cells.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepMaximum {
    pub dataset: String,
    /// A cell label, or `all` for the maximum over every cell.
    pub model: String,
    pub error: f64,
    pub percentage: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
}

impl SweepReport {
    /// One `all` row per dataset followed by one row per cell label, in
    /// order of first appearance.
    pub fn maxima(&self) -> Vec<SweepMaximum> {
        let mut keys: Vec<(String, String)> = Vec::new();
        for cell in &self.cells {
            for key in [
                (cell.dataset.clone(), "all".to_string()),
                (cell.dataset.clone(), cell.label()),
            ] {
                if !keys.contains(&key) {
                    keys.push(key);
                }
            }
        }
        keys.into_iter()
            .map(|(dataset, model)| {
                let (error, percentage) = self
                    .cells
                    .iter()
                    .filter(|c| c.dataset == dataset && (model == "all" || c.label() == model))
                    .fold((0.0f64, 0.0f64), |(e, p), c| {
                        (e.max(c.error), p.max(c.percentage))
                    });
                SweepMaximum {
                    dataset,
                    model,
                    error,
                    percentage,
                }
            })
            .collect()
    }

    pub fn max_error(&self) -> f64 {
        self.cells.iter().map(|c| c.error).fold(0.0, f64::max)
    }
}

/// Builds the aggregation of `kind` for quantifier `q` on relation `r`.
///
/// Choquet and Sugeno use the WOWA measure of the normalised row
/// cardinalities `|Rx| / n`, OWA the weights generated by `q`.
pub fn build_aggregation(kind: ModelKind, q: Quantifier, r: &FuzzyRelation) -> Result<Aggregation> {
    let n = r.size();
    Ok(match kind {
        ModelKind::Classic => Aggregation::Classic,
        ModelKind::Choquet | ModelKind::Sugeno => {
            let sizes: Vec<f64> = (0..n)
                .map(|x| r.row(x).iter().sum::<f64>() / n as f64)
                .collect();
            let mu = wowa_measure(&q, &FuzzySet::new(sizes)?)?;
            if kind == ModelKind::Choquet {
                Aggregation::Choquet(mu)
            } else {
                Aggregation::Sugeno(mu)
            }
        }
        ModelKind::Owa => Aggregation::Owa(WeightVector::from_quantifier(&q, n)?),
        ModelKind::Ywic => Aggregation::Ywic(q),
        ModelKind::Ywis => Aggregation::Ywis(q),
        ModelKind::Wowac => Aggregation::Wowac(q),
        ModelKind::Wowas => Aggregation::Wowas(q),
    })
}

fn run_cell(
    r: &FuzzyRelation,
    concepts: &[FuzzySet],
    model: &ApproximationModel,
    direction: Direction,
    tolerance: f64,
) -> Result<InconsistencyMetrics> {
    let reports = concepts
        .iter()
        .map(|a| {
            let approx = match direction {
                Direction::Lower => model.lower(r, a)?,
                Direction::Upper => model.upper(r, a)?,
            };
            consistency_report(r, &approx, model.implicator(), tolerance)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate_metrics(&reports))
}

/// Audits every (model, α) cell of `cfg` on the decision classes of `ds`.
pub fn run_sweep(ds: &Dataset, cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let r = ds.relation(cfg.scale)?;
    let concepts: Vec<FuzzySet> = match &cfg.target_class {
        Some(c) => vec![ds.class_set(c)?],
        None => ds.decision_sets().into_iter().map(|(_, s)| s).collect(),
    };
    sweep_concepts(ds.name(), &r, &concepts, cfg)
}

/// Audits every (model, α) cell of `cfg` on arbitrary concepts over `r`,
/// which must be reflexive. `cfg.scale` and `cfg.target_class` are ignored.
///
/// Cells run in parallel on the current rayon pool; the report lists them
/// by model, then direction, then α, whatever the thread count.
pub fn sweep_concepts(
    name: &str,
    r: &FuzzyRelation,
    concepts: &[FuzzySet],
    cfg: &SweepConfig,
) -> Result<SweepReport> {
    cfg.validate()?;
    let directions: &[Direction] = if cfg.include_upper {
        &[Direction::Lower, Direction::Upper]
    } else {
        &[Direction::Lower]
    };

    // built before fanning out so that D-convexity warnings are logged once
    let mut models = Vec::with_capacity(cfg.models.len() * cfg.alphas.len());
    for &kind in &cfg.models {
        for &alpha in &cfg.alphas {
            let agg = build_aggregation(kind, cfg.family.quantifier(alpha)?, r)?;
            models.push(ApproximationModel::new(agg, cfg.tnorm.clone())?);
        }
    }
    let mut jobs = Vec::new();
    for (k, &kind) in cfg.models.iter().enumerate() {
        for &direction in directions {
            for (j, &alpha) in cfg.alphas.iter().enumerate() {
                jobs.push((kind, direction, alpha, k * cfg.alphas.len() + j));
            }
        }
    }

    let cells = jobs
        .into_par_iter()
        .map(|(kind, direction, alpha, m)| {
            let metrics = run_cell(r, concepts, &models[m], direction, cfg.tolerance)?;
            Ok(SweepCell {
                dataset: name.to_string(),
                model: kind,
                direction,
                alpha,
                error: metrics.error,
                percentage: metrics.percentage,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { cells })
}
