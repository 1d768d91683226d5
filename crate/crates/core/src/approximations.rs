//! Lower and upper approximation operators.
//!
//! [`lower_classic`] and [`upper_classic`] are the implicator/conjunctor
//! approximations. Every quantifier-based model goes through
//! [`ApproximationModel`], which dispatches on its [`Aggregation`]:
//!
//! | kind    | lower at `y`                          | upper at `y`              |
//! |---------|---------------------------------------|---------------------------|
//! | classic | `min_x I(R(x,y), A(x))`               | `max_x T(R(x,y), A(x))`   |
//! | choquet | `∫ I(Ry, A) dμ` (Choquet)             | `∫ T(Ry, A) dμ`           |
//! | sugeno  | `⨍ I(Ry, A) dμ` (Sugeno)              | `⨍ T(Ry, A) dμ`           |
//! | owa     | Choquet w.r.t. the OWA measure of `w` | same                      |
//! | ywic    | Choquet w.r.t. `μ*_{Ry}`              | Choquet w.r.t. `μ_Λ`      |
//! | ywis    | Sugeno w.r.t. `μ*_{Ry}`               | Sugeno w.r.t. `μ_Λ`       |
//! | wowac   | Choquet w.r.t. `μ_{Ry}`               | Choquet w.r.t. `μ_Λ`      |
//! | wowas   | Sugeno w.r.t. `μ_{Ry}`                | Sugeno w.r.t. `μ_Λ`       |

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectives::{check_d_convex, Implicator, TNorm};
use crate::error::{Error, Result};
use crate::integrals::{choquet_unchecked, sugeno_unchecked};
use crate::measures::{
    owa_weights_to_measure, symmetric_measure, wowa_measure, ywi_measure, MonotoneMeasure,
    Quantifier, WeightVector,
};
use crate::sets::{FuzzyRelation, FuzzySet, DEFAULT_TOLERANCE};

/// Grid step used when deciding whether a t-norm is D-convex.
const D_CONVEX_GRID: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Classic,
    Choquet,
    Sugeno,
    Owa,
    Ywic,
    Ywis,
    Wowac,
    Wowas,
}

impl ModelKind {
    pub const ALL: [ModelKind; 8] = [
        ModelKind::Classic,
        ModelKind::Choquet,
        ModelKind::Sugeno,
        ModelKind::Owa,
        ModelKind::Ywic,
        ModelKind::Ywis,
        ModelKind::Wowac,
        ModelKind::Wowas,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Classic => "classic",
            ModelKind::Choquet => "choquet",
            ModelKind::Sugeno => "sugeno",
            ModelKind::Owa => "owa",
            ModelKind::Ywic => "ywic",
            ModelKind::Ywis => "ywis",
            ModelKind::Wowac => "wowac",
            ModelKind::Wowas => "wowas",
        }
    }

    /// Whether the model's approximations are granularly representable for
    /// every `T`-equivalence relation, given a residual pair and (for the
    /// Choquet family) a D-convex t-norm.
    pub fn is_granular(self) -> bool {
        matches!(
            self,
            ModelKind::Classic | ModelKind::Choquet | ModelKind::Sugeno | ModelKind::Owa
        )
    }

    fn needs_d_convexity(self) -> bool {
        matches!(self, ModelKind::Choquet | ModelKind::Owa)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == lower)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown model '{s}'")))
    }
}

/// The aggregation used by a model together with its parameters.
#[derive(Clone, Debug)]
pub enum Aggregation {
    Classic,
    Choquet(MonotoneMeasure),
    Sugeno(MonotoneMeasure),
    Owa(WeightVector),
    Ywic(Quantifier),
    Ywis(Quantifier),
    Wowac(Quantifier),
    Wowas(Quantifier),
}

impl Aggregation {
    pub fn kind(&self) -> ModelKind {
        match self {
            Aggregation::Classic => ModelKind::Classic,
            Aggregation::Choquet(_) => ModelKind::Choquet,
            Aggregation::Sugeno(_) => ModelKind::Sugeno,
            Aggregation::Owa(_) => ModelKind::Owa,
            Aggregation::Ywic(_) => ModelKind::Ywic,
            Aggregation::Ywis(_) => ModelKind::Ywis,
            Aggregation::Wowac(_) => ModelKind::Wowac,
            Aggregation::Wowas(_) => ModelKind::Wowas,
        }
    }

    fn check_universe(&self, n: usize) -> Result<()> {
        let found = match self {
            Aggregation::Choquet(mu) | Aggregation::Sugeno(mu) => mu.len(),
            Aggregation::Owa(w) => w.len(),
            _ => return Ok(()),
        };
        if found == n {
            Ok(())
        } else {
            Err(Error::UniverseMismatch { expected: n, found })
        }
    }
}

/// Lower and (optionally) upper approximation of one set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproximationResult {
    pub lower: FuzzySet,
    pub upper: Option<FuzzySet>,
}

#[derive(Clone, Debug)]
pub struct ApproximationModel {
    aggregation: Aggregation,
    tnorm: TNorm,
    implicator: Implicator,
    residual_pair: bool,
}

impl ApproximationModel {
    /// A model using `tnorm` and its residual implicator.
    ///
    /// Logs a warning when a Choquet-type model is paired with a t-norm
    /// that fails the D-convexity grid check, since granularity of the
    /// result is then no longer guaranteed.
    pub fn new(aggregation: Aggregation, tnorm: TNorm) -> Result<Self> {
        let implicator = tnorm.residual()?;
        let model = Self {
            aggregation,
            tnorm,
            implicator,
            residual_pair: true,
        };
        if model.kind().needs_d_convexity() && !check_d_convex(&model.tnorm, D_CONVEX_GRID) {
            log::warn!(
                "t-norm '{}' is not D-convex: {} approximations may not be granularly representable",
                model.tnorm,
                model.kind()
            );
        }
        Ok(model)
    }

    /// A model with an arbitrary connective pair. No granularity guarantee
    /// is claimed for it.
    pub fn with_implicator(aggregation: Aggregation, tnorm: TNorm, implicator: Implicator) -> Self {
        Self {
            aggregation,
            tnorm,
            implicator,
            residual_pair: false,
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.aggregation.kind()
    }

    pub fn aggregation(&self) -> &Aggregation {
        &self.aggregation
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    pub fn implicator(&self) -> &Implicator {
        &self.implicator
    }

    /// Whether the model's outputs are granularly representable on any
    /// `T`-equivalence relation.
    pub fn granularity_guaranteed(&self) -> bool {
        let kind = self.kind();
        self.residual_pair
            && self.tnorm.is_left_continuous()
            && kind.is_granular()
            && (!kind.needs_d_convexity() || check_d_convex(&self.tnorm, D_CONVEX_GRID))
    }

    fn validate(&self, r: &FuzzyRelation, a: &FuzzySet) -> Result<usize> {
        let n = r.size();
        a.check_len(n)?;
        if !r.is_reflexive(DEFAULT_TOLERANCE) {
            return Err(Error::Model("relation is not reflexive".into()));
        }
        self.aggregation.check_universe(n)?;
        Ok(n)
    }

    pub fn lower(&self, r: &FuzzyRelation, a: &FuzzySet) -> Result<FuzzySet> {
        let n = self.validate(r, a)?;
        let owa_measure = match &self.aggregation {
            Aggregation::Owa(w) => Some(owa_weights_to_measure(w)),
            _ => None,
        };
        let degrees = (0..n)
            .into_par_iter()
            .map(|y| {
                let foreset = r.column(y);
                let f: Vec<f64> = foreset
                    .iter()
                    .zip(a.degrees())
                    .map(|(&rxy, &ax)| self.implicator.apply(rxy, ax))
                    .collect();
                let value = match &self.aggregation {
                    Aggregation::Classic => f.iter().copied().fold(1.0, f64::min),
                    Aggregation::Choquet(mu) => choquet_unchecked(&f, mu),
                    Aggregation::Sugeno(mu) => sugeno_unchecked(&f, mu),
                    Aggregation::Owa(_) => choquet_unchecked(&f, owa_measure.as_ref().unwrap()),
                    Aggregation::Ywic(q) => choquet_unchecked(&f, &ywi_measure(q, &set(foreset))?),
                    Aggregation::Ywis(q) => sugeno_unchecked(&f, &ywi_measure(q, &set(foreset))?),
                    Aggregation::Wowac(q) => {
                        choquet_unchecked(&f, &wowa_measure(q, &set(foreset))?)
                    }
                    Aggregation::Wowas(q) => sugeno_unchecked(&f, &wowa_measure(q, &set(foreset))?),
                };
                Ok(value.clamp(0.0, 1.0))
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(FuzzySet::from_unchecked(degrees))
    }

    pub fn upper(&self, r: &FuzzyRelation, a: &FuzzySet) -> Result<FuzzySet> {
        let n = self.validate(r, a)?;
        let measure = match &self.aggregation {
            Aggregation::Owa(w) => Some(owa_weights_to_measure(w)),
            Aggregation::Ywic(q)
            | Aggregation::Ywis(q)
            | Aggregation::Wowac(q)
            | Aggregation::Wowas(q) => Some(symmetric_measure(q, n)),
            _ => None,
        };
        let degrees = (0..n)
            .into_par_iter()
            .map(|y| {
                let g: Vec<f64> = (0..n)
                    .map(|x| self.tnorm.apply(r.get(x, y), a.get(x)))
                    .collect();
                let value = match &self.aggregation {
                    Aggregation::Classic => g.iter().copied().fold(0.0, f64::max),
                    Aggregation::Choquet(mu) => choquet_unchecked(&g, mu),
                    Aggregation::Sugeno(mu) => sugeno_unchecked(&g, mu),
                    Aggregation::Owa(_) | Aggregation::Ywic(_) | Aggregation::Wowac(_) => {
                        choquet_unchecked(&g, measure.as_ref().unwrap())
                    }
                    Aggregation::Ywis(_) | Aggregation::Wowas(_) => {
                        sugeno_unchecked(&g, measure.as_ref().unwrap())
                    }
                };
                value.clamp(0.0, 1.0)
            })
            .collect();
        Ok(FuzzySet::from_unchecked(degrees))
    }

    pub fn approximate(
        &self,
        r: &FuzzyRelation,
        a: &FuzzySet,
        with_upper: bool,
    ) -> Result<ApproximationResult> {
        Ok(ApproximationResult {
            lower: self.lower(r, a)?,
            upper: if with_upper {
                Some(self.upper(r, a)?)
            } else {
                None
            },
        })
    }
}

fn set(degrees: Vec<f64>) -> FuzzySet {
    FuzzySet::from_unchecked(degrees)
}

pub fn lower_approx(
    model: &ApproximationModel,
    r: &FuzzyRelation,
    a: &FuzzySet,
) -> Result<FuzzySet> {
    model.lower(r, a)
}

pub fn upper_approx(
    model: &ApproximationModel,
    r: &FuzzyRelation,
    a: &FuzzySet,
) -> Result<FuzzySet> {
    model.upper(r, a)
}

fn check_pair(r: &FuzzyRelation, a: &FuzzySet) -> Result<usize> {
    a.check_len(r.size())?;
    Ok(r.size())
}

/// `(apr_I A)(x) = min_y I(R(x, y), A(y))`.
pub fn lower_classic(r: &FuzzyRelation, a: &FuzzySet, i: &Implicator) -> Result<FuzzySet> {
    let n = check_pair(r, a)?;
    let degrees = (0..n)
        .map(|x| {
            r.row(x)
                .iter()
                .zip(a.degrees())
                .map(|(&rxy, &ay)| i.apply(rxy, ay))
                .fold(1.0, f64::min)
        })
        .collect();
    Ok(FuzzySet::from_unchecked(degrees))
}

/// `(apr^T A)(x) = max_y T(R(x, y), A(y))`.
pub fn upper_classic(r: &FuzzyRelation, a: &FuzzySet, t: &TNorm) -> Result<FuzzySet> {
    let n = check_pair(r, a)?;
    let degrees = (0..n)
        .map(|x| {
            r.row(x)
                .iter()
                .zip(a.degrees())
                .map(|(&rxy, &ay)| t.apply(rxy, ay))
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(FuzzySet::from_unchecked(degrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::build_relation;

    fn relation(attr: &[f64]) -> FuzzyRelation {
        build_relation(&attr.iter().map(|&v| vec![v]).collect::<Vec<_>>(), &[1.0]).unwrap()
    }

    fn assert_close(actual: &FuzzySet, expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.degrees().iter().zip(expected) {
            assert!(
                (a - e).abs() <= tol,
                "{:?} vs {expected:?}",
                actual.degrees()
            );
        }
    }

    fn luk(agg: Aggregation) -> ApproximationModel {
        ApproximationModel::new(agg, TNorm::Lukasiewicz).unwrap()
    }

    #[test]
    fn ywic_counterexample() {
        let r = relation(&[1.0, 0.5, 1.0, 0.0, 0.0]);
        let a = FuzzySet::crisp(5, &[0, 1, 2]).unwrap();
        let lower = luk(Aggregation::Ywic(Quantifier::Identity))
            .lower(&r, &a)
            .unwrap();
        assert_close(&lower, &[1.0, 0.75, 1.0, 0.2, 0.2], 1e-9);
        let again = lower_classic(&r, &lower, &Implicator::Lukasiewicz).unwrap();
        assert_close(&again, &[1.0, 0.7, 1.0, 0.2, 0.2], 1e-9);
    }

    #[test]
    fn ywis_counterexample() {
        let r = relation(&[0.0, 0.0, 0.2, 0.91, 1.0]);
        let a = FuzzySet::crisp(5, &[0, 1, 2]).unwrap();
        let lower = luk(Aggregation::Ywis(Quantifier::Identity))
            .lower(&r, &a)
            .unwrap();
        assert_close(&lower, &[0.91, 0.91, 0.71, 0.19747, 0.0948], 1e-4);
    }

    #[test]
    fn wowac_counterexample() {
        let r = relation(&[0.0, 0.5, 0.0]);
        let a = FuzzySet::crisp(3, &[1]).unwrap();
        let lower = luk(Aggregation::Wowac(Quantifier::Identity))
            .lower(&r, &a)
            .unwrap();
        assert_close(&lower, &[0.2, 0.75, 0.2], 1e-9);
        let again = lower_classic(&r, &lower, &Implicator::Lukasiewicz).unwrap();
        assert_close(&again, &[0.2, 0.7, 0.2], 1e-9);
    }

    #[test]
    fn wowas_counterexample() {
        let r = relation(&[0.8, 0.0, 0.0, 0.0, 1.0]);
        let a = FuzzySet::new(vec![1.0, 1.0, 0.5, 0.5, 0.0]).unwrap();
        let lower = luk(Aggregation::Wowas(Quantifier::Identity))
            .lower(&r, &a)
            .unwrap();
        assert_close(&lower, &[2.0 / 3.0, 0.5, 0.5, 0.5, 4.0 / 9.0], 1e-12);
    }

    #[test]
    fn classic_boundaries() {
        let r = relation(&[0.1, 0.4, 0.9, 0.3]);
        let full = FuzzySet::full(4);
        let empty = FuzzySet::empty(4);
        assert_eq!(
            lower_classic(&r, &full, &Implicator::Lukasiewicz).unwrap(),
            full
        );
        assert_eq!(
            upper_classic(&r, &empty, &TNorm::Lukasiewicz).unwrap(),
            empty
        );
        let a = FuzzySet::new(vec![0.3, 0.8, 0.1, 0.6]).unwrap();
        for t in [TNorm::Lukasiewicz, TNorm::Minimum, TNorm::Product] {
            assert_eq!(
                upper_classic(&FuzzyRelation::identity(4), &a, &t).unwrap(),
                a
            );
        }
    }

    #[test]
    fn upper_classic_matches_double_loop() {
        let r = relation(&[0.15, 0.6, 0.35, 0.9, 0.5]);
        let a = FuzzySet::new(vec![0.2, 0.9, 0.4, 0.0, 0.7]).unwrap();
        let t = TNorm::Product;
        let got = upper_classic(&r, &a, &t).unwrap();
        for x in 0..5 {
            let mut best = 0.0_f64;
            for y in 0..5 {
                best = best.max(r.get(x, y) * a.get(y));
            }
            assert_eq!(got.get(x), best);
        }
    }

    #[test]
    fn owa_max_upper_is_classic() {
        let r = relation(&[0.15, 0.6, 0.35, 0.9]);
        let a = FuzzySet::new(vec![0.2, 0.9, 0.4, 0.0]).unwrap();
        let w = WeightVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let upper = luk(Aggregation::Owa(w)).upper(&r, &a).unwrap();
        assert_eq!(upper, upper_classic(&r, &a, &TNorm::Lukasiewicz).unwrap());
    }

    #[test]
    fn ywic_upper_is_mean_under_identity() {
        let r = relation(&[1.0, 0.5, 1.0, 0.0, 0.0]);
        let a = FuzzySet::crisp(5, &[0, 1, 2]).unwrap();
        let upper = luk(Aggregation::Ywic(Quantifier::Identity))
            .upper(&r, &a)
            .unwrap();
        for y in 0..5 {
            let mean: f64 = (0..5)
                .map(|x| TNorm::Lukasiewicz.apply(r.get(x, y), a.get(x)))
                .sum::<f64>()
                / 5.0;
            assert!((upper.get(y) - mean).abs() < 1e-12);
        }
        let empty = luk(Aggregation::Ywic(Quantifier::Identity))
            .upper(&r, &FuzzySet::empty(5))
            .unwrap();
        assert_eq!(empty, FuzzySet::empty(5));
    }

    #[test]
    fn model_errors() {
        let r = relation(&[0.1, 0.2, 0.3]);
        let model = luk(Aggregation::Classic);
        assert!(matches!(
            model.lower(&r, &FuzzySet::full(2)),
            Err(Error::UniverseMismatch { .. })
        ));
        let not_reflexive = FuzzyRelation::new(2, vec![0.5, 0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            model.lower(&not_reflexive, &FuzzySet::full(2)),
            Err(Error::Model(_))
        ));
        let mu = crate::measures::symmetric_measure(&Quantifier::Identity, 4);
        assert!(luk(Aggregation::Choquet(mu))
            .lower(&r, &FuzzySet::full(3))
            .is_err());
    }

    #[test]
    fn granularity_flags() {
        assert!(luk(Aggregation::Classic).granularity_guaranteed());
        assert!(!luk(Aggregation::Ywic(Quantifier::Identity)).granularity_guaranteed());
        let mu = crate::measures::symmetric_measure(&Quantifier::Identity, 3);
        let min_choquet =
            ApproximationModel::new(Aggregation::Choquet(mu.clone()), TNorm::Minimum).unwrap();
        assert!(!min_choquet.granularity_guaranteed());
        let min_sugeno = ApproximationModel::new(Aggregation::Sugeno(mu), TNorm::Minimum).unwrap();
        assert!(min_sugeno.granularity_guaranteed());
    }

    #[test]
    fn kind_parsing() {
        for k in ModelKind::ALL {
            assert_eq!(k.as_str().parse::<ModelKind>().unwrap(), k);
        }
        assert!("vqrs".parse::<ModelKind>().is_err());
    }
}
