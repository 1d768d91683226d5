//! Fuzzy granules, granular decomposition and consistency checks.
//!
//! A granule `R_λ(x)` is the fuzzy set `y ↦ T(λ, R(y, x))`. By residuation
//! the largest `λ` for which `R_λ(x) ⊆ A` is `min_y I(R(y, x), A(y))`, so the
//! union of all granules contained in `A` is obtained exactly from one
//! granule per center, without sweeping over `λ`.

use serde::Serialize;

use crate::connectives::{Implicator, TNorm};
use crate::error::{check_unit, Error, Result};
use crate::sets::{FuzzyRelation, FuzzySet};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Granule {
    pub center: usize,
    pub level: f64,
    pub membership: FuzzySet,
}

fn check_index(r: &FuzzyRelation, x: usize) -> Result<()> {
    if x < r.size() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: x,
            len: r.size(),
        })
    }
}

/// `R_λ(x)(y) = T(λ, R(y, x))`.
pub fn granule(r: &FuzzyRelation, x: usize, level: f64, t: &TNorm) -> Result<Granule> {
    check_index(r, x)?;
    check_unit(level)?;
    let membership = (0..r.size()).map(|y| t.apply(level, r.get(y, x))).collect();
    Ok(Granule {
        center: x,
        level,
        membership: FuzzySet::from_unchecked(membership),
    })
}

/// Largest `λ` with `R_λ(x) ⊆ A`, i.e. `min_y I(R(y, x), A(y))` for a
/// residual implicator `I`.
pub fn max_granule_level(r: &FuzzyRelation, a: &FuzzySet, x: usize, i: &Implicator) -> Result<f64> {
    check_index(r, x)?;
    a.check_len(r.size())?;
    Ok(level_unchecked(r, a, x, i))
}

fn level_unchecked(r: &FuzzyRelation, a: &FuzzySet, x: usize, i: &Implicator) -> f64 {
    (0..r.size())
        .map(|y| i.apply(r.get(y, x), a.get(y)))
        .fold(1.0, f64::min)
}

/// The maximal granule at every center, skipping empty ones.
pub fn maximal_granules(
    r: &FuzzyRelation,
    a: &FuzzySet,
    t: &TNorm,
    i: &Implicator,
) -> Result<Vec<Granule>> {
    a.check_len(r.size())?;
    (0..r.size())
        .filter_map(|x| {
            let level = level_unchecked(r, a, x, i);
            (level > 0.0).then(|| granule(r, x, level, t))
        })
        .collect()
}

/// Union of all granules contained in `A`. Always a subset of `A`; equal to
/// `A` exactly when `A` is granularly representable.
pub fn granular_decomposition(
    r: &FuzzyRelation,
    a: &FuzzySet,
    t: &TNorm,
    i: &Implicator,
) -> Result<FuzzySet> {
    let n = r.size();
    a.check_len(n)?;
    let levels: Vec<f64> = (0..n).map(|x| level_unchecked(r, a, x, i)).collect();
    let degrees = (0..n)
        .map(|y| {
            levels
                .iter()
                .enumerate()
                .map(|(x, &l)| t.apply(l, r.get(y, x)))
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(FuzzySet::from_unchecked(degrees))
}

/// Consistency property: `T(R(x, y), A(y)) <= A(x) + tol` for all pairs.
pub fn is_granularly_representable(
    r: &FuzzyRelation,
    a: &FuzzySet,
    t: &TNorm,
    tol: f64,
) -> Result<bool> {
    let n = r.size();
    a.check_len(n)?;
    Ok((0..n).all(|y| consistent_unchecked(r, a, t, y, tol)))
}

/// Whether element `y` is consistent: `T(R(x, y), A(y)) <= A(x) + tol` for
/// every `x`.
pub fn is_consistent_element(
    r: &FuzzyRelation,
    a: &FuzzySet,
    t: &TNorm,
    y: usize,
    tol: f64,
) -> Result<bool> {
    check_index(r, y)?;
    a.check_len(r.size())?;
    Ok(consistent_unchecked(r, a, t, y, tol))
}

fn consistent_unchecked(r: &FuzzyRelation, a: &FuzzySet, t: &TNorm, y: usize, tol: f64) -> bool {
    let ay = a.get(y);
    (0..r.size()).all(|x| t.apply(r.get(x, y), ay) <= a.get(x) + tol)
}

/// Per-element gaps between a set and its implicator-based lower
/// approximation, with the aggregated inconsistency measures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    /// `A(y) - min_x I(R(x, y), A(x))`, unthresholded.
    pub per_element_gap: Vec<f64>,
    /// Elements whose gap exceeds the tolerance.
    pub inconsistent_elements: Vec<usize>,
    /// Sum of the gaps above tolerance, divided by `n`.
    pub error: f64,
    /// `|inconsistent_elements| / n`.
    pub percentage: f64,
    pub tolerance: f64,
}

impl ConsistencyReport {
    /// Sum of the gaps above tolerance, not normalised.
    pub fn total_gap(&self) -> f64 {
        self.inconsistent_elements
            .iter()
            .map(|&y| self.per_element_gap[y])
            .fold(0.0, |acc, g| acc + g)
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistent_elements.is_empty()
    }
}

/// Inconsistency of one concept: for reflexive `R` and residual `I`, the gap
/// at `y` is zero exactly when `y` is consistent.
pub fn consistency_report(
    r: &FuzzyRelation,
    a: &FuzzySet,
    i: &Implicator,
    tol: f64,
) -> Result<ConsistencyReport> {
    let n = r.size();
    a.check_len(n)?;
    let per_element_gap: Vec<f64> = (0..n)
        .map(|y| (a.get(y) - level_unchecked(r, a, y, i)).max(0.0))
        .collect();
    let inconsistent_elements: Vec<usize> = per_element_gap
        .iter()
        .enumerate()
        .filter(|(_, g)| **g > tol)
        .map(|(y, _)| y)
        .collect();
    let mut report = ConsistencyReport {
        per_element_gap,
        inconsistent_elements,
        error: 0.0,
        percentage: 0.0,
        tolerance: tol,
    };
    report.error = report.total_gap() / n as f64;
    report.percentage = report.inconsistent_elements.len() as f64 / n as f64;
    Ok(report)
}

/// Error and percentage aggregated over the decision classes of a dataset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct InconsistencyMetrics {
    pub error: f64,
    pub percentage: f64,
}

/// `Σ_C Σ_x gap_C(x) / (#classes · #instances)` and the same ratio for the
/// number of inconsistent elements. Reports must share one universe size.
pub fn aggregate_metrics(reports: &[ConsistencyReport]) -> InconsistencyMetrics {
    let Some(first) = reports.first() else {
        return InconsistencyMetrics::default();
    };
    let n = first.per_element_gap.len();
    let denom = (reports.len() * n) as f64;
    let gap = reports
        .iter()
        .map(ConsistencyReport::total_gap)
        .fold(0.0, |acc, g| acc + g);
    let count: usize = reports.iter().map(|r| r.inconsistent_elements.len()).sum();
    InconsistencyMetrics {
        error: gap / denom,
        percentage: count as f64 / denom,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximations::lower_classic;
    use crate::sets::build_relation;

    fn example_one() -> FuzzyRelation {
        let a = [1.0, 0.5, 1.0, 0.0, 0.0];
        build_relation(&a.iter().map(|&v| vec![v]).collect::<Vec<_>>(), &[1.0]).unwrap()
    }

    fn ywic_output() -> FuzzySet {
        FuzzySet::new(vec![1.0, 0.75, 1.0, 0.2, 0.2]).unwrap()
    }

    #[test]
    fn granule_levels() {
        let r = example_one();
        let t = TNorm::Lukasiewicz;
        assert_eq!(
            granule(&r, 2, 1.0, &t).unwrap().membership,
            r.foreset(2).unwrap()
        );
        assert_eq!(
            granule(&r, 2, 0.0, &t).unwrap().membership,
            FuzzySet::empty(5)
        );
        assert_eq!(
            granule(&r, 0, 0.5, &t).unwrap().membership.degrees(),
            &[0.5, 0.0, 0.5, 0.0, 0.0]
        );
        assert!(granule(&r, 9, 0.5, &t).is_err());
        assert!(granule(&r, 0, 1.5, &t).is_err());
    }

    #[test]
    fn granule_levels_by_residuation() {
        let r = example_one();
        let i = Implicator::Lukasiewicz;
        for x in 0..5 {
            assert_eq!(
                max_granule_level(&r, &r.foreset(x).unwrap(), x, &i).unwrap(),
                1.0
            );
            assert_eq!(
                max_granule_level(&r, &FuzzySet::empty(5), x, &i).unwrap(),
                0.0
            );
        }
        let level = max_granule_level(&r, &ywic_output(), 1, &i).unwrap();
        assert!((level - 0.7).abs() < 1e-12);
    }

    #[test]
    fn decomposition_of_counterexample() {
        let r = example_one();
        let (t, i) = (TNorm::Lukasiewicz, Implicator::Lukasiewicz);
        let a = ywic_output();
        let d = granular_decomposition(&r, &a, &t, &i).unwrap();
        for (got, want) in d.degrees().iter().zip([1.0, 0.7, 1.0, 0.2, 0.2]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(d.is_subset_of(&a, 0.0));
        assert!(!is_granularly_representable(&r, &a, &t, DEFAULT_TOLERANCE).unwrap());
        assert_eq!(
            granular_decomposition(&r, &FuzzySet::empty(5), &t, &i).unwrap(),
            FuzzySet::empty(5)
        );
    }

    #[test]
    fn lower_approximations_are_representable() {
        let r = example_one();
        let (t, i) = (TNorm::Lukasiewicz, Implicator::Lukasiewicz);
        let a = FuzzySet::new(vec![0.3, 0.9, 0.1, 0.6, 0.4]).unwrap();
        let lower = lower_classic(&r, &a, &i).unwrap();
        assert!(is_granularly_representable(&r, &lower, &t, DEFAULT_TOLERANCE).unwrap());
        let d = granular_decomposition(&r, &lower, &t, &i).unwrap();
        assert!(d.max_abs_diff(&lower) < 1e-12);
    }

    #[test]
    fn crisp_union_of_classes() {
        // crisp equivalence with classes {0,1}, {2}, {3,4}
        let class = [0, 0, 1, 2, 2];
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|x| {
                (0..5)
                    .map(|y| f64::from(u8::from(class[x] == class[y])))
                    .collect()
            })
            .collect();
        let r = FuzzyRelation::from_rows(&rows).unwrap();
        let a = FuzzySet::crisp(5, &[0, 1, 3, 4]).unwrap();
        for t in [TNorm::Lukasiewicz, TNorm::Minimum, TNorm::Product] {
            assert!(is_granularly_representable(&r, &a, &t, 0.0).unwrap());
        }
        let b = FuzzySet::crisp(5, &[0, 3, 4]).unwrap();
        assert!(!is_granularly_representable(&r, &b, &TNorm::Minimum, 0.0).unwrap());
    }

    #[test]
    fn counterexample_report() {
        let r = example_one();
        let report = consistency_report(
            &r,
            &ywic_output(),
            &Implicator::Lukasiewicz,
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        assert_eq!(report.inconsistent_elements, vec![1]);
        assert!((report.per_element_gap[1] - 0.05).abs() < 1e-12);
        assert!((report.error - 0.01).abs() < 1e-12);
        assert_eq!(report.percentage, 0.2);
        assert!(!is_consistent_element(&r, &ywic_output(), &TNorm::Lukasiewicz, 1, 1e-9).unwrap());
        assert!(is_consistent_element(&r, &ywic_output(), &TNorm::Lukasiewicz, 0, 1e-9).unwrap());
    }

    #[test]
    fn wowas_counterexample_report() {
        let attr = [0.8, 0.0, 0.0, 0.0, 1.0];
        let r = build_relation(&attr.iter().map(|&v| vec![v]).collect::<Vec<_>>(), &[1.0]).unwrap();
        let a = FuzzySet::new(vec![2.0 / 3.0, 0.5, 0.5, 0.5, 4.0 / 9.0]).unwrap();
        let report =
            consistency_report(&r, &a, &Implicator::Lukasiewicz, DEFAULT_TOLERANCE).unwrap();
        assert!((report.per_element_gap[0] - 1.0 / 45.0).abs() < 1e-12);
        assert_eq!(report.inconsistent_elements, vec![0]);
    }

    #[test]
    fn representable_set_has_zero_gaps() {
        let r = example_one();
        let i = Implicator::Lukasiewicz;
        let lower = lower_classic(&r, &ywic_output(), &i).unwrap();
        let report = consistency_report(&r, &lower, &i, 0.0).unwrap();
        assert!(report.per_element_gap.iter().all(|g| *g == 0.0));
        assert!(report.is_consistent());
        assert_eq!(report.error, 0.0);
    }

    #[test]
    fn aggregation_over_classes() {
        let r = example_one();
        let i = Implicator::Lukasiewicz;
        let bad = consistency_report(&r, &ywic_output(), &i, DEFAULT_TOLERANCE).unwrap();
        let good = consistency_report(&r, &FuzzySet::full(5), &i, DEFAULT_TOLERANCE).unwrap();
        let m = aggregate_metrics(&[bad, good]);
        assert!((m.error - 0.05 / 10.0).abs() < 1e-12);
        assert_eq!(m.percentage, 0.1);
        assert_eq!(aggregate_metrics(&[]), InconsistencyMetrics::default());
    }
}
