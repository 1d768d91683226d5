//! Fuzzy sets and fuzzy relations over a finite, index-based universe.

use std::collections::HashSet;

use serde::Serialize;

use crate::connectives::TNorm;
use crate::error::{Error, Result};

/// Default tolerance for relation property checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn check_degree(value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain { value })
    }
}

/// A finite universe `{0, .., n-1}` with optional element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Universe {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("universe must be non-empty".into()));
        }
        Ok(Self { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter("universe must be non-empty".into()));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate label '{l}'")));
            }
        }
        Ok(Self {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|l| l.get(index))
            .map(String::as_str)
    }
}

/// Membership degrees in `[0, 1]`, one per universe element.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FuzzySet {
    degrees: Vec<f64>,
}

impl FuzzySet {
    pub fn new(degrees: Vec<f64>) -> Result<Self> {
        for &d in &degrees {
            check_degree(d)?;
        }
        Ok(Self { degrees })
    }

    /// Builds a set from values already known to be in range.
    pub(crate) fn from_unchecked(degrees: Vec<f64>) -> Self {
        debug_assert!(degrees.iter().all(|d| (0.0..=1.0).contains(d)));
        Self { degrees }
    }

    pub fn empty(n: usize) -> Self {
        Self {
            degrees: vec![0.0; n],
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            degrees: vec![1.0; n],
        }
    }

    /// Crisp set with the given members.
    pub fn crisp(n: usize, members: &[usize]) -> Result<Self> {
        let mut degrees = vec![0.0; n];
        for &m in members {
            *degrees
                .get_mut(m)
                .ok_or(Error::IndexOutOfRange { index: m, len: n })? = 1.0;
        }
        Ok(Self { degrees })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn into_degrees(self) -> Vec<f64> {
        self.degrees
    }

    pub fn get(&self, index: usize) -> f64 {
        self.degrees[index]
    }

    /// Sigma-count `|A|`.
    pub fn cardinality(&self) -> f64 {
        self.degrees.iter().sum()
    }

    pub fn is_subset_of(&self, other: &FuzzySet, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .degrees
                .iter()
                .zip(&other.degrees)
                .all(|(a, b)| *a <= *b + tol)
    }

    /// Largest pointwise absolute difference.
    pub fn max_abs_diff(&self, other: &FuzzySet) -> f64 {
        self.degrees
            .iter()
            .zip(&other.degrees)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: n,
                found: self.len(),
            })
        }
    }
}

/// Sum of membership degrees.
pub fn fuzzy_cardinality(a: &FuzzySet) -> f64 {
    a.cardinality()
}

/// A dense `n x n` fuzzy relation, stored row-major: `get(x, y) = R(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyRelation {
    n: usize,
    degrees: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub reflexive: bool,
    pub symmetric: bool,
    pub t_transitive: bool,
}

impl EquivalenceReport {
    pub fn is_equivalence(&self) -> bool {
        self.reflexive && self.symmetric && self.t_transitive
    }
}

impl FuzzyRelation {
    pub fn new(n: usize, degrees: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("universe must be non-empty".into()));
        }
        if degrees.len() != n * n {
            return Err(Error::UniverseMismatch {
                expected: n * n,
                found: degrees.len(),
            });
        }
        for &d in &degrees {
            check_degree(d)?;
        }
        Ok(Self { n, degrees })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut degrees = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::UniverseMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            degrees.extend_from_slice(row);
        }
        Self::new(n, degrees)
    }

    pub fn identity(n: usize) -> Self {
        let mut degrees = vec![0.0; n * n];
        for i in 0..n {
            degrees[i * n + i] = 1.0;
        }
        Self { n, degrees }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            degrees: vec![1.0; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.degrees[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.degrees[x * self.n..(x + 1) * self.n]
    }

    /// `Ry(x) = R(x, y)`.
    pub fn foreset(&self, y: usize) -> Result<FuzzySet> {
        if y >= self.n {
            return Err(Error::IndexOutOfRange {
                index: y,
                len: self.n,
            });
        }
        Ok(FuzzySet::from_unchecked(self.column(y)))
    }

    pub(crate) fn column(&self, y: usize) -> Vec<f64> {
        (0..self.n).map(|x| self.get(x, y)).collect()
    }

    pub fn is_reflexive(&self, tol: f64) -> bool {
        (0..self.n).all(|x| (self.get(x, x) - 1.0).abs() <= tol)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| (self.get(x, y) - self.get(y, x)).abs() <= tol))
    }

    pub fn is_t_transitive(&self, t: &TNorm, tol: f64) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let rxy = self.get(x, y);
                (0..n).all(|z| t.apply(rxy, self.get(y, z)) <= self.get(x, z) + tol)
            })
        })
    }

    /// Smallest `T`-transitive relation containing `self`, by the
    /// Floyd-Warshall scheme with `max` and `T`. Reflexivity and symmetry
    /// are preserved.
    pub fn transitive_closure(&self, t: &TNorm) -> FuzzyRelation {
        let n = self.n;
        let mut d = self.degrees.clone();
        for k in 0..n {
            for i in 0..n {
                let rik = d[i * n + k];
                if rik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let via = t.apply(rik, d[k * n + j]);
                    if via > d[i * n + j] {
                        d[i * n + j] = via;
                    }
                }
            }
        }
        FuzzyRelation { n, degrees: d }
    }

    pub fn validate_t_equivalence(&self, t: &TNorm, tol: f64) -> EquivalenceReport {
        EquivalenceReport {
            reflexive: self.is_reflexive(tol),
            symmetric: self.is_symmetric(tol),
            t_transitive: self.is_t_transitive(t, tol),
        }
    }
}

/// Free-function form of [`FuzzyRelation::validate_t_equivalence`].
pub fn validate_t_equivalence(r: &FuzzyRelation, t: &TNorm, tol: f64) -> EquivalenceReport {
    r.validate_t_equivalence(t, tol)
}

/// Population standard deviation of every column of a row-major matrix.
pub fn column_std_devs(rows: &[Vec<f64>]) -> Vec<f64> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let n = rows.len() as f64;
    (0..first.len())
        .map(|a| {
            let mean = rows.iter().map(|r| r[a]).sum::<f64>() / n;
            let var = rows.iter().map(|r| (r[a] - mean).powi(2)).sum::<f64>() / n;
            var.sqrt()
        })
        .collect()
}

/// Similarity relation from numeric attributes:
/// `R(x, y) = (1/m) Σ_a max(0, 1 - |a(y) - a(x)| / σ_a)`.
///
/// An attribute with `σ_a = 0` contributes similarity 1 to every pair. The
/// result is reflexive, symmetric and Łukasiewicz-transitive.
pub fn build_relation(rows: &[Vec<f64>], sigmas: &[f64]) -> Result<FuzzyRelation> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidParameter("no instances".into()));
    }
    let m = sigmas.len();
    if m == 0 {
        return Err(Error::InvalidParameter("no attributes".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(Error::UniverseMismatch {
                expected: m,
                found: row.len(),
            });
        }
        if let Some(a) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite attribute value at instance {i}, attribute {a}"
            )));
        }
    }
    for &s in sigmas {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidParameter(format!("invalid scale {s}")));
        }
    }

    let mut degrees = vec![0.0; n * n];
    for x in 0..n {
        degrees[x * n + x] = 1.0;
        for y in 0..x {
            let mut sum = 0.0;
            for a in 0..m {
                sum += if sigmas[a] == 0.0 {
                    1.0
                } else {
                    (1.0 - (rows[y][a] - rows[x][a]).abs() / sigmas[a]).max(0.0)
                };
            }
            let v = (sum / m as f64).clamp(0.0, 1.0);
            degrees[x * n + y] = v;
            degrees[y * n + x] = v;
        }
    }
    Ok(FuzzyRelation { n, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_one() -> FuzzyRelation {
        let a = [1.0, 0.5, 1.0, 0.0, 0.0];
        build_relation(&a.iter().map(|&v| vec![v]).collect::<Vec<_>>(), &[1.0]).unwrap()
    }

    #[test]
    fn relation_from_single_attribute() {
        let expected = FuzzyRelation::from_rows(&[
            vec![1.0, 0.5, 1.0, 0.0, 0.0],
            vec![0.5, 1.0, 0.5, 0.5, 0.5],
            vec![1.0, 0.5, 1.0, 0.0, 0.0],
            vec![0.0, 0.5, 0.0, 1.0, 1.0],
            vec![0.0, 0.5, 0.0, 1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(example_one(), expected);
    }

    #[test]
    fn foreset_of_second_element() {
        let r = example_one();
        assert_eq!(r.foreset(1).unwrap().degrees(), &[0.5, 1.0, 0.5, 0.5, 0.5]);
        assert!(matches!(r.foreset(5), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(
            FuzzyRelation::identity(4).foreset(2).unwrap(),
            FuzzySet::crisp(4, &[2]).unwrap()
        );
        assert_eq!(
            FuzzyRelation::full(3).foreset(0).unwrap(),
            FuzzySet::full(3)
        );
    }

    #[test]
    fn example_relation_is_lukasiewicz_equivalence() {
        let report = example_one().validate_t_equivalence(&TNorm::Lukasiewicz, DEFAULT_TOLERANCE);
        assert!(report.is_equivalence());
        for t in [TNorm::Lukasiewicz, TNorm::Minimum, TNorm::Product] {
            assert!(FuzzyRelation::identity(4)
                .validate_t_equivalence(&t, 0.0)
                .is_equivalence());
        }
    }

    #[test]
    fn broken_transitivity_is_detected() {
        let r = FuzzyRelation::from_rows(&[
            vec![1.0, 1.0, 0.0],
            vec![1.0, 1.0, 1.0],
            vec![0.0, 1.0, 1.0],
        ])
        .unwrap();
        let report = r.validate_t_equivalence(&TNorm::Lukasiewicz, DEFAULT_TOLERANCE);
        assert!(report.reflexive && report.symmetric);
        assert!(!report.t_transitive);
    }

    #[test]
    fn closure_is_transitive_for_each_tnorm() {
        let rows = vec![
            vec![0.0, 0.3],
            vec![0.4, 0.1],
            vec![0.9, 0.8],
            vec![0.5, 0.5],
        ];
        let r = build_relation(&rows, &[0.7, 0.6]).unwrap();
        for t in [TNorm::Lukasiewicz, TNorm::Minimum, TNorm::Product] {
            let c = r.transitive_closure(&t);
            assert!(c.validate_t_equivalence(&t, 1e-12).is_equivalence());
            for x in 0..4 {
                for y in 0..4 {
                    assert!(c.get(x, y) >= r.get(x, y));
                }
            }
        }
        assert_eq!(r.transitive_closure(&TNorm::Lukasiewicz), r);
    }

    #[test]
    fn constant_attribute_gives_full_relation() {
        let rows = vec![vec![2.0], vec![2.0], vec![2.0]];
        let sigmas = column_std_devs(&rows);
        assert_eq!(sigmas, vec![0.0]);
        assert_eq!(
            build_relation(&rows, &sigmas).unwrap(),
            FuzzyRelation::full(3)
        );
    }

    #[test]
    fn two_attributes_are_averaged() {
        let rows = vec![vec![0.0, 0.0], vec![1.0, 0.5]];
        let r = build_relation(&rows, &[1.0, 1.0]).unwrap();
        assert_eq!(r.get(0, 1), 0.25);
    }

    #[test]
    fn non_finite_attribute_is_rejected() {
        let rows = vec![vec![0.0], vec![f64::NAN]];
        assert!(build_relation(&rows, &[1.0]).is_err());
    }

    #[test]
    fn cardinalities() {
        let r = example_one();
        assert_eq!(r.foreset(0).unwrap().cardinality(), 2.5);
        assert_eq!(fuzzy_cardinality(&FuzzySet::empty(4)), 0.0);
        assert_eq!(FuzzySet::crisp(6, &[0, 2, 5]).unwrap().cardinality(), 3.0);
    }

    #[test]
    fn degrees_are_validated() {
        assert!(FuzzySet::new(vec![0.2, 1.1]).is_err());
        assert!(FuzzySet::new(vec![f64::NAN]).is_err());
        assert!(FuzzyRelation::new(2, vec![1.0, 0.5, 0.5]).is_err());
        assert!(Universe::with_labels(vec!["a".into(), "a".into()]).is_err());
        assert!(Universe::new(0).is_err());
    }

    #[test]
    fn population_std() {
        let rows = vec![vec![1.0], vec![3.0]];
        assert_eq!(column_std_devs(&rows), vec![1.0]);
    }
}
